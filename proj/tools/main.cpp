// Command-line front end: solve constant-coefficient local fractional
// Riccati problems, sample solution curves as CSV, and emit the
// verification report as JSON.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lfr/report.hpp"

namespace {

// Overrides spec fields from a JSON job file; returns an error message on
// malformed input or unknown keys.
std::optional<std::string> apply_job_file(lfr::JobSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        return "cannot open job file: " + path;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        return std::string("malformed job file: ") + e.what();
    }
    if (!j.is_object())
        return "job file must contain a JSON object";
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "zeta") spec.zeta = value.get<double>();
            else if (key == "w0") spec.w0 = value.get<double>();
            else if (key == "w1") spec.w1 = value.get<double>();
            else if (key == "w2") spec.w2 = value.get<double>();
            else if (key == "phi0") spec.phi0 = value.get<double>();
            else if (key == "mu_max") spec.mu_max = value.get<double>();
            else if (key == "grid_points") spec.grid_points = value.get<int>();
            else if (key == "terms") spec.terms = value.get<int>();
            else if (key == "mode") {
                const auto mode = lfr::parse_mode(value.get<std::string>());
                if (!mode)
                    return "job file: unknown mode \"" + value.get<std::string>() + "\"";
                spec.mode = *mode;
            } else {
                return "job file: unknown key \"" + key + "\"";
            }
        }
    } catch (const nlohmann::json::exception& e) {
        return std::string("job file: ") + e.what();
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local fractional Riccati solver (constant coefficients)"};

    lfr::JobSpec flags;
    std::string mode_name = "solve";
    std::string preset, job_path, out_path;
    app.add_option("--zeta", flags.zeta, "fractal order in (0, 1]");
    app.add_option("--w0", flags.w0, "constant coefficient w0 (nonzero)");
    app.add_option("--w1", flags.w1, "constant coefficient w1");
    app.add_option("--w2", flags.w2, "constant coefficient w2 (nonzero)");
    app.add_option("--phi0", flags.phi0, "initial value Phi(0)");
    app.add_option("--mu-max", flags.mu_max, "right end of the sample interval");
    app.add_option("--grid", flags.grid_points, "number of grid points (>= 2)");
    app.add_option("--terms", flags.terms, "series truncation order (>= 8)");
    app.add_option("--mode", mode_name, "solve | sample | verify | reduce");
    app.add_option("--preset", preset, "named problem preset (fig1)");
    app.add_option("--job", job_path, "JSON job file overriding the flags");
    app.add_option("--out", out_path, "write the primary output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    lfr::JobSpec spec;
    if (!preset.empty()) {
        if (preset != "fig1") {
            std::cerr << "error: unknown preset \"" << preset << "\"\n";
            return 2;
        }
        spec = lfr::fig1_preset();
    }

    // Explicitly given flags win over the preset.
    if (app.count("--zeta")) spec.zeta = flags.zeta;
    if (app.count("--w0")) spec.w0 = flags.w0;
    if (app.count("--w1")) spec.w1 = flags.w1;
    if (app.count("--w2")) spec.w2 = flags.w2;
    if (app.count("--phi0")) spec.phi0 = flags.phi0;
    if (app.count("--mu-max")) spec.mu_max = flags.mu_max;
    if (app.count("--grid")) spec.grid_points = flags.grid_points;
    if (app.count("--terms")) spec.terms = flags.terms;
    if (app.count("--mode")) {
        const auto mode = lfr::parse_mode(mode_name);
        if (!mode) {
            std::cerr << "error: unknown mode \"" << mode_name << "\"\n";
            return 2;
        }
        spec.mode = *mode;
    }

    if (!job_path.empty()) {
        if (const auto err = apply_job_file(spec, job_path)) {
            std::cerr << "error: " << *err << "\n";
            return 2;
        }
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file: " << out_path << "\n";
            return 2;
        }
        return lfr::run_job(spec, out, std::cerr);
    }
    return lfr::run_job(spec, std::cout, std::cerr);
}
