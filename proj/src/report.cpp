#include "lfr/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(const Complex& v) {
    return fmt(v.real()) + (v.imag() < 0.0 ? "-" : "+") + fmt(std::abs(v.imag())) + "i";
}

nlohmann::ordered_json complex_json(const Complex& v) {
    return {{"re", v.real()}, {"im", v.imag()}};
}

}  // namespace

std::optional<JobMode> parse_mode(const std::string& name) {
    if (name == "solve") return JobMode::Solve;
    if (name == "sample") return JobMode::Sample;
    if (name == "verify") return JobMode::Verify;
    if (name == "reduce") return JobMode::Reduce;
    return std::nullopt;
}

JobSpec fig1_preset() {
    JobSpec spec;
    spec.zeta = std::log(2.0) / std::log(3.0);
    spec.w0 = 1.0;
    spec.w1 = 3.0;
    spec.w2 = 1.0;
    spec.phi0 = 1.0;
    spec.mu_max = 0.5;
    spec.grid_points = 256;
    spec.terms = 64;
    spec.mode = JobMode::Sample;
    return spec;
}

std::optional<std::string> validate(const JobSpec& spec) {
    if (!(spec.zeta > 0.0) || !(spec.zeta <= 1.0))
        return "zeta must lie in (0, 1]";
    if (!std::isfinite(spec.w0) || spec.w0 == 0.0)
        return "w0 must be finite and nonzero";
    if (!std::isfinite(spec.w1))
        return "w1 must be finite";
    if (!std::isfinite(spec.w2) || spec.w2 == 0.0)
        return "w2 must be finite and nonzero";
    if (!std::isfinite(spec.phi0))
        return "phi0 must be finite";
    if (!(spec.mu_max > 0.0) || !std::isfinite(spec.mu_max))
        return "mu_max must be positive";
    if (spec.grid_points < 2)
        return "grid must have at least 2 points";
    if (spec.terms < 8)
        return "terms must be at least 8";
    return std::nullopt;
}

std::vector<SampleRow> sample_solution(const ClosedFormSolution& sol, double mu_max,
                                       int grid_points, std::optional<double> pole) {
    std::vector<SampleRow> rows;
    rows.reserve(static_cast<std::size_t>(grid_points));
    for (int k = 0; k < grid_points; ++k) {
        const double mu = mu_max * k / (grid_points - 1);
        const double psi = sol.eval_psi(mu);
        const double dpsi = sol.eval_dpsi(mu);
        const double phi = -dpsi / (sol.w2 * psi);
        rows.push_back(SampleRow{mu, phi, psi, dpsi, pole.has_value() && mu > *pole});
    }
    return rows;
}

std::string emit_csv(const std::vector<SampleRow>& rows) {
    std::string text = "mu,phi,psi,dpsi_zeta,flag\n";
    for (const auto& r : rows) {
        text += fmt(r.mu);
        text += ',';
        text += fmt(r.phi);
        text += ',';
        text += fmt(r.psi);
        text += ',';
        text += fmt(r.dpsi_zeta);
        text += ',';
        text += r.after_pole ? "after_pole" : "ok";
        text += '\n';
    }
    return text;
}

std::string emit_report(const DiscrepancyReport& rep) {
    nlohmann::ordered_json j;
    j["zeta"] = rep.zeta;
    j["sigma"] = rep.sigma;
    j["branch"] = std::string(branch_name(rep.branch));
    j["poles"] = nlohmann::ordered_json::array();
    for (const auto& p : rep.poles)
        j["poles"].push_back(complex_json(p));
    j["residues"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.residues)
        j["residues"].push_back(complex_json(r));
    j["sup_difference"] = rep.sup_difference;
    j["residual_norm_closed_form"] = rep.residual_norm_closed_form;
    j["residual_norm_oracle"] = rep.residual_norm_oracle;

    nlohmann::ordered_json pc;
    auto printed_cmp = [](const PrintedComparison& c) {
        return nlohmann::ordered_json{
            {"printed", c.printed}, {"computed", c.computed}, {"match", c.match}};
    };
    pc["sigma"] = printed_cmp(rep.reference.sigma);
    pc["C0"] = printed_cmp(rep.reference.c0);
    pc["D0"] = printed_cmp(rep.reference.d0);
    auto residue_cmp = [](const ResidueComparison& c) {
        return nlohmann::ordered_json{
            {"printed", c.printed},
            {"formula_value", c.formula_value},
            {"pipeline_residue", complex_json(c.pipeline_residue)},
            {"printed_matches_formula", c.printed_matches_formula},
            {"printed_matches_pipeline", c.printed_matches_pipeline}};
    };
    pc["A0"] = residue_cmp(rep.reference.a0);
    pc["B0"] = residue_cmp(rep.reference.b0);
    pc["psi_numerator"] = nlohmann::ordered_json{
        {"printed_z_coeff", rep.reference.numerator.printed_z_coeff},
        {"printed_const_coeff", rep.reference.numerator.printed_const_coeff},
        {"derived_z_coeff", rep.reference.numerator.derived_z_coeff},
        {"derived_const_coeff", rep.reference.numerator.derived_const_coeff},
        {"printed_initial_value", rep.reference.numerator.printed_initial_value},
        {"required_initial_value", rep.reference.numerator.required_initial_value},
        {"match", rep.reference.numerator.match}};
    j["paper_constants"] = pc;

    j["boundary_value_printed_formula"] = nlohmann::ordered_json{
        {"value", rep.boundary_value_printed},
        {"required", rep.boundary_value_required},
        {"match", rep.boundary_match}};

    j["grid"] = nlohmann::ordered_json{{"mu_min", rep.grid.front()},
                                       {"mu_max", rep.grid.back()},
                                       {"points", rep.grid.size()},
                                       {"points_compared", rep.points_compared}};
    if (rep.pole)
        j["pole"] = *rep.pole;
    else
        j["pole"] = nullptr;
    j["terms"] = rep.terms;
    j["fractal_imaginary"] = nlohmann::ordered_json{
        {"mu", rep.imaginary_note.mu},
        {"plain_i", complex_json(rep.imaginary_note.plain_i)},
        {"exp_i_pi_zeta_half", complex_json(rep.imaginary_note.rotated)}};
    return j.dump(2);
}

namespace {

int run_validated(const JobSpec& spec, std::ostream& out, std::ostream& diag) {
    const FractalOrder zeta(spec.zeta);
    const RiccatiProblem problem(zeta, spec.w0, spec.w1, spec.w2, spec.phi0);

    switch (spec.mode) {
    case JobMode::Reduce: {
        const LinearOde ode = reduce_to_linear(problem);
        const InitialData ic = ic_map(problem);
        out << "Omega1=" << fmt(constant_value(ode.omega1)) << "\n"
            << "Omega2=" << fmt(constant_value(ode.omega2)) << "\n"
            << "alpha=" << fmt(ic.alpha) << "\n"
            << "beta=" << fmt(ic.beta) << "\n";
        return 0;
    }
    case JobMode::Solve: {
        const ClosedFormSolution sol = solve_constant(problem);
        out << "zeta=" << fmt(spec.zeta) << "\n"
            << "sigma=" << fmt(sol.sigma) << "\n"
            << "branch=" << branch_name(sol.branch) << "\n"
            << "alpha=" << fmt(sol.ic.alpha) << "\n"
            << "beta=" << fmt(sol.ic.beta) << "\n";
        for (std::size_t i = 0; i < sol.fractions.terms.size(); ++i) {
            const auto& t = sol.fractions.terms[i];
            out << "pole" << i << "=" << fmt(t.pole)
                << " residue" << i << "=" << fmt(t.residue)
                << " multiplicity" << i << "=" << t.multiplicity << "\n";
        }
        const auto pole = find_pole(sol, spec.mu_max);
        if (pole)
            out << "psi_zero=" << fmt(*pole) << "\n";
        else
            out << "psi_zero=none\n";
        return 0;
    }
    case JobMode::Sample: {
        const ClosedFormSolution sol = solve_constant(problem);
        const auto pole = find_pole(sol, spec.mu_max);
        if (pole)
            diag << "warning: psi vanishes at mu ~= " << fmt(*pole)
                 << "; rows beyond it are flagged after_pole\n";
        out << emit_csv(sample_solution(sol, spec.mu_max, spec.grid_points, pole));
        return 0;
    }
    case JobMode::Verify: {
        std::vector<double> grid(static_cast<std::size_t>(spec.grid_points));
        for (int k = 0; k < spec.grid_points; ++k)
            grid[static_cast<std::size_t>(k)] = spec.mu_max * k / (spec.grid_points - 1);
        const DiscrepancyReport rep = compare_semantics(problem, spec.terms, grid);
        out << emit_report(rep) << "\n";
        return 0;
    }
    }
    return 2;
}

}  // namespace

int run_job(const JobSpec& spec, std::ostream& out, std::ostream& diag) {
    if (const auto err = validate(spec)) {
        diag << "error: " << *err << "\n";
        return 2;
    }
    try {
        return run_validated(spec, out, diag);
    } catch (const PrecisionLossError& e) {
        diag << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const TruncationError& e) {
        diag << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const PoleError& e) {
        diag << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace lfr
