#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lfr/riccati.hpp"

namespace lfr {

enum class JobMode { Solve, Sample, Verify, Reduce };

std::optional<JobMode> parse_mode(const std::string& name);

// Constant-coefficient job as accepted at the command line.
struct JobSpec {
    double zeta = 1.0;
    double w0 = 1.0;
    double w1 = 3.0;
    double w2 = 1.0;
    double phi0 = 1.0;
    double mu_max = 0.5;
    int grid_points = 256;
    int terms = 64;
    JobMode mode = JobMode::Solve;
};

// The worked Cantor-order example: zeta = ln2/ln3, w = (1, 3, 1),
// phi0 = 1, sampled on [0, 0.5].
JobSpec fig1_preset();

// Error message when the spec violates its invariants, otherwise empty.
std::optional<std::string> validate(const JobSpec& spec);

struct SampleRow {
    double mu;
    double phi;
    double psi;
    double dpsi_zeta;
    bool after_pole;
};

std::vector<SampleRow> sample_solution(const ClosedFormSolution& sol, double mu_max,
                                       int grid_points, std::optional<double> pole);

// Header "mu,phi,psi,dpsi_zeta,flag"; numbers at round-trip precision
// (17 significant digits); LF line endings.
std::string emit_csv(const std::vector<SampleRow>& rows);

// Machine-readable verification report, stable key order.
std::string emit_report(const DiscrepancyReport& rep);

// Runs a validated job, writing the primary output to `out` and warnings
// to `diag`. Exit status: 0 success, 2 invalid input, 3 numerical guard.
int run_job(const JobSpec& spec, std::ostream& out, std::ostream& diag);

}  // namespace lfr
