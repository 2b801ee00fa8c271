#pragma once

#include "kqent/entanglement.hpp"
#include "kqent/states.hpp"
#include "kqent/submanifold.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kqent {

/// Quadrature node-count defaults, overridable per spec file and per
/// CLI invocation.
struct QuadratureOptions {
    int nodes_periodic = 256;
    int nodes_aperiodic = 128;
    std::optional<int> override_all; // from the spec's "nodes" or --nodes
};

/// A parsed experiment: factor dimensions, bundle power, submanifold and
/// quadrature configuration. Matches the versioned JSON schema
/// ("schema": 1) documented in the README.
struct ExperimentSpec {
    int schema = 1;
    int n1 = 1;
    int n2 = 1;
    int power = 1; // N
    SubmanifoldSpec submanifold;
    QuadratureOptions quadrature;
    bool emit_matrix = false;
};

ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec load_experiment_spec(const std::string& path);

struct RunOptions {
    bool deterministic = false; // serial reduction + no wall-time field
    std::optional<int> nodes_override;
    std::optional<double> tol_override; // verdict tolerance
    bool emit_matrix = false;
};

struct ConvergenceInfo {
    int nodes = 0;           // per-axis node count used
    double residual = 0.0;   // Frobenius change against the coarser rule
    bool converged = true;   // residual <= 1e-6
};

struct ExperimentResult {
    int d1 = 0;
    int d2 = 0;
    long long d_total = 0; // = d1 * d2
    std::string kind;
    int power = 1;
    DensityMatrix rho;
    EntanglementReport report;
    ConvergenceInfo convergence;
    std::optional<double> wall_time_s; // absent in deterministic mode
};

/// End-to-end pipeline: bases -> quadrature rule -> restriction Gram ->
/// rho -> diagnostics. The assembled state is a convex mixture of
/// product coherent projectors over the quadrature nodes, so the report
/// carries a separability certificate for otherwise inconclusive cases.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options);

std::string result_to_json(const ExperimentResult& result, bool emit_matrix,
                           bool deterministic);

/// One CSV row per run; the shared header is sweep_csv_header().
std::string sweep_csv_header();
std::string result_to_csv_row(const std::string& param, double value,
                              const ExperimentResult& result);
std::string error_to_csv_row(const std::string& param, double value,
                             const std::string& message);

/// Apply a sweep parameter ("N", "radius", "r1", "r2", "winding",
/// "nodes", "measure_scale") to a copy of the spec. Unknown names raise
/// std::invalid_argument.
ExperimentSpec apply_parameter(const ExperimentSpec& spec, const std::string& name,
                               double value);

/// Run the spec at each parameter value; failures are recorded per row.
std::string sweep(const ExperimentSpec& spec, const std::string& param,
                  const std::vector<double>& values, const RunOptions& options);

/// Maps library failures to the documented process exit codes:
/// 2 = usage / bad input, 3 = degenerate state, 4 = numerical failure.
int exit_code_for(const std::exception& error);

} // namespace kqent
