#include "kqent/experiment.hpp"

#include "kqent/coherent.hpp"
#include "kqent/errors.hpp"
#include "kqent/jsonio.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kqent {

namespace {

using nlohmann::json;

Eigen::VectorXcd parse_chart_point(const json& j, int n, const char* name) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        throw std::invalid_argument(std::string("spec: ") + name + " must list " +
                                    std::to_string(n) + " [re, im] coordinate pairs");
    }
    Eigen::VectorXcd p(n);
    for (int i = 0; i < n; ++i) {
        const json& c = j[static_cast<std::size_t>(i)];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
            throw std::invalid_argument(std::string("spec: ") + name +
                                        " coordinates must be [re, im] pairs");
        }
        p[i] = std::complex<double>(c[0].get<double>(), c[1].get<double>());
    }
    return p;
}

double require_number(const json& params, const char* field) {
    if (!params.contains(field) || !params[field].is_number()) {
        throw std::invalid_argument(std::string("spec: missing numeric param \"") + field +
                                    "\"");
    }
    return params[field].get<double>();
}

FactorSpec parse_factor(const json& j, int n, const char* name) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw std::invalid_argument(std::string("spec: ") + name +
                                    " must be an object with a \"kind\"");
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "point") {
        if (!j.contains("point")) {
            throw std::invalid_argument("spec: factor point requires \"point\"");
        }
        return FactorPoint{parse_chart_point(j["point"], n, name)};
    }
    if (kind == "circle") {
        return FactorCircle{require_number(j, "radius")};
    }
    if (kind == "full") {
        return FactorFull{};
    }
    throw std::invalid_argument("spec: unknown factor kind \"" + kind + "\"");
}

SubmanifoldSpec parse_submanifold(const json& j, int n1, int n2) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw std::invalid_argument("spec: submanifold must be an object with a \"kind\"");
    }
    const std::string kind = j["kind"].get<std::string>();
    const json params = j.value("params", json::object());

    SubmanifoldSpec spec;
    if (kind == "point") {
        const Eigen::VectorXcd p1 = parse_chart_point(params.at("p1"), n1, "p1");
        const Eigen::VectorXcd p2 = parse_chart_point(params.at("p2"), n2, "p2");
        spec = make_point_spec(p1, p2);
    } else if (kind == "circle") {
        const int factor = params.contains("factor") ? params["factor"].get<int>() : 1;
        const double radius = require_number(params, "radius");
        Eigen::VectorXcd other = Eigen::VectorXcd::Zero(factor == 1 ? n2 : n1);
        if (params.contains("other_point")) {
            other = parse_chart_point(params["other_point"], static_cast<int>(other.size()),
                                      "other_point");
        }
        if (factor == 1) {
            spec = make_product_spec(n1, n2, FactorCircle{radius}, FactorPoint{other},
                                     "circle");
        } else if (factor == 2) {
            spec = make_product_spec(n1, n2, FactorPoint{other}, FactorCircle{radius},
                                     "circle");
        } else {
            throw std::invalid_argument("spec: circle factor must be 1 or 2");
        }
    } else if (kind == "torus") {
        spec = make_torus_spec(require_number(params, "r1"), require_number(params, "r2"));
        if (n1 != 1 || n2 != 1) {
            throw UnsupportedDimensionError("spec: torus requires n1 = n2 = 1");
        }
    } else if (kind == "product") {
        spec = make_product_spec(n1, n2, parse_factor(params.at("factor1"), n1, "factor1"),
                                 parse_factor(params.at("factor2"), n2, "factor2"));
    } else if (kind == "full_product") {
        if (n1 != 1 || n2 != 1) {
            throw UnsupportedDimensionError("spec: full_product requires n1 = n2 = 1");
        }
        spec = make_full_product_spec();
    } else if (kind == "diagonal_circle") {
        if (n1 != 1 || n2 != 1) {
            throw UnsupportedDimensionError("spec: diagonal_circle requires n1 = n2 = 1");
        }
        spec = make_diagonal_circle_spec(require_number(params, "radius"));
    } else if (kind == "custom") {
        const std::string name = params.value("name", "");
        if (name == "graph_curve") {
            if (n1 != 1 || n2 != 1) {
                throw UnsupportedDimensionError("spec: graph_curve requires n1 = n2 = 1");
            }
            const int winding =
                params.contains("winding") ? params["winding"].get<int>() : 2;
            spec = make_graph_curve_spec(require_number(params, "radius"), winding);
        } else {
            throw std::invalid_argument("spec: unknown custom parametrization \"" + name +
                                        "\"");
        }
    } else {
        throw std::invalid_argument("spec: unknown submanifold kind \"" + kind + "\"");
    }

    if (j.contains("measure_scale")) {
        const double scale = j["measure_scale"].get<double>();
        if (!(scale > 0.0) || !std::isfinite(scale)) {
            throw std::invalid_argument("spec: measure_scale must be positive");
        }
        spec.measure_scale = scale;
    }
    spec.n1 = n1;
    spec.n2 = n2;
    return spec;
}

std::vector<int> node_counts(const Domain& domain, const QuadratureOptions& quad,
                             const std::optional<int>& cli_override) {
    std::vector<int> counts;
    counts.reserve(domain.size());
    for (const Domain1D& axis : domain) {
        int m = axis.kind == DomainKind::Periodic ? quad.nodes_periodic
                                                  : quad.nodes_aperiodic;
        if (quad.override_all) {
            m = *quad.override_all;
        }
        if (cli_override) {
            m = *cli_override;
        }
        counts.push_back(m);
    }
    return counts;
}

} // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("spec: JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("spec: top level must be an object");
    }
    if (j.value("schema", 0) != 1) {
        throw std::invalid_argument("spec: unsupported or missing \"schema\" (expected 1)");
    }
    ExperimentSpec spec;
    spec.n1 = j.value("n1", 1);
    spec.n2 = j.value("n2", 1);
    spec.power = j.value("N", 1);
    if (spec.n1 < 1 || spec.n2 < 1) {
        throw std::invalid_argument("spec: n1 and n2 must be >= 1");
    }
    if (spec.power < 1) {
        throw std::invalid_argument("spec: N must be >= 1");
    }
    if (!j.contains("submanifold")) {
        throw std::invalid_argument("spec: missing \"submanifold\"");
    }
    spec.submanifold = parse_submanifold(j["submanifold"], spec.n1, spec.n2);
    if (j["submanifold"].contains("nodes")) {
        const int nodes = j["submanifold"]["nodes"].get<int>();
        if (nodes > 0) {
            if (nodes < 2) {
                throw std::invalid_argument("spec: nodes must be >= 2 (or omitted)");
            }
            spec.quadrature.override_all = nodes;
        }
    }
    if (j.contains("output") && j["output"].is_object()) {
        spec.emit_matrix = j["output"].value("emit_matrix", false);
    }
    return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("spec: cannot open file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_spec(buffer.str());
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();

    const SectionBasis basis1 = make_section_basis(spec.n1, spec.power);
    const SectionBasis basis2 = make_section_basis(spec.n2, spec.power);
    const Exec exec = options.deterministic ? Exec::Serial : Exec::Parallel;

    Tolerances tol;
    if (options.tol_override) {
        tol.verdict = *options.tol_override;
    }

    const Domain domain = spec.submanifold.parameter_domain();
    const std::vector<int> counts = node_counts(domain, spec.quadrature,
                                                options.nodes_override);

    ExperimentResult result;
    result.kind = spec.submanifold.kind_label;
    result.power = spec.power;

    if (domain.empty()) {
        // point submanifold: no quadrature, trivially converged
        const QuadratureRule empty_rule{};
        const GramOperator gram =
            restriction_gram(basis1, basis2, spec.submanifold, empty_rule, exec);
        result.rho = rho_from_gram(gram);
        result.convergence = ConvergenceInfo{0, 0.0, true};
    } else {
        const QuadratureRule rule = build_rule(domain, counts);
        const GramOperator gram =
            restriction_gram(basis1, basis2, spec.submanifold, rule, exec);
        result.rho = rho_from_gram(gram);

        // residual against the next coarser rule (half the nodes per axis)
        std::vector<int> coarse = counts;
        for (int& m : coarse) {
            m = std::max(2, m / 2);
        }
        const QuadratureRule coarse_rule = build_rule(domain, coarse);
        const GramOperator coarse_gram =
            restriction_gram(basis1, basis2, spec.submanifold, coarse_rule, exec);
        const DensityMatrix coarse_rho = rho_from_gram(coarse_gram);
        result.convergence.nodes = *std::max_element(counts.begin(), counts.end());
        result.convergence.residual = (result.rho.matrix - coarse_rho.matrix).norm();
        result.convergence.converged = result.convergence.residual <= 1e-6;
    }

    result.d1 = result.rho.d1;
    result.d2 = result.rho.d2;
    result.d_total = static_cast<long long>(result.d1) * result.d2;

    // quadrature-assembled states are convex mixtures of product coherent
    // projectors over the nodes: that is a separability certificate
    result.report = analyze(result.rho, tol, /*mixture_certificate=*/true);

    if (!options.deterministic) {
        const auto stop = std::chrono::steady_clock::now();
        result.wall_time_s = std::chrono::duration<double>(stop - start).count();
    }
    return result;
}

std::string result_to_json(const ExperimentResult& result, bool emit_matrix,
                           bool deterministic) {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1);
    w.key("kind");
    w.value(result.kind);
    w.key("N");
    w.value(result.power);
    w.key("dims");
    w.begin_object();
    w.key("d1");
    w.value(result.d1);
    w.key("d2");
    w.value(result.d2);
    w.key("d");
    w.value(result.d_total);
    w.end_object();
    w.key("report");
    // splice the report object (already deterministic JSON)
    w.raw(report_to_json(result.report));
    w.key("convergence");
    w.begin_object();
    w.key("nodes");
    w.value(result.convergence.nodes);
    w.key("residual");
    w.value(result.convergence.residual);
    w.key("converged");
    w.value(result.convergence.converged);
    if (!result.convergence.converged) {
        w.key("warning");
        w.value(std::string("quadrature residual above 1e-6; increase nodes"));
    }
    w.end_object();
    if (emit_matrix) {
        w.key("rho");
        if (result.rho.dim() <= 128) {
            w.raw(density_matrix_to_json(result.rho));
        } else {
            w.null_value(); // elided above the size threshold
        }
    }
    if (!deterministic && result.wall_time_s) {
        w.key("wall_time_s");
        w.value(*result.wall_time_s);
    }
    w.end_object();
    return w.str();
}

std::string sweep_csv_header() {
    return "param,value,kind,N,d1,d2,d,purity,entropy,eof,concurrence,"
           "ppt_min_eigenvalue,ppt,product_residual,separable_verdict,"
           "convergence_residual,status\n";
}

std::string result_to_csv_row(const std::string& param, double value,
                              const ExperimentResult& result) {
    std::string row;
    row += param;
    row += ',';
    row += format_double(value);
    row += ',';
    row += result.kind;
    row += ',';
    row += std::to_string(result.power);
    row += ',';
    row += std::to_string(result.d1);
    row += ',';
    row += std::to_string(result.d2);
    row += ',';
    row += std::to_string(result.d_total);
    row += ',';
    row += format_double(result.report.purity);
    row += ',';
    row += result.report.entropy ? format_double(*result.report.entropy) : "";
    row += ',';
    row += result.report.eof ? format_double(*result.report.eof) : "";
    row += ',';
    row += result.report.concurrence ? format_double(*result.report.concurrence) : "";
    row += ',';
    row += format_double(result.report.ppt_min_eigenvalue);
    row += ',';
    row += result.report.ppt ? "1" : "0";
    row += ',';
    row += format_double(result.report.product_residual);
    row += ',';
    row += to_string(result.report.verdict);
    row += ',';
    row += format_double(result.convergence.residual);
    row += ",ok\n";
    return row;
}

std::string error_to_csv_row(const std::string& param, double value,
                             const std::string& message) {
    std::string sanitized = message;
    for (char& c : sanitized) {
        if (c == ',' || c == '\n') {
            c = ';';
        }
    }
    return param + "," + format_double(value) + ",,,,,,,,,,,,,,,error: " + sanitized + "\n";
}

ExperimentSpec apply_parameter(const ExperimentSpec& spec, const std::string& name,
                               double value) {
    ExperimentSpec out = spec;
    if (name == "N") {
        const int n = static_cast<int>(std::llround(value));
        if (n < 1) {
            throw std::invalid_argument("sweep: N must be >= 1");
        }
        out.power = n;
        return out;
    }
    if (name == "nodes") {
        const int m = static_cast<int>(std::llround(value));
        if (m < 2) {
            throw std::invalid_argument("sweep: nodes must be >= 2");
        }
        out.quadrature.override_all = m;
        return out;
    }
    if (name == "measure_scale") {
        if (!(value > 0.0)) {
            throw std::invalid_argument("sweep: measure_scale must be positive");
        }
        out.submanifold.measure_scale = value;
        return out;
    }
    if (name == "radius") {
        if (auto* diag = std::get_if<DiagonalCircleShape>(&out.submanifold.shape)) {
            diag->radius = value;
            return out;
        }
        if (auto* graph = std::get_if<GraphCurveShape>(&out.submanifold.shape)) {
            graph->radius = value;
            return out;
        }
        if (auto* prod = std::get_if<ProductShape>(&out.submanifold.shape)) {
            if (auto* c1 = std::get_if<FactorCircle>(&prod->factor1)) {
                c1->radius = value;
                return out;
            }
            if (auto* c2 = std::get_if<FactorCircle>(&prod->factor2)) {
                c2->radius = value;
                return out;
            }
        }
        throw std::invalid_argument("sweep: spec has no radius parameter");
    }
    if (name == "r1" || name == "r2") {
        auto* prod = std::get_if<ProductShape>(&out.submanifold.shape);
        if (prod) {
            FactorSpec& factor = (name == "r1") ? prod->factor1 : prod->factor2;
            if (auto* c = std::get_if<FactorCircle>(&factor)) {
                c->radius = value;
                return out;
            }
        }
        throw std::invalid_argument("sweep: spec has no " + name + " parameter");
    }
    if (name == "winding") {
        if (auto* graph = std::get_if<GraphCurveShape>(&out.submanifold.shape)) {
            graph->winding = static_cast<int>(std::llround(value));
            return out;
        }
        throw std::invalid_argument("sweep: spec has no winding parameter");
    }
    throw std::invalid_argument("sweep: unknown parameter \"" + name + "\"");
}

std::string sweep(const ExperimentSpec& spec, const std::string& param,
                  const std::vector<double>& values, const RunOptions& options) {
    std::string out = sweep_csv_header();
    for (double value : values) {
        try {
            const ExperimentSpec point = apply_parameter(spec, param, value);
            const ExperimentResult result = run_experiment(point, options);
            out += result_to_csv_row(param, value, result);
        } catch (const std::exception& e) {
            out += error_to_csv_row(param, value, e.what());
        }
    }
    return out;
}

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const DegenerateStateError*>(&error) ||
        dynamic_cast<const DegenerateSubmanifoldError*>(&error)) {
        return 3;
    }
    if (dynamic_cast<const NumericalError*>(&error)) {
        return 4;
    }
    if (dynamic_cast<const std::invalid_argument*>(&error) ||
        dynamic_cast<const std::domain_error*>(&error) ||
        dynamic_cast<const UnsupportedDimensionError*>(&error)) {
        return 2;
    }
    return 4;
}

} // namespace kqent
