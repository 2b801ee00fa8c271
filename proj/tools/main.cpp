#include "kqent/experiment.hpp"
#include "kqent/jsonio.hpp"
#include "kqent/projective.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CommonOptions {
    std::string spec_path;
    std::string output_path;
    std::string format = "json";
    std::optional<int> nodes;
    std::optional<double> tol;
    bool deterministic = false;
    bool emit_matrix = false;
};

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open output file " + path);
    }
    out << payload;
}

std::vector<double> parse_values(const std::string& values, const std::string& range) {
    std::vector<double> out;
    if (!values.empty()) {
        std::stringstream ss(values);
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(std::stod(item));
        }
    } else if (!range.empty()) {
        // a:b[:step], inclusive endpoints
        double a = 0.0, b = 0.0, step = 1.0;
        std::stringstream ss(range);
        std::string item;
        std::vector<double> parts;
        while (std::getline(ss, item, ':')) {
            parts.push_back(std::stod(item));
        }
        if (parts.size() < 2 || parts.size() > 3) {
            throw std::invalid_argument("--range expects a:b or a:b:step");
        }
        a = parts[0];
        b = parts[1];
        if (parts.size() == 3) {
            step = parts[2];
        }
        if (!(step > 0.0)) {
            throw std::invalid_argument("--range step must be positive");
        }
        for (double v = a; v <= b + 1e-12; v += step) {
            out.push_back(v);
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("sweep requires --values or --range");
    }
    return out;
}

int cmd_dims(int n1, int n2, int N, const std::string& format) {
    const long long d1 = kqent::dim_sections(n1, N);
    const long long d2 = kqent::dim_sections(n2, N);
    const long long d = d1 * d2;
    if (format == "json") {
        kqent::JsonWriter w;
        w.begin_object();
        w.key("n1");
        w.value(n1);
        w.key("n2");
        w.value(n2);
        w.key("N");
        w.value(N);
        w.key("d1");
        w.value(d1);
        w.key("d2");
        w.value(d2);
        w.key("d");
        w.value(d);
        w.end_object();
        std::cout << w.str() << '\n';
    } else if (format == "csv") {
        std::cout << "n1,n2,N,d1,d2,d\n"
                  << n1 << ',' << n2 << ',' << N << ',' << d1 << ',' << d2 << ',' << d
                  << '\n';
    } else {
        std::cout << "n1 = " << n1 << "  n2 = " << n2 << "  N = " << N << '\n'
                  << "d1 (sections over factor 1) = " << d1 << '\n'
                  << "d2 (sections over factor 2) = " << d2 << '\n'
                  << "d  (product space)          = " << d << '\n';
    }
    return 0;
}

kqent::RunOptions to_run_options(const CommonOptions& opts, bool spec_emit_matrix) {
    kqent::RunOptions run;
    run.deterministic = opts.deterministic;
    run.nodes_override = opts.nodes;
    run.tol_override = opts.tol;
    run.emit_matrix = opts.emit_matrix || spec_emit_matrix;
    return run;
}

int cmd_run(const CommonOptions& opts) {
    const kqent::ExperimentSpec spec = kqent::load_experiment_spec(opts.spec_path);
    const kqent::RunOptions run = to_run_options(opts, spec.emit_matrix);
    const kqent::ExperimentResult result = kqent::run_experiment(spec, run);

    std::string payload;
    if (opts.format == "csv") {
        payload = kqent::sweep_csv_header() +
                  kqent::result_to_csv_row("N", static_cast<double>(result.power), result);
    } else {
        payload = kqent::result_to_json(result, run.emit_matrix, run.deterministic);
    }
    write_output(opts.output_path, payload);
    if (!result.convergence.converged) {
        std::cerr << "warning: quadrature residual " << result.convergence.residual
                  << " above 1e-6; increase nodes\n";
    }
    return 0;
}

int cmd_sweep(const CommonOptions& opts, const std::string& param,
              const std::string& values, const std::string& range) {
    const kqent::ExperimentSpec spec = kqent::load_experiment_spec(opts.spec_path);
    const kqent::RunOptions run = to_run_options(opts, false);
    const std::vector<double> points = parse_values(values, range);
    write_output(opts.output_path, kqent::sweep(spec, param, points, run));
    return 0;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("spec", opts.spec_path, "experiment spec JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", opts.output_path, "write output to a file");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option_function<int>(
        "--nodes", [&opts](int m) { opts.nodes = m; },
        "override quadrature nodes per axis");
    cmd->add_option_function<double>(
        "--tol", [&opts](double t) { opts.tol = t; }, "verdict tolerance (default 1e-10)");
    cmd->add_flag("--deterministic", opts.deterministic,
                  "serial reduction, byte-stable output, no wall time");
    cmd->add_flag("--emit-matrix", opts.emit_matrix, "include rho entries in the output");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"restriction states on products of projective spaces and their "
                 "entanglement diagnostics"};
    app.require_subcommand(1);

    int n1 = 1, n2 = 1, power = 1;
    std::string dims_format = "table";
    CLI::App* dims = app.add_subcommand("dims", "section-space dimension table");
    dims->add_option("--n1", n1, "complex dimension of factor 1")->required();
    dims->add_option("--n2", n2, "complex dimension of factor 2")->required();
    dims->add_option("--N", power, "bundle power")->required();
    dims->add_option("--format", dims_format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();

    CommonOptions run_opts;
    CLI::App* run = app.add_subcommand("run", "run one experiment end to end");
    add_common(run, run_opts);

    CommonOptions sweep_opts;
    std::string param, values, range;
    CLI::App* sweep = app.add_subcommand("sweep", "run an experiment over a parameter range");
    add_common(sweep, sweep_opts);
    sweep->add_option("--param", param,
                      "parameter to vary: N, radius, r1, r2, winding, nodes, measure_scale")
        ->required();
    sweep->add_option("--values", values, "comma-separated values");
    sweep->add_option("--range", range, "a:b[:step] inclusive range");

    try {
        app.parse(argc, argv);
        if (dims->parsed()) {
            return cmd_dims(n1, n2, power, dims_format);
        }
        if (run->parsed()) {
            return cmd_run(run_opts);
        }
        return cmd_sweep(sweep_opts, param, values, range);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kqent::exit_code_for(e);
    }
}
