#include "kqent/experiment.hpp"

#include "kqent/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

using namespace kqent;

namespace {

std::string experiments_dir() {
    return KQENT_EXPERIMENTS_DIR;
}

int count_fields(const std::string& line) {
    return static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

} // namespace

TEST_SUITE("experiment") {

TEST_CASE("all shipped experiment specs parse and validate") {
    for (const char* name :
         {"point.json", "circle_point.json", "circle_circle.json", "torus.json",
          "full_product.json", "diagonal_circle_r.json"}) {
        const ExperimentSpec spec = load_experiment_spec(experiments_dir() + "/" + name);
        CHECK(spec.schema == 1);
        CHECK(spec.n1 == 1);
        CHECK(spec.n2 == 1);
        CHECK(spec.power >= 1);
    }
}

TEST_CASE("spec validation failures") {
    CHECK_THROWS_AS(parse_experiment_spec("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec("{\"schema\": 2}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec(R"({"schema":1,"n1":0,"n2":1,"N":1,
        "submanifold":{"kind":"full_product","params":{}}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec(R"({"schema":1,"n1":1,"n2":1,"N":1,
        "submanifold":{"kind":"moebius","params":{}}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec(R"({"schema":1,"n1":1,"n2":1,"N":1,
        "submanifold":{"kind":"diagonal_circle","params":{}}})"),
                    std::invalid_argument); // missing radius
    CHECK_THROWS_AS(parse_experiment_spec(R"({"schema":1,"n1":1,"n2":1,"N":1,
        "submanifold":{"kind":"custom","params":{"name":"lemniscate","radius":1.0}}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_experiment_spec("/nonexistent/spec.json"),
                    std::invalid_argument);
}

TEST_CASE("running the point spec gives a pure zero-entropy state") {
    const ExperimentSpec spec = load_experiment_spec(experiments_dir() + "/point.json");
    RunOptions options;
    options.deterministic = true;
    const ExperimentResult result = run_experiment(spec, options);
    CHECK(result.d1 == 4);
    CHECK(result.d2 == 4);
    CHECK(result.d_total == 16);
    CHECK(result.report.purity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(*result.report.entropy <= 1e-10);
    CHECK(result.report.verdict == Verdict::SeparableCertified);
    CHECK_FALSE(result.wall_time_s.has_value());
}

TEST_CASE("running the full product spec gives the maximally mixed state") {
    const ExperimentSpec spec =
        load_experiment_spec(experiments_dir() + "/full_product.json");
    RunOptions options;
    options.deterministic = true;
    const ExperimentResult result = run_experiment(spec, options);
    const int dim = result.rho.dim();
    CHECK((result.rho.matrix - Eigen::MatrixXcd::Identity(dim, dim) / dim).norm() <=
          1e-7);
    CHECK(result.convergence.converged);
}

TEST_CASE("deterministic runs serialize to identical bytes") {
    const ExperimentSpec spec =
        load_experiment_spec(experiments_dir() + "/diagonal_circle_r.json");
    RunOptions options;
    options.deterministic = true;
    options.emit_matrix = true;
    const std::string a =
        result_to_json(run_experiment(spec, options), true, true);
    const std::string b =
        result_to_json(run_experiment(spec, options), true, true);
    CHECK(a == b);
    CHECK(a.find("wall_time_s") == std::string::npos);
}

TEST_CASE("apply_parameter") {
    const ExperimentSpec spec =
        load_experiment_spec(experiments_dir() + "/torus.json");

    CHECK(apply_parameter(spec, "N", 4).power == 4);
    CHECK(apply_parameter(spec, "nodes", 32).quadrature.override_all == 32);
    CHECK(apply_parameter(spec, "measure_scale", 7.0).submanifold.measure_scale == 7.0);

    const ExperimentSpec r1 = apply_parameter(spec, "r1", 2.5);
    const auto& shape = std::get<ProductShape>(r1.submanifold.shape);
    CHECK(std::get<FactorCircle>(shape.factor1).radius == 2.5);

    CHECK_THROWS_AS(apply_parameter(spec, "winding", 2.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_parameter(spec, "unknown", 1.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_parameter(spec, "N", 0.0), std::invalid_argument);

    const ExperimentSpec diag =
        load_experiment_spec(experiments_dir() + "/diagonal_circle_r.json");
    const ExperimentSpec diag2 = apply_parameter(diag, "radius", 2.0);
    CHECK(std::get<DiagonalCircleShape>(diag2.submanifold.shape).radius == 2.0);
}

TEST_CASE("sweep emits one row per value and records failures") {
    const ExperimentSpec spec =
        load_experiment_spec(experiments_dir() + "/diagonal_circle_r.json");
    RunOptions options;
    options.deterministic = true;

    const std::string csv = sweep(spec, "radius", {0.5, 1.0, 2.0}, options);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == first_line(sweep_csv_header()));
    const int header_fields = count_fields(line);
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(count_fields(line) == header_fields);
        CHECK(line.find("ok") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 3);

    // radius 0 is a degenerate circle: the row must record the error
    const std::string with_failure = sweep(spec, "radius", {0.0, 1.0}, options);
    CHECK(with_failure.find("error:") != std::string::npos);
    std::istringstream lines2(with_failure);
    std::getline(lines2, line); // header
    std::getline(lines2, line);
    CHECK(count_fields(line) == header_fields);
    CHECK(line.find("error:") != std::string::npos);
}

TEST_CASE("exit code mapping") {
    CHECK(exit_code_for(std::invalid_argument("bad")) == 2);
    CHECK(exit_code_for(std::domain_error("bad")) == 2);
    CHECK(exit_code_for(UnsupportedDimensionError("bad")) == 2);
    CHECK(exit_code_for(DegenerateStateError("bad")) == 3);
    CHECK(exit_code_for(DegenerateSubmanifoldError("bad")) == 3);
    CHECK(exit_code_for(NumericalError("bad")) == 4);
    CHECK(exit_code_for(std::runtime_error("bad")) == 4);
}

TEST_CASE("measure scale leaves the state untouched") {
    const ExperimentSpec spec =
        load_experiment_spec(experiments_dir() + "/circle_circle.json");
    RunOptions options;
    options.deterministic = true;
    const ExperimentResult base = run_experiment(spec, options);
    const ExperimentResult scaled =
        run_experiment(apply_parameter(spec, "measure_scale", 7.0), options);
    CHECK((base.rho.matrix - scaled.rho.matrix).norm() <= 1e-14);
}

} // TEST_SUITE
