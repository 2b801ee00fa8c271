#include "kqent/projective.hpp"

#include "kqent/quadrature.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace kqent;

namespace {

Eigen::VectorXcd point1(std::complex<double> z) {
    return Eigen::VectorXcd::Constant(1, z);
}

} // namespace

TEST_SUITE("projective") {

TEST_CASE("section space dimensions") {
    CHECK(dim_sections(1, 3) == 4);
    CHECK(dim_sections(2, 2) == 6);
    CHECK(dim_sections(1, 0) == 1);
    CHECK(dim_sections(3, 6) == 84);

    CHECK_THROWS_AS(dim_sections(0, 2), std::domain_error);
    CHECK_THROWS_AS(dim_sections(1, -1), std::domain_error);
    CHECK_THROWS_AS(ManifoldModel(0), std::domain_error);
}

TEST_CASE("basis enumerates all multi-indices in lexicographic order") {
    for (int n = 1; n <= 3; ++n) {
        for (int N = 1; N <= 6; ++N) {
            const SectionBasis basis = make_section_basis(n, N);
            CHECK(basis.size() == dim_sections(n, N));
            for (int k = 1; k < basis.size(); ++k) {
                CHECK(basis.multi_indices[k - 1] < basis.multi_indices[k]);
            }
        }
    }
    const SectionBasis b1 = make_section_basis(1, 3);
    CHECK(b1.multi_indices.front() == std::vector<int>{0});
    CHECK(b1.multi_indices.back() == std::vector<int>{3});
}

TEST_CASE("fubini-study weight") {
    CHECK(fs_weight(point1(0.0), 1) == 1.0);
    CHECK(fs_weight(point1(0.0), 5) == 1.0);
    CHECK(fs_weight(point1({0.0, 1.0}), 2) == doctest::Approx(0.25).epsilon(1e-15));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Eigen::VectorXcd z(2);
        z << std::complex<double>(uni(rng), uni(rng)),
            std::complex<double>(uni(rng), uni(rng));
        const int N = 1 + trial % 6;
        const double w1 = fs_weight(z, 1);
        double expected = 1.0;
        for (int k = 0; k < N; ++k) {
            expected *= w1;
        }
        CHECK(std::abs(fs_weight(z, N) - expected) <= 1e-12 * expected);
    }
}

TEST_CASE("monomial norms match the independent radial quadrature") {
    // pinned value: ||1|| = ||z|| = sqrt(pi/2) for O(1) on P^1
    CHECK(monomial_norm(1, 1, std::vector<int>{0}) ==
          doctest::Approx(std::sqrt(std::numbers::pi / 2)).epsilon(1e-14));
    CHECK(monomial_norm(1, 1, std::vector<int>{1}) ==
          doctest::Approx(std::sqrt(std::numbers::pi / 2)).epsilon(1e-14));

    for (int N = 1; N <= 6; ++N) {
        for (int j = 0; j <= N; ++j) {
            const double expected = std::sqrt(oracles::monomial_norm2_p1(j, N));
            const double actual = monomial_norm(1, N, std::vector<int>{j});
            CHECK(std::abs(actual - expected) <= 1e-10);
        }
    }

    CHECK_THROWS_AS(monomial_norm(1, 2, std::vector<int>{3}), std::domain_error);
    CHECK_THROWS_AS(monomial_norm(2, 2, std::vector<int>{1}), std::invalid_argument);
    CHECK_THROWS_AS(monomial_norm(1, 2, std::vector<int>{-1}), std::domain_error);
}

TEST_CASE("normalized basis is orthonormal under the chart quadrature") {
    // Gram of the normalized monomials over the whole P^1, radial
    // substitution t = r^2/(1+r^2), chart measure (1/2) dt dtheta.
    const Domain domain{{DomainKind::Interval, 0.0, 1.0},
                        {DomainKind::Periodic, 0.0, 2.0 * std::numbers::pi}};
    const QuadratureRule rule = build_rule(domain, 64);

    for (int N = 1; N <= 6; ++N) {
        const SectionBasis basis = make_section_basis(1, N);
        Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
        std::vector<double> params(2);
        for (std::size_t k = 0; k < rule.node_count(); ++k) {
            rule.node_at(k, params);
            const double t = params[0];
            const double r = std::sqrt(t / (1.0 - t));
            const Eigen::VectorXcd z = point1(std::polar(r, params[1]));
            const Eigen::VectorXcd v = basis.evaluate_normalized(z);
            gram += 0.5 * rule.weight_at(k) * fs_weight(z, N) *
                    (v.conjugate() * v.transpose());
        }
        const Eigen::MatrixXcd identity =
            Eigen::MatrixXcd::Identity(basis.size(), basis.size());
        CHECK((gram - identity).norm() <= 1e-8);
    }
}

TEST_CASE("section evaluation") {
    const SectionBasis basis = make_section_basis(1, 2);
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(basis.size());

    coeffs[0] = 1.0; // constant monomial
    CHECK(std::abs(evaluate_section(basis, coeffs, point1(0.0)) -
                   1.0 / basis.norms[0]) <= 1e-15);

    coeffs.setZero();
    coeffs[1] = 1.0; // monomial z vanishes at the origin
    CHECK(std::abs(evaluate_section(basis, coeffs, point1(0.0))) == 0.0);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXcd c1 = oracles::random_complex_vector(rng, basis.size());
        const Eigen::VectorXcd c2 = oracles::random_complex_vector(rng, basis.size());
        const std::complex<double> alpha(0.3, -1.1);
        const std::complex<double> beta(-0.8, 0.2);
        const Eigen::VectorXcd z = point1({0.4, -0.9});
        const std::complex<double> lhs = evaluate_section(basis, alpha * c1 + beta * c2, z);
        const std::complex<double> rhs =
            alpha * evaluate_section(basis, c1, z) + beta * evaluate_section(basis, c2, z);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }

    CHECK_THROWS_AS(evaluate_section(basis, Eigen::VectorXcd::Zero(2), point1(0.0)),
                    std::invalid_argument);
}

} // TEST_SUITE
