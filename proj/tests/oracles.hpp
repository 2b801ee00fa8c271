#pragma once

// Independent cross-checks used by the unit and acceptance suites. These
// deliberately avoid the library quadrature rules and assembly kernels:
// radial integrals go through composite Simpson sums, curve densities
// through finite-difference secants, and the diagonal-circle state
// through direct angular averaging of monomials.

#include "kqent/projective.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

namespace oracles {

template <typename F>
double simpson(F f, double a, double b, int intervals) {
    // composite Simpson; `intervals` must be even
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int k = 1; k < intervals; ++k) {
        sum += f(a + k * h) * ((k % 2) ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

/// ||z^j||^2 on P^1 for O(N): the chart integral
/// int |z|^{2j} (1+r^2)^{-N} dA/(1+r^2)^2 reduced by the substitution
/// t = r^2/(1+r^2) to pi * int_0^1 t^j (1-t)^{N-j} dt.
inline double monomial_norm2_p1(int j, int N) {
    auto integrand = [&](double t) {
        return std::pow(t, j) * std::pow(1.0 - t, N - j);
    };
    return std::numbers::pi * simpson(integrand, 0.0, 1.0, 4000);
}

/// Arc-length density of a curve theta -> (z1, z2) in the product
/// Fubini-Study metric, from central finite-difference secants of the
/// positions only (no analytic tangents).
inline double fd_density(
    const std::function<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>(double)>& curve,
    double theta, double h = 1e-4) {
    const auto [z1p, z2p] = curve(theta + 0.5 * h);
    const auto [z1m, z2m] = curve(theta - 0.5 * h);
    const auto [z1, z2] = curve(theta);
    const Eigen::VectorXcd v1 = (z1p - z1m) / h;
    const Eigen::VectorXcd v2 = (z2p - z2m) / h;
    return std::sqrt(kqent::fs_tangent_norm2(z1, v1) + kqent::fs_tangent_norm2(z2, v2));
}

/// Diagonal-circle restriction state at N = 1 from direct angular sums:
/// the restricted normalized monomial vector is proportional to
/// (1, r e^{i th}, r e^{i th}, r^2 e^{2 i th}); all theta-independent
/// prefactors cancel after trace normalization.
inline Eigen::Matrix4cd diagonal_circle_rho_angular(double r, int m = 512) {
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < m; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / m;
        Eigen::Vector4cd u;
        const std::complex<double> e = std::polar(1.0, theta);
        u << 1.0, r * e, r * e, r * r * e * e;
        g += u.conjugate() * u.transpose();
    }
    return g / g.trace();
}

/// The same state in closed form: diag(1, r^2, r^2, r^4) plus the
/// (1,2)/(2,1) pair r^2, all over (1+r^2)^2.
inline Eigen::Matrix4cd diagonal_circle_rho_closed_form(double r) {
    const double r2 = r * r;
    const double s = (1.0 + r2) * (1.0 + r2);
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 1.0 / s;
    rho(1, 1) = r2 / s;
    rho(2, 2) = r2 / s;
    rho(3, 3) = r2 * r2 / s;
    rho(1, 2) = r2 / s;
    rho(2, 1) = r2 / s;
    return rho;
}

inline Eigen::VectorXcd random_complex_vector(std::mt19937& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) {
        v[i] = std::complex<double>(gauss(rng), gauss(rng));
    }
    return v;
}

inline Eigen::VectorXcd random_unit_vector(std::mt19937& rng, int dim) {
    Eigen::VectorXcd v = random_complex_vector(rng, dim);
    return v / v.norm();
}

inline Eigen::MatrixXcd random_unitary(std::mt19937& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
        }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    return qr.householderQ();
}

/// Random mixed state: G G^dagger normalized to unit trace.
inline Eigen::MatrixXcd random_density(std::mt19937& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
        }
    }
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

/// Projector onto a unit vector.
inline Eigen::MatrixXcd projector(const Eigen::VectorXcd& v) {
    return v * v.adjoint();
}

} // namespace oracles
