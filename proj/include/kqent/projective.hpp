#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace kqent {

/**
 Complex projective space P^n with the Fubini-Study structure, viewed
 through the standard affine chart C^n.

 Conventions used throughout:
   - The hyperplane bundle O(1) carries the metric whose weight on the
     standard chart frame is 1/(1 + |z|^2); its N-th power O(N) has
     weight (1 + |z|^2)^(-N).
   - Holomorphic sections of O(N) are identified in the chart with
     polynomials of degree <= N; the monomials z^a, |a| <= N, form a
     basis of dimension binomial(N+n, n).
   - The chart volume measure is dV = dLebesgue / (1 + |z|^2)^(n+1).
     The complement of the chart has measure zero, so full-space
     integrals are chart integrals. An overall constant in dV is a
     convention choice; it cancels in every trace-normalized state, and
     all raw norms below are pinned to this normalization.
*/
struct ManifoldModel {
    int n = 1; // complex dimension, >= 1

    explicit ManifoldModel(int dim);
};

/// dim H^0(P^n, O(N)) = binomial(N+n, n). Throws std::domain_error for
/// n < 1 or N < 0.
long long dim_sections(int n, int N);

/// Weight of the standard chart frame of O(N) at z: (1 + |z|^2)^(-N).
/// Computed as an integer power of the N=1 weight, so the power law
/// fs_weight(z, N) == fs_weight(z, 1)^N holds exactly.
double fs_weight(const Eigen::VectorXcd& z, int N);

/// Fubini-Study hermitian metric tensor g_{j k̄}(z) on the chart:
/// delta_{jk}/(1+|z|^2) - conj(z_j) z_k/(1+|z|^2)^2.
Eigen::MatrixXcd fs_metric(const Eigen::VectorXcd& z);

/// Riemannian squared length of a chart tangent vector v at z,
/// 2 Re sum_jk g_{j k̄} v_j conj(v_k).
double fs_tangent_norm2(const Eigen::VectorXcd& z, const Eigen::VectorXcd& v);

/// L^2 norm of the monomial section z^a of O(N) under the chart volume
/// convention above. Closed form:
///    ||z^a||^2 = pi^n * a_1! ... a_n! * (N - |a|)! / (N + n)!
/// Throws std::domain_error if |a| > N or any exponent is negative.
double monomial_norm(int n, int N, std::span<const int> exponents);

/**
 Orthogonal monomial basis of H^0(P^n, O(N)).

 multi_indices is the full list of exponent vectors with |a| <= N in
 lexicographic order; this ordering is the single canonical one and
 every matrix in the library refers to it. Dividing the monomials by
 `norms` yields an orthonormal family.
*/
struct SectionBasis {
    ManifoldModel model;
    int power = 1; // N
    std::vector<std::vector<int>> multi_indices;
    Eigen::VectorXd norms;

    int size() const { return static_cast<int>(multi_indices.size()); }

    /// Values of the normalized monomials z^a / ||z^a|| at a chart point.
    Eigen::VectorXcd evaluate_normalized(const Eigen::VectorXcd& z) const;
};

SectionBasis make_section_basis(int n, int N);

/// Chart-trivialized value of the section with the given coefficients in
/// the normalized basis: sum_k c_k z^{a_k} / ||z^{a_k}||.
/// Throws std::invalid_argument on a coefficient length mismatch.
std::complex<double> evaluate_section(const SectionBasis& basis,
                                      const Eigen::VectorXcd& coeffs,
                                      const Eigen::VectorXcd& point);

} // namespace kqent
