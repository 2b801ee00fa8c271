#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kqent {

/// One axis of a tensor-product integration domain.
///   Interval [a, b]  -> Gauss-Legendre nodes (exact for polynomial
///                       degree <= 2m-1)
///   Periodic [a, b)  -> equispaced trapezoid nodes (exact for
///                       trigonometric frequency < m)
enum class DomainKind { Interval, Periodic };

struct Domain1D {
    DomainKind kind = DomainKind::Interval;
    double a = 0.0;
    double b = 1.0;
};

using Domain = std::vector<Domain1D>;

/**
 Deterministic tensor-product quadrature rule.

 Flattened nodes are enumerated in a fixed row-major order (last axis
 fastest); `integrate` and the Gram assembly kernels visit them in this
 order, so sequential reductions are reproducible bit-for-bit.

 An empty domain is the degenerate rule: one node with no coordinates
 and weight 1 (used by point submanifolds, where the "integral" is a
 single evaluation).
*/
struct QuadratureRule {
    Domain domain;
    std::vector<std::vector<double>> axis_nodes;
    std::vector<std::vector<double>> axis_weights;

    std::size_t dims() const { return domain.size(); }
    std::size_t node_count() const;

    /// Coordinates of flattened node k; `out` must have size dims().
    void node_at(std::size_t k, std::span<double> out) const;
    double weight_at(std::size_t k) const;
};

/// Same node count on every axis.
QuadratureRule build_rule(const Domain& domain, int nodes_per_dim);
/// Per-axis node counts.
QuadratureRule build_rule(const Domain& domain, std::span<const int> nodes_per_dim);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

/// Fixed-order weighted sum of f over the rule nodes. Throws
/// NumericalError (with the node location) if f returns a non-finite
/// value.
std::complex<double> integrate(
    const QuadratureRule& rule,
    const std::function<std::complex<double>(std::span<const double>)>& f);

} // namespace kqent
