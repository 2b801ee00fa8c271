#pragma once

#include "kqent/quadrature.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <variant>

namespace kqent {

// ---------------------------------------------------------------------------
// Per-factor pieces. A factor submanifold lives in one P^n chart.
// ---------------------------------------------------------------------------

/// A single chart point (zero-dimensional).
struct FactorPoint {
    Eigen::VectorXcd p;
};

/// The circle |z_1| = radius in the first chart coordinate (remaining
/// coordinates zero). Parameter: theta in [0, 2pi).
struct FactorCircle {
    double radius = 1.0;
};

/// The whole P^1 factor, parametrized by (t, theta) in [0,1] x [0,2pi)
/// through z = r(t) e^{i theta}, r(t)^2 = t/(1-t). Under this
/// substitution the Fubini-Study area density is identically 1, and the
/// chart integrands become polynomial in t, so Gauss-Legendre rules of
/// modest size are exact. Only n = 1 factors are supported.
struct FactorFull {};

using FactorSpec = std::variant<FactorPoint, FactorCircle, FactorFull>;

int factor_param_dims(const FactorSpec& f);
Domain factor_domain(const FactorSpec& f);

struct FactorEval {
    Eigen::VectorXcd z;        // chart point, length n
    Eigen::MatrixXcd velocity; // n x (local parameter count)
};

FactorEval eval_factor(const FactorSpec& f, int n, std::span<const double> params);

/// Induced measure density of a factor submanifold with respect to its
/// parameter measure: sqrt(det G), G the Fubini-Study Gram matrix of the
/// parametrization tangents. Throws DegenerateSubmanifoldError when the
/// parametrization is singular (det G <= 0).
double factor_induced_density(const FactorSpec& f, int n, std::span<const double> params);

// ---------------------------------------------------------------------------
// Joint submanifolds of the product M1 x M2.
// ---------------------------------------------------------------------------

/// Lambda = Lambda_1 x Lambda_2 with the two factor pieces independent.
struct ProductShape {
    FactorSpec factor1;
    FactorSpec factor2;
};

/// Lambda = {(z, w) : z = w = r e^{i theta}} inside P^1 x P^1.
struct DiagonalCircleShape {
    double radius = 1.0;
};

/// Lambda = {(r e^{i theta}, r e^{i k theta})} inside P^1 x P^1; the
/// winding number k couples the two factors.
struct GraphCurveShape {
    double radius = 1.0;
    int winding = 2;
};

/**
 A parametrized submanifold of P^{n1} x P^{n2} together with the data
 needed to integrate over it: a compact parameter domain, the chart
 parametrization with analytic tangents, and the induced measure
 density. `measure_scale` multiplies the density by a global constant;
 trace-normalized states are invariant under it (kept as an explicit
 knob so that invariance is testable).
*/
struct SubmanifoldSpec {
    int n1 = 1;
    int n2 = 1;
    std::variant<ProductShape, DiagonalCircleShape, GraphCurveShape> shape;
    double measure_scale = 1.0;
    std::string kind_label; // original spec kind, echoed in results

    int param_dims() const;
    Domain parameter_domain() const;

    struct Eval {
        Eigen::VectorXcd z1, z2;   // chart points in the two factors
        Eigen::MatrixXcd v1, v2;   // n_j x param_dims tangent velocities
    };
    Eval evaluate(std::span<const double> params) const;
};

/// sqrt(det G) of the parametrization tangents under the product
/// Fubini-Study metric, times measure_scale. det G <= 0 raises
/// DegenerateSubmanifoldError.
double induced_density(const SubmanifoldSpec& spec, std::span<const double> params);

// Validated constructors for the supported kinds.
SubmanifoldSpec make_point_spec(const Eigen::VectorXcd& p1, const Eigen::VectorXcd& p2);
SubmanifoldSpec make_product_spec(int n1, int n2, FactorSpec f1, FactorSpec f2,
                                  std::string kind_label = "product");
SubmanifoldSpec make_torus_spec(double r1, double r2);
SubmanifoldSpec make_full_product_spec();
SubmanifoldSpec make_diagonal_circle_spec(double radius);
SubmanifoldSpec make_graph_curve_spec(double radius, int winding);

} // namespace kqent
