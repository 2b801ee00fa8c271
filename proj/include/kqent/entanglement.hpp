#pragma once

#include "kqent/states.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace kqent {

/// Numerical thresholds used by the diagnostics. All entropies are in
/// nats.
struct Tolerances {
    double hermiticity = 1e-12;
    double trace_one = 1e-12;
    double psd = 1e-10;             // eigenvalue floor: [-psd, 0] clips to 0, below raises
    double purity = 1e-10;          // |tr(rho^2) - 1| below this -> pure-state path
    double verdict = 1e-10;         // entropy / concurrence / PPT decision threshold
    double product_residual = 1e-9; // product-state certification threshold
};

enum class Verdict { SeparableCertified, EntangledCertified, Inconclusive };

std::string to_string(Verdict v);

/**
 Entanglement diagnostics of a bipartite state.

 entropy/schmidt are present for pure states only; eof is present for
 pure states (where it equals the entanglement entropy) and for 2x2
 mixed states (Wootters closed form). For mixed states at other
 dimensions the entanglement of formation is reported as absent and the
 verdict falls back on the PPT criterion and the product residual.

 separable_verdict never claims separability without a certificate in
 hand: a decomposable pure vector, a product factorization within
 tolerance, or an explicit convex mixture of product projectors supplied
 by the caller (quadrature-assembled restriction states are such
 mixtures by construction).
*/
struct EntanglementReport {
    int d1 = 0;
    int d2 = 0;
    double purity = 0.0;
    std::optional<double> entropy;
    std::optional<std::vector<double>> schmidt;
    std::optional<double> eof;
    std::optional<double> concurrence;
    double ppt_min_eigenvalue = 0.0;
    bool ppt = true;
    double product_residual = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    Tolerances tolerances;
};

/// Schmidt coefficients of a unit vector in C^{d1} (x) C^{d2}: the
/// singular values of the d1 x d2 coefficient matrix, nonincreasing,
/// length d1. Requires d1 <= d2 and ||v|| = 1 to 1e-12.
std::vector<double> schmidt(const Eigen::VectorXcd& v, int d1, int d2);

/// -sum lambda_j ln lambda_j over the squared Schmidt coefficients,
/// with 0 ln 0 = 0. Zero exactly for decomposable vectors; at most ln d1.
double entanglement_entropy(const Eigen::VectorXcd& v, int d1, int d2);

struct WoottersResult {
    double concurrence = 0.0; // in [0, 1]
    double eof = 0.0;         // in [0, ln 2], nats
};

/// Wootters closed form at 2x2: lambda_i are the decreasing square roots
/// of the eigenvalues of rho (sigma_y (x) sigma_y) conj(rho)
/// (sigma_y (x) sigma_y); concurrence = max(0, l1 - l2 - l3 - l4) and
/// eof = H((1 + sqrt(1 - C^2))/2) with H the binary entropy in nats.
/// Throws UnsupportedDimensionError unless d1 = d2 = 2.
WoottersResult wootters_eof(const DensityMatrix& rho);

struct PptResult {
    double min_eigenvalue = 0.0;
    bool ppt = true; // false (NPT) certifies entanglement
};

/// Peres-Horodecki test: partial transpose on the second factor; NPT iff
/// the minimum eigenvalue is below -tolerance.
PptResult ppt_check(const DensityMatrix& rho, double tolerance = 1e-10);

/// Full diagnostic report. `mixture_certificate` declares that the
/// caller holds rho as an explicit convex combination of product
/// projectors (e.g. a quadrature-assembled restriction Gram); it
/// upgrades an otherwise inconclusive verdict to separable_certified.
EntanglementReport analyze(const DensityMatrix& rho, const Tolerances& tol = Tolerances{},
                           bool mixture_certificate = false);

std::string report_to_json(const EntanglementReport& report);

} // namespace kqent
