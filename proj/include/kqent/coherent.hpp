#pragma once

#include "kqent/projective.hpp"

#include <Eigen/Dense>

#include <complex>

namespace kqent {

/**
 Coherent state Theta_{p,xi} of H^0(P^n, O(N)): the Riesz representative
 of the evaluation functional s -> h^(N)(s(p), xi^N), where xi is the
 normalized chart frame at p times `phase`. In the orthonormal monomial
 basis {e_k}:

     coeffs_k = phase^N * sqrt(fs_weight(p, N)) * conj(e_k(p))

 so <s, Theta> = h^(N)(s(p), xi^N) holds for every section s. The squared
 norm equals the Bergman kernel on the diagonal, (N+n)! / (pi^n N!),
 independent of p.
*/
struct CoherentState {
    Eigen::VectorXcd base_point;
    std::complex<double> phase{1.0, 0.0};
    int power = 1;
    Eigen::VectorXcd coeffs;
};

/// Build the coherent state at chart point p. `phase` must be a unit
/// complex number (validated to 1e-8 and renormalized). Requires
/// basis.power == N.
CoherentState coherent_state(const SectionBasis& basis, const Eigen::VectorXcd& p,
                             std::complex<double> phase, int N);

/// Coefficients of Theta_1 (x) Theta_2 in the tensor basis with the
/// canonical ordering (i, j) -> i*d2 + j. Requires equal powers.
Eigen::VectorXcd product_coherent_state(const CoherentState& state1,
                                        const CoherentState& state2);

} // namespace kqent
