#include "kqent/coherent.hpp"

#include <cmath>
#include <stdexcept>

namespace kqent {

CoherentState coherent_state(const SectionBasis& basis, const Eigen::VectorXcd& p,
                             std::complex<double> phase, int N) {
    if (basis.power != N) {
        throw std::invalid_argument("coherent_state: basis power mismatch");
    }
    if (!p.allFinite()) {
        throw std::invalid_argument("coherent_state: base point must be finite");
    }
    const double mag = std::abs(phase);
    if (std::abs(mag - 1.0) > 1e-8) {
        throw std::invalid_argument("coherent_state: phase must be a unit complex number");
    }
    phase /= mag;

    std::complex<double> phase_pow = 1.0;
    for (int k = 0; k < N; ++k) {
        phase_pow *= phase;
    }
    const double frame = std::sqrt(fs_weight(p, N));

    CoherentState state;
    state.base_point = p;
    state.phase = phase;
    state.power = N;
    state.coeffs = phase_pow * frame * basis.evaluate_normalized(p).conjugate();
    return state;
}

Eigen::VectorXcd product_coherent_state(const CoherentState& state1,
                                        const CoherentState& state2) {
    if (state1.power != state2.power) {
        throw std::invalid_argument("product_coherent_state: power mismatch");
    }
    const Eigen::Index d1 = state1.coeffs.size();
    const Eigen::Index d2 = state2.coeffs.size();
    Eigen::VectorXcd out(d1 * d2);
    for (Eigen::Index i = 0; i < d1; ++i) {
        out.segment(i * d2, d2) = state1.coeffs[i] * state2.coeffs;
    }
    return out;
}

} // namespace kqent
