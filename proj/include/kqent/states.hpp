#pragma once

#include "kqent/projective.hpp"
#include "kqent/quadrature.hpp"
#include "kqent/submanifold.hpp"

#include <Eigen/Dense>

namespace kqent {

/// Execution policy for the Gram assembly kernels. Serial is the
/// reference implementation: it visits quadrature nodes in the rule's
/// fixed order and is reproducible bit-for-bit; it is the mode used by
/// the acceptance suite. Parallel distributes nodes across OpenMP
/// threads with per-thread accumulators merged in thread order.
enum class Exec { Serial, Parallel };

/// Un-normalized restriction Gram operator P*P on the tensor basis.
/// Hermitian and positive semidefinite by construction (it is a Gram
/// matrix of restricted sections); equivalently the quadrature mixture
/// sum_k w_k mu_k |Theta_{x_k}><Theta_{x_k}| of product coherent
/// projectors over the submanifold nodes.
struct GramOperator {
    Eigen::MatrixXcd matrix; // (d1*d2) x (d1*d2)
    double trace = 0.0;
    int d1 = 0;
    int d2 = 0;
};

/**
 Assemble the restriction Gram operator over a submanifold:

     G_{(ij),(lr)} = int_Lambda  h^(N)( (e_i f_j)(x), (e_l f_r)(x) ) dmu(x)

 in the canonical tensor ordering (i, j) -> i*d2 + j. Point submanifolds
 (zero-dimensional parameter domain) bypass quadrature; the integral is a
 single evaluation and yields the rank-1 coherent projector. The result
 is hermitian-symmetrized to scrub quadrature roundoff.

 Throws DegenerateStateError when the Gram trace vanishes (the
 submanifold lies in the common zero locus) and NumericalError when an
 evaluation is non-finite.
*/
GramOperator restriction_gram(const SectionBasis& basis1, const SectionBasis& basis2,
                              const SubmanifoldSpec& spec, const QuadratureRule& rule,
                              Exec exec = Exec::Serial);

/// Single-factor restriction Gram A_{il} = int_{Lambda_f} h^(N)(e_i, e_l) dmu.
Eigen::MatrixXcd factor_restriction_gram(const SectionBasis& basis, const FactorSpec& factor,
                                         const QuadratureRule& rule, Exec exec = Exec::Serial);

/// Hermitian, positive semidefinite, trace-1 state on a bipartite space
/// with factor dimensions (d1, d2) and basis ordering (i, j) -> i*d2 + j.
/// Validated on construction: hermiticity to 1e-12, trace 1 to 1e-12,
/// eigenvalues >= -1e-10 (values in [-1e-10, 0] are treated as 0 by
/// downstream spectral code; anything lower raises NumericalError).
struct DensityMatrix {
    Eigen::MatrixXcd matrix;
    int d1 = 0;
    int d2 = 0;

    int dim() const { return d1 * d2; }
    double purity() const; // Re tr(rho^2)
};

DensityMatrix make_density_matrix(Eigen::MatrixXcd matrix, int d1, int d2);

/// rho = G / tr(G). Throws DegenerateStateError on vanishing trace.
DensityMatrix rho_from_gram(const GramOperator& gram);

/// Tr_2: (i,l) entry is sum_j rho_{(ij),(lj)}; trace preserving, PSD.
Eigen::MatrixXcd partial_trace_2(const DensityMatrix& rho);
/// Tr_1: (j,r) entry is sum_i rho_{(ij),(ir)}.
Eigen::MatrixXcd partial_trace_1(const DensityMatrix& rho);

/// Kronecker product in the canonical ordering.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Product state from two trace-1 PSD hermitian factors (inputs are
/// validated; violations raise std::invalid_argument).
DensityMatrix tensor_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct ProductFactorization {
    Eigen::MatrixXcd factor1; // Tr_2(rho)
    Eigen::MatrixXcd factor2; // Tr_1(rho)
    double residual = 0.0;    // || rho - factor1 (x) factor2 ||_F
};

/// Frobenius distance of rho from the product of its partial traces;
/// zero exactly when rho is a product state.
ProductFactorization product_factor_residual(const DensityMatrix& rho);

// External interface: fixed-format serialization (17 significant digits,
// stable key order) for machine consumption.
std::string density_matrix_to_json(const DensityMatrix& rho);
std::string density_matrix_to_csv(const DensityMatrix& rho);

} // namespace kqent
