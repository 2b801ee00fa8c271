#include "kqent/states.hpp"

#include "kqent/errors.hpp"
#include "kqent/jsonio.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kqent {

namespace {

// Shared kernel: G = sum_k c_k conj(u_k) u_k^T over quadrature nodes,
// where u_k is the weighted restricted-basis vector at node k and
// c_k = quadrature weight * induced density. The evaluator returns u and
// the node coefficient.
template <typename Evaluator>
Eigen::MatrixXcd assemble_gram(Eigen::Index dim, const QuadratureRule& rule,
                               const Evaluator& eval, Exec exec) {
    const std::size_t count = rule.node_count();

    auto accumulate_range = [&](std::size_t begin, std::size_t end, Eigen::MatrixXcd& g) {
        std::vector<double> params(rule.dims());
        Eigen::VectorXcd u(dim);
        for (std::size_t k = begin; k < end; ++k) {
            rule.node_at(k, params);
            double c = rule.weight_at(k);
            eval(params, u, c);
            if (!u.allFinite() || !std::isfinite(c)) {
                std::ostringstream msg;
                msg << "gram assembly: non-finite evaluation at node " << k;
                throw NumericalError(msg.str());
            }
            g.noalias() += c * (u.conjugate() * u.transpose());
        }
    };

#ifdef _OPENMP
    if (exec == Exec::Parallel) {
        const int max_threads = omp_get_max_threads();
        std::vector<Eigen::MatrixXcd> partial(
            static_cast<std::size_t>(max_threads), Eigen::MatrixXcd::Zero(dim, dim));
        std::exception_ptr failure;
#pragma omp parallel
        {
            const int tid = omp_get_thread_num();
            const int nthreads = omp_get_num_threads();
            const std::size_t chunk = (count + nthreads - 1) / nthreads;
            const std::size_t begin = std::min(count, chunk * static_cast<std::size_t>(tid));
            const std::size_t end = std::min(count, begin + chunk);
            try {
                accumulate_range(begin, end, partial[static_cast<std::size_t>(tid)]);
            } catch (...) {
#pragma omp critical
                {
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto& p : partial) { // merged in thread order
            g += p;
        }
        return g;
    }
#else
    (void)exec;
#endif

    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    accumulate_range(0, count, g);
    return g;
}

void check_rule_matches(const SubmanifoldSpec& spec, const QuadratureRule& rule) {
    if (static_cast<int>(rule.dims()) != spec.param_dims()) {
        throw std::invalid_argument(
            "restriction_gram: quadrature rule dimension does not match the submanifold");
    }
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void validate_factor_state(const Eigen::MatrixXcd& m, const char* name) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw std::invalid_argument(std::string(name) + ": factor must be square");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument(std::string(name) + ": factor is not hermitian");
    }
    if (std::abs(m.trace().real() - 1.0) > 1e-12 || std::abs(m.trace().imag()) > 1e-12) {
        throw std::invalid_argument(std::string(name) + ": factor trace is not 1");
    }
    if (min_eigenvalue(m) < -1e-10) {
        throw std::invalid_argument(std::string(name) + ": factor is not positive semidefinite");
    }
}

} // namespace

GramOperator restriction_gram(const SectionBasis& basis1, const SectionBasis& basis2,
                              const SubmanifoldSpec& spec, const QuadratureRule& rule,
                              Exec exec) {
    if (basis1.power != basis2.power) {
        throw std::invalid_argument("restriction_gram: bases must share the power N");
    }
    if (basis1.model.n != spec.n1 || basis2.model.n != spec.n2) {
        throw std::invalid_argument("restriction_gram: basis/submanifold dimension mismatch");
    }
    const int N = basis1.power;
    const Eigen::Index d1 = basis1.size();
    const Eigen::Index d2 = basis2.size();
    const Eigen::Index dim = d1 * d2;

    auto joint_vector = [&](const SubmanifoldSpec::Eval& ev, Eigen::VectorXcd& u) {
        const double frame =
            std::sqrt(fs_weight(ev.z1, N)) * std::sqrt(fs_weight(ev.z2, N));
        const Eigen::VectorXcd v1 = basis1.evaluate_normalized(ev.z1);
        const Eigen::VectorXcd v2 = basis2.evaluate_normalized(ev.z2);
        for (Eigen::Index i = 0; i < d1; ++i) {
            u.segment(i * d2, d2) = (frame * v1[i]) * v2;
        }
    };

    Eigen::MatrixXcd g;
    if (spec.param_dims() == 0) {
        // point submanifold: single evaluation, rank-1 coherent projector
        const SubmanifoldSpec::Eval ev = spec.evaluate({});
        Eigen::VectorXcd u(dim);
        joint_vector(ev, u);
        if (!u.allFinite()) {
            throw NumericalError("restriction_gram: non-finite evaluation at the point");
        }
        g = u.conjugate() * u.transpose();
    } else {
        check_rule_matches(spec, rule);
        // the global measure scale is applied once to the assembled Gram,
        // so trace normalization cancels it exactly
        SubmanifoldSpec unscaled = spec;
        unscaled.measure_scale = 1.0;
        g = assemble_gram(
            dim, rule,
            [&](std::span<const double> params, Eigen::VectorXcd& u, double& c) {
                const SubmanifoldSpec::Eval ev = unscaled.evaluate(params);
                c *= induced_density(unscaled, params);
                joint_vector(ev, u);
            },
            exec);
        g *= spec.measure_scale;
    }

    g = 0.5 * (g + g.adjoint()).eval();
    const double trace = g.trace().real();
    if (!std::isfinite(trace)) {
        throw NumericalError("restriction_gram: non-finite trace");
    }
    if (!(trace > 1e-300)) {
        throw DegenerateStateError(
            "restriction_gram: all-zero Gram (submanifold lies in the common zero locus)");
    }
    return GramOperator{std::move(g), trace, static_cast<int>(d1), static_cast<int>(d2)};
}

Eigen::MatrixXcd factor_restriction_gram(const SectionBasis& basis, const FactorSpec& factor,
                                         const QuadratureRule& rule, Exec exec) {
    const int N = basis.power;
    const Eigen::Index d = basis.size();
    const int n = basis.model.n;

    if (factor_param_dims(factor) == 0) {
        const FactorEval ev = eval_factor(factor, n, {});
        const Eigen::VectorXcd u =
            std::sqrt(fs_weight(ev.z, N)) * basis.evaluate_normalized(ev.z);
        Eigen::MatrixXcd g = u.conjugate() * u.transpose();
        return 0.5 * (g + g.adjoint()).eval();
    }

    if (static_cast<int>(rule.dims()) != factor_param_dims(factor)) {
        throw std::invalid_argument(
            "factor_restriction_gram: quadrature rule dimension mismatch");
    }
    Eigen::MatrixXcd g = assemble_gram(
        d, rule,
        [&](std::span<const double> params, Eigen::VectorXcd& u, double& c) {
            const FactorEval ev = eval_factor(factor, n, params);
            c *= factor_induced_density(factor, n, params);
            u = std::sqrt(fs_weight(ev.z, N)) * basis.evaluate_normalized(ev.z);
        },
        exec);
    return 0.5 * (g + g.adjoint()).eval();
}

double DensityMatrix::purity() const {
    return (matrix * matrix).trace().real();
}

DensityMatrix make_density_matrix(Eigen::MatrixXcd matrix, int d1, int d2) {
    if (d1 < 1 || d2 < 1) {
        throw std::invalid_argument("DensityMatrix: factor dimensions must be >= 1");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(d1) * d2;
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw std::invalid_argument("DensityMatrix: matrix size does not match (d1, d2)");
    }
    if (!matrix.allFinite()) {
        throw NumericalError("DensityMatrix: non-finite entries");
    }
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("DensityMatrix: not hermitian to 1e-12");
    }
    const std::complex<double> tr = matrix.trace();
    if (std::abs(tr - 1.0) > 1e-12) {
        throw std::invalid_argument("DensityMatrix: trace is not 1 to 1e-12");
    }
    if (min_eigenvalue(matrix) < -1e-10) {
        throw NumericalError("DensityMatrix: eigenvalue below -1e-10");
    }
    return DensityMatrix{std::move(matrix), d1, d2};
}

DensityMatrix rho_from_gram(const GramOperator& gram) {
    if (!(gram.trace > 1e-300)) {
        throw DegenerateStateError("rho_from_gram: Gram trace vanishes");
    }
    return make_density_matrix(gram.matrix / gram.trace, gram.d1, gram.d2);
}

Eigen::MatrixXcd partial_trace_2(const DensityMatrix& rho) {
    const int d1 = rho.d1;
    const int d2 = rho.d2;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d1, d1);
    for (int i = 0; i < d1; ++i) {
        for (int l = 0; l < d1; ++l) {
            std::complex<double> s = 0.0;
            for (int j = 0; j < d2; ++j) {
                s += rho.matrix(i * d2 + j, l * d2 + j);
            }
            out(i, l) = s;
        }
    }
    return out;
}

Eigen::MatrixXcd partial_trace_1(const DensityMatrix& rho) {
    const int d1 = rho.d1;
    const int d2 = rho.d2;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d2, d2);
    for (int j = 0; j < d2; ++j) {
        for (int r = 0; r < d2; ++r) {
            std::complex<double> s = 0.0;
            for (int i = 0; i < d1; ++i) {
                s += rho.matrix(i * d2 + j, i * d2 + r);
            }
            out(j, r) = s;
        }
    }
    return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix tensor_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    validate_factor_state(a, "tensor_product");
    validate_factor_state(b, "tensor_product");
    return make_density_matrix(kron(a, b), static_cast<int>(a.rows()),
                               static_cast<int>(b.rows()));
}

ProductFactorization product_factor_residual(const DensityMatrix& rho) {
    ProductFactorization out;
    out.factor1 = partial_trace_2(rho);
    out.factor2 = partial_trace_1(rho);
    out.residual = (rho.matrix - kron(out.factor1, out.factor2)).norm();
    return out;
}

std::string density_matrix_to_json(const DensityMatrix& rho) {
    JsonWriter w;
    w.begin_object();
    w.key("dims");
    w.begin_array();
    w.value(rho.d1);
    w.value(rho.d2);
    w.end_array();
    w.key("entries"); // row-major [re, im] pairs
    w.begin_array();
    for (Eigen::Index i = 0; i < rho.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.matrix.cols(); ++j) {
            w.begin_array();
            w.value(rho.matrix(i, j).real());
            w.value(rho.matrix(i, j).imag());
            w.end_array();
        }
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string density_matrix_to_csv(const DensityMatrix& rho) {
    std::string out = "row,col,re,im\n";
    for (Eigen::Index i = 0; i < rho.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.matrix.cols(); ++j) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(j);
            out += ',';
            out += format_double(rho.matrix(i, j).real());
            out += ',';
            out += format_double(rho.matrix(i, j).imag());
            out += '\n';
        }
    }
    return out;
}

} // namespace kqent
