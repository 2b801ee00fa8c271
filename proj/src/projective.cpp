#include "kqent/projective.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kqent {

namespace {

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

void append_indices(int n, int budget, std::vector<int>& prefix,
                    std::vector<std::vector<int>>& out) {
    if (static_cast<int>(prefix.size()) == n) {
        out.push_back(prefix);
        return;
    }
    for (int a = 0; a <= budget; ++a) {
        prefix.push_back(a);
        append_indices(n, budget - a, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

ManifoldModel::ManifoldModel(int dim) : n(dim) {
    if (dim < 1) {
        throw std::domain_error("ManifoldModel: complex dimension must be >= 1");
    }
}

long long dim_sections(int n, int N) {
    if (n < 1) {
        throw std::domain_error("dim_sections: n must be >= 1");
    }
    if (N < 0) {
        throw std::domain_error("dim_sections: N must be >= 0");
    }
    // binomial(N+n, n), exact in integer arithmetic
    long long result = 1;
    for (int k = 1; k <= n; ++k) {
        result = result * (N + k) / k; // divisible at each step
    }
    return result;
}

double fs_weight(const Eigen::VectorXcd& z, int N) {
    const double w1 = 1.0 / (1.0 + z.squaredNorm());
    return ipow(w1, N);
}

Eigen::MatrixXcd fs_metric(const Eigen::VectorXcd& z) {
    const int n = static_cast<int>(z.size());
    const double s = 1.0 + z.squaredNorm();
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(n, n) / s;
    g.noalias() -= z.conjugate() * z.transpose() / (s * s);
    return g;
}

double fs_tangent_norm2(const Eigen::VectorXcd& z, const Eigen::VectorXcd& v) {
    const Eigen::MatrixXcd g = fs_metric(z);
    const std::complex<double> q = v.transpose() * g * v.conjugate();
    return 2.0 * q.real();
}

double monomial_norm(int n, int N, std::span<const int> exponents) {
    if (n < 1 || N < 0) {
        throw std::domain_error("monomial_norm: need n >= 1, N >= 0");
    }
    if (static_cast<int>(exponents.size()) != n) {
        throw std::invalid_argument("monomial_norm: exponent count must equal n");
    }
    int total = 0;
    double fact = 1.0; // a_1! ... a_n!
    for (int a : exponents) {
        if (a < 0) {
            throw std::domain_error("monomial_norm: exponents must be >= 0");
        }
        total += a;
        for (int k = 2; k <= a; ++k) {
            fact *= k;
        }
    }
    if (total > N) {
        throw std::domain_error("monomial_norm: |a| > N");
    }
    // (N - |a|)! / (N + n)! = 1 / prod_{k=N-|a|+1}^{N+n} k
    double denom = 1.0;
    for (int k = N - total + 1; k <= N + n; ++k) {
        denom *= k;
    }
    const double pi_n = ipow(std::numbers::pi, n);
    return std::sqrt(pi_n * fact / denom);
}

SectionBasis make_section_basis(int n, int N) {
    ManifoldModel model(n);
    if (N < 1) {
        throw std::domain_error("make_section_basis: N must be >= 1");
    }
    SectionBasis basis{model, N, {}, {}};
    std::vector<int> prefix;
    append_indices(n, N, prefix, basis.multi_indices);
    basis.norms.resize(static_cast<Eigen::Index>(basis.multi_indices.size()));
    for (std::size_t k = 0; k < basis.multi_indices.size(); ++k) {
        basis.norms[static_cast<Eigen::Index>(k)] =
            monomial_norm(n, N, basis.multi_indices[k]);
    }
    return basis;
}

Eigen::VectorXcd SectionBasis::evaluate_normalized(const Eigen::VectorXcd& z) const {
    const int n = model.n;
    if (static_cast<int>(z.size()) != n) {
        throw std::invalid_argument("SectionBasis: point dimension mismatch");
    }
    // per-coordinate power table up to N
    Eigen::MatrixXcd pows(n, power + 1);
    for (int i = 0; i < n; ++i) {
        pows(i, 0) = 1.0;
        for (int e = 1; e <= power; ++e) {
            pows(i, e) = pows(i, e - 1) * z[i];
        }
    }
    Eigen::VectorXcd out(size());
    for (int k = 0; k < size(); ++k) {
        std::complex<double> v = 1.0;
        const auto& a = multi_indices[static_cast<std::size_t>(k)];
        for (int i = 0; i < n; ++i) {
            v *= pows(i, a[static_cast<std::size_t>(i)]);
        }
        out[k] = v / norms[k];
    }
    return out;
}

std::complex<double> evaluate_section(const SectionBasis& basis,
                                      const Eigen::VectorXcd& coeffs,
                                      const Eigen::VectorXcd& point) {
    if (coeffs.size() != basis.size()) {
        throw std::invalid_argument("evaluate_section: coefficient length mismatch");
    }
    const Eigen::VectorXcd vals = basis.evaluate_normalized(point);
    return (vals.array() * coeffs.array()).sum();
}

} // namespace kqent
