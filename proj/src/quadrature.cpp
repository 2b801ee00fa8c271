#include "kqent/quadrature.hpp"

#include "kqent/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kqent {

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(m), 0.0);
    weights.assign(static_cast<std::size_t>(m), 0.0);
    const int half = (m + 1) / 2;
    for (int k = 0; k < half; ++k) {
        // Newton iteration on P_m from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (k + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= m; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(k)] = -x;
        nodes[static_cast<std::size_t>(m - 1 - k)] = x;
        weights[static_cast<std::size_t>(k)] = w;
        weights[static_cast<std::size_t>(m - 1 - k)] = w;
    }
}

std::size_t QuadratureRule::node_count() const {
    std::size_t count = 1;
    for (const auto& axis : axis_nodes) {
        count *= axis.size();
    }
    return count;
}

void QuadratureRule::node_at(std::size_t k, std::span<double> out) const {
    // row-major decode, last axis fastest
    for (std::size_t d = dims(); d-- > 0;) {
        const std::size_t m = axis_nodes[d].size();
        out[d] = axis_nodes[d][k % m];
        k /= m;
    }
}

double QuadratureRule::weight_at(std::size_t k) const {
    double w = 1.0;
    for (std::size_t d = dims(); d-- > 0;) {
        const std::size_t m = axis_nodes[d].size();
        w *= axis_weights[d][k % m];
        k /= m;
    }
    return w;
}

QuadratureRule build_rule(const Domain& domain, int nodes_per_dim) {
    const std::vector<int> counts(domain.size(), nodes_per_dim);
    return build_rule(domain, counts);
}

QuadratureRule build_rule(const Domain& domain, std::span<const int> nodes_per_dim) {
    if (nodes_per_dim.size() != domain.size()) {
        throw std::invalid_argument("build_rule: one node count per axis required");
    }
    QuadratureRule rule;
    rule.domain = domain;
    rule.axis_nodes.resize(domain.size());
    rule.axis_weights.resize(domain.size());
    for (std::size_t d = 0; d < domain.size(); ++d) {
        const Domain1D& ax = domain[d];
        const int m = nodes_per_dim[d];
        if (m < 2) {
            throw std::invalid_argument("build_rule: need >= 2 nodes per axis");
        }
        if (!(ax.b > ax.a) || !std::isfinite(ax.a) || !std::isfinite(ax.b)) {
            throw std::invalid_argument("build_rule: unsupported domain descriptor");
        }
        auto& nodes = rule.axis_nodes[d];
        auto& weights = rule.axis_weights[d];
        switch (ax.kind) {
        case DomainKind::Periodic: {
            const double h = (ax.b - ax.a) / m;
            nodes.resize(static_cast<std::size_t>(m));
            weights.assign(static_cast<std::size_t>(m), h);
            for (int k = 0; k < m; ++k) {
                nodes[static_cast<std::size_t>(k)] = ax.a + h * k;
            }
            break;
        }
        case DomainKind::Interval: {
            gauss_legendre(m, nodes, weights);
            const double mid = 0.5 * (ax.a + ax.b);
            const double scale = 0.5 * (ax.b - ax.a);
            for (int k = 0; k < m; ++k) {
                nodes[static_cast<std::size_t>(k)] = mid + scale * nodes[static_cast<std::size_t>(k)];
                weights[static_cast<std::size_t>(k)] *= scale;
            }
            break;
        }
        }
    }
    return rule;
}

std::complex<double> integrate(
    const QuadratureRule& rule,
    const std::function<std::complex<double>(std::span<const double>)>& f) {
    std::vector<double> params(rule.dims());
    std::complex<double> sum = 0.0;
    const std::size_t count = rule.node_count();
    for (std::size_t k = 0; k < count; ++k) {
        rule.node_at(k, params);
        const std::complex<double> v = f(params);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "integrate: non-finite integrand at node " << k << " (";
            for (std::size_t d = 0; d < params.size(); ++d) {
                msg << (d ? ", " : "") << params[d];
            }
            msg << ")";
            throw NumericalError(msg.str());
        }
        sum += rule.weight_at(k) * v;
    }
    return sum;
}

} // namespace kqent
