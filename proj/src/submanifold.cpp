#include "kqent/submanifold.hpp"

#include "kqent/errors.hpp"
#include "kqent/projective.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kqent {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct ParamDimsVisitor {
    int operator()(const FactorPoint&) const { return 0; }
    int operator()(const FactorCircle&) const { return 1; }
    int operator()(const FactorFull&) const { return 2; }
};

struct DomainVisitor {
    Domain operator()(const FactorPoint&) const { return {}; }
    Domain operator()(const FactorCircle&) const {
        return {{DomainKind::Periodic, 0.0, two_pi}};
    }
    Domain operator()(const FactorFull&) const {
        return {{DomainKind::Interval, 0.0, 1.0},
                {DomainKind::Periodic, 0.0, two_pi}};
    }
};

void validate_factor(const FactorSpec& f, int n, const char* where) {
    if (std::holds_alternative<FactorFull>(f) && n != 1) {
        throw UnsupportedDimensionError(
            std::string(where) + ": full-factor integration is implemented for n = 1 only");
    }
    if (const auto* pt = std::get_if<FactorPoint>(&f)) {
        if (static_cast<int>(pt->p.size()) != n) {
            throw std::invalid_argument(std::string(where) + ": point dimension mismatch");
        }
        if (!pt->p.allFinite()) {
            throw std::invalid_argument(std::string(where) + ": point must be finite");
        }
    }
    if (const auto* c = std::get_if<FactorCircle>(&f)) {
        if (!(c->radius >= 0.0) || !std::isfinite(c->radius)) {
            throw std::invalid_argument(std::string(where) + ": circle radius must be >= 0");
        }
    }
}

// Real Gram matrix of tangent vectors under the Fubini-Study metric:
// G_ab = 2 Re sum_jk g_{j kbar}(z) v_j^(a) conj(v_k^(b)).
Eigen::MatrixXd metric_gram(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& velocity) {
    const Eigen::MatrixXcd g = fs_metric(z);
    const Eigen::MatrixXcd s = velocity.transpose() * g * velocity.conjugate();
    return 2.0 * s.real();
}

} // namespace

int factor_param_dims(const FactorSpec& f) {
    return std::visit(ParamDimsVisitor{}, f);
}

Domain factor_domain(const FactorSpec& f) {
    return std::visit(DomainVisitor{}, f);
}

FactorEval eval_factor(const FactorSpec& f, int n, std::span<const double> params) {
    FactorEval out;
    out.z = Eigen::VectorXcd::Zero(n);
    out.velocity = Eigen::MatrixXcd::Zero(n, factor_param_dims(f));
    if (const auto* pt = std::get_if<FactorPoint>(&f)) {
        out.z = pt->p;
        return out;
    }
    if (const auto* c = std::get_if<FactorCircle>(&f)) {
        const std::complex<double> e = std::polar(1.0, params[0]);
        out.z[0] = c->radius * e;
        out.velocity(0, 0) = std::complex<double>(0.0, 1.0) * c->radius * e;
        return out;
    }
    // FactorFull, n == 1: z = r(t) e^{i theta}, r^2 = t/(1-t)
    const double t = params[0];
    const double theta = params[1];
    const double r = std::sqrt(t / (1.0 - t));
    const std::complex<double> e = std::polar(1.0, theta);
    out.z[0] = r * e;
    const double one_minus = 1.0 - t;
    const double dr_dt = 1.0 / (2.0 * r * one_minus * one_minus);
    out.velocity(0, 0) = dr_dt * e;
    out.velocity(0, 1) = std::complex<double>(0.0, 1.0) * r * e;
    return out;
}

double factor_induced_density(const FactorSpec& f, int n, std::span<const double> params) {
    const int k = factor_param_dims(f);
    if (k == 0) {
        return 1.0;
    }
    const FactorEval ev = eval_factor(f, n, params);
    const Eigen::MatrixXd gram = metric_gram(ev.z, ev.velocity);
    const double det = gram.determinant();
    if (!(det > 0.0) || !std::isfinite(det)) {
        throw DegenerateSubmanifoldError("factor parametrization is singular (det G <= 0)");
    }
    return std::sqrt(det);
}

int SubmanifoldSpec::param_dims() const {
    if (const auto* prod = std::get_if<ProductShape>(&shape)) {
        return factor_param_dims(prod->factor1) + factor_param_dims(prod->factor2);
    }
    return 1; // diagonal circle and graph curve are parametrized by theta
}

Domain SubmanifoldSpec::parameter_domain() const {
    if (const auto* prod = std::get_if<ProductShape>(&shape)) {
        Domain d = factor_domain(prod->factor1);
        const Domain d2 = factor_domain(prod->factor2);
        d.insert(d.end(), d2.begin(), d2.end());
        return d;
    }
    return {{DomainKind::Periodic, 0.0, two_pi}};
}

SubmanifoldSpec::Eval SubmanifoldSpec::evaluate(std::span<const double> params) const {
    Eval out;
    const int k = param_dims();
    if (static_cast<int>(params.size()) != k) {
        throw std::invalid_argument("SubmanifoldSpec: parameter count mismatch");
    }
    if (const auto* prod = std::get_if<ProductShape>(&shape)) {
        const int k1 = factor_param_dims(prod->factor1);
        const FactorEval e1 = eval_factor(prod->factor1, n1, params.subspan(0, k1));
        const FactorEval e2 = eval_factor(prod->factor2, n2, params.subspan(k1));
        out.z1 = e1.z;
        out.z2 = e2.z;
        // factor velocities occupy disjoint parameter columns
        out.v1 = Eigen::MatrixXcd::Zero(n1, k);
        out.v2 = Eigen::MatrixXcd::Zero(n2, k);
        out.v1.leftCols(k1) = e1.velocity;
        out.v2.rightCols(k - k1) = e2.velocity;
        return out;
    }
    const std::complex<double> i_unit(0.0, 1.0);
    if (const auto* diag = std::get_if<DiagonalCircleShape>(&shape)) {
        const std::complex<double> z = diag->radius * std::polar(1.0, params[0]);
        out.z1 = Eigen::VectorXcd::Constant(1, z);
        out.z2 = out.z1;
        out.v1 = Eigen::MatrixXcd::Constant(1, 1, i_unit * z);
        out.v2 = out.v1;
        return out;
    }
    const auto& graph = std::get<GraphCurveShape>(shape);
    const std::complex<double> z = graph.radius * std::polar(1.0, params[0]);
    const std::complex<double> w = graph.radius * std::polar(1.0, graph.winding * params[0]);
    out.z1 = Eigen::VectorXcd::Constant(1, z);
    out.z2 = Eigen::VectorXcd::Constant(1, w);
    out.v1 = Eigen::MatrixXcd::Constant(1, 1, i_unit * z);
    out.v2 = Eigen::MatrixXcd::Constant(1, 1, i_unit * static_cast<double>(graph.winding) * w);
    return out;
}

double induced_density(const SubmanifoldSpec& spec, std::span<const double> params) {
    const int k = spec.param_dims();
    if (k == 0) {
        return spec.measure_scale;
    }
    const SubmanifoldSpec::Eval ev = spec.evaluate(params);
    Eigen::MatrixXd gram = metric_gram(ev.z1, ev.v1);
    gram += metric_gram(ev.z2, ev.v2);
    const double det = gram.determinant();
    if (!(det > 0.0) || !std::isfinite(det)) {
        std::ostringstream msg;
        msg << "submanifold parametrization is singular (det G <= 0) at (";
        for (std::size_t d = 0; d < params.size(); ++d) {
            msg << (d ? ", " : "") << params[d];
        }
        msg << ")";
        throw DegenerateSubmanifoldError(msg.str());
    }
    return spec.measure_scale * std::sqrt(det);
}

SubmanifoldSpec make_point_spec(const Eigen::VectorXcd& p1, const Eigen::VectorXcd& p2) {
    SubmanifoldSpec spec;
    spec.n1 = static_cast<int>(p1.size());
    spec.n2 = static_cast<int>(p2.size());
    spec.shape = ProductShape{FactorPoint{p1}, FactorPoint{p2}};
    spec.kind_label = "point";
    validate_factor(FactorPoint{p1}, spec.n1, "point spec");
    validate_factor(FactorPoint{p2}, spec.n2, "point spec");
    return spec;
}

SubmanifoldSpec make_product_spec(int n1, int n2, FactorSpec f1, FactorSpec f2,
                                  std::string kind_label) {
    if (n1 < 1 || n2 < 1) {
        throw std::invalid_argument("product spec: factor dimensions must be >= 1");
    }
    validate_factor(f1, n1, "product spec");
    validate_factor(f2, n2, "product spec");
    SubmanifoldSpec spec;
    spec.n1 = n1;
    spec.n2 = n2;
    spec.shape = ProductShape{std::move(f1), std::move(f2)};
    spec.kind_label = std::move(kind_label);
    return spec;
}

SubmanifoldSpec make_torus_spec(double r1, double r2) {
    return make_product_spec(1, 1, FactorCircle{r1}, FactorCircle{r2}, "torus");
}

SubmanifoldSpec make_full_product_spec() {
    return make_product_spec(1, 1, FactorFull{}, FactorFull{}, "full_product");
}

SubmanifoldSpec make_diagonal_circle_spec(double radius) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("diagonal circle: radius must be >= 0");
    }
    SubmanifoldSpec spec;
    spec.shape = DiagonalCircleShape{radius};
    spec.kind_label = "diagonal_circle";
    return spec;
}

SubmanifoldSpec make_graph_curve_spec(double radius, int winding) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("graph curve: radius must be >= 0");
    }
    if (winding == 0) {
        throw std::invalid_argument("graph curve: winding must be nonzero");
    }
    SubmanifoldSpec spec;
    spec.shape = GraphCurveShape{radius, winding};
    spec.kind_label = "custom:graph_curve";
    return spec;
}

} // namespace kqent
