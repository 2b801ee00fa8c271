#include "kqent/entanglement.hpp"

#include "kqent/errors.hpp"
#include "kqent/jsonio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace kqent {

namespace {

double clip_probability(double lambda, double floor_tol) {
    if (lambda < -floor_tol) {
        throw NumericalError("eigenvalue below the PSD floor");
    }
    return std::clamp(lambda, 0.0, 1.0);
}

double entropy_from_probabilities(const std::vector<double>& lambdas, double floor_tol) {
    double h = 0.0;
    for (double raw : lambdas) {
        const double l = clip_probability(raw, floor_tol);
        if (l > 0.0) {
            h -= l * std::log(l);
        }
    }
    return h;
}

double binary_entropy_nats(double x) {
    x = std::clamp(x, 0.0, 1.0);
    double h = 0.0;
    if (x > 0.0) {
        h -= x * std::log(x);
    }
    if (x < 1.0) {
        h -= (1.0 - x) * std::log(1.0 - x);
    }
    return h;
}

Eigen::MatrixXcd reshape_to_matrix(const Eigen::VectorXcd& v, int d1, int d2) {
    Eigen::MatrixXcd c(d1, d2);
    for (int i = 0; i < d1; ++i) {
        c.row(i) = v.segment(static_cast<Eigen::Index>(i) * d2, d2).transpose();
    }
    return c;
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::SeparableCertified: return "separable_certified";
    case Verdict::EntangledCertified: return "entangled_certified";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::vector<double> schmidt(const Eigen::VectorXcd& v, int d1, int d2) {
    if (d1 < 1 || d2 < 1 || d1 > d2) {
        throw std::invalid_argument("schmidt: need 1 <= d1 <= d2");
    }
    if (v.size() != static_cast<Eigen::Index>(d1) * d2) {
        throw std::invalid_argument("schmidt: vector length must be d1*d2");
    }
    if (std::abs(v.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("schmidt: input vector is not a unit vector");
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshape_to_matrix(v, d1, d2));
    const Eigen::VectorXd sv = svd.singularValues(); // nonincreasing
    return {sv.data(), sv.data() + sv.size()};
}

double entanglement_entropy(const Eigen::VectorXcd& v, int d1, int d2) {
    const std::vector<double> alphas = schmidt(v, d1, d2);
    std::vector<double> lambdas(alphas.size());
    std::transform(alphas.begin(), alphas.end(), lambdas.begin(),
                   [](double a) { return a * a; });
    return entropy_from_probabilities(lambdas, 1e-10);
}

WoottersResult wootters_eof(const DensityMatrix& rho) {
    if (rho.d1 != 2 || rho.d2 != 2) {
        throw UnsupportedDimensionError("wootters_eof: defined for d1 = d2 = 2 only");
    }
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    const Eigen::Matrix4cd m = rho.matrix;
    const Eigen::Matrix4cd r = m * yy * m.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(r, /*computeEigenvectors=*/false);
    std::array<double, 4> lambdas{};
    for (int i = 0; i < 4; ++i) {
        // spectrum of rho rho~ is real nonnegative; scrub roundoff
        lambdas[static_cast<std::size_t>(i)] =
            std::sqrt(std::max(0.0, solver.eigenvalues()[i].real()));
    }
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());

    WoottersResult out;
    out.concurrence =
        std::clamp(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3], 0.0, 1.0);
    if (out.concurrence > 0.0) {
        const double c2 = out.concurrence * out.concurrence;
        out.eof = binary_entropy_nats(0.5 * (1.0 + std::sqrt(1.0 - c2)));
    }
    return out;
}

PptResult ppt_check(const DensityMatrix& rho, double tolerance) {
    const int d1 = rho.d1;
    const int d2 = rho.d2;
    Eigen::MatrixXcd gamma(rho.dim(), rho.dim());
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d2; ++j) {
            for (int l = 0; l < d1; ++l) {
                for (int r = 0; r < d2; ++r) {
                    gamma(i * d2 + j, l * d2 + r) = rho.matrix(i * d2 + r, l * d2 + j);
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gamma, Eigen::EigenvaluesOnly);
    PptResult out;
    out.min_eigenvalue = solver.eigenvalues().minCoeff();
    out.ppt = out.min_eigenvalue >= -tolerance;
    return out;
}

EntanglementReport analyze(const DensityMatrix& rho, const Tolerances& tol,
                           bool mixture_certificate) {
    EntanglementReport report;
    report.d1 = rho.d1;
    report.d2 = rho.d2;
    report.tolerances = tol;
    report.purity = rho.purity();

    const PptResult ppt = ppt_check(rho, tol.verdict);
    report.ppt_min_eigenvalue = ppt.min_eigenvalue;
    report.ppt = ppt.ppt;

    const ProductFactorization pf = product_factor_residual(rho);
    report.product_residual = pf.residual;

    if (rho.d1 == 2 && rho.d2 == 2) {
        const WoottersResult w = wootters_eof(rho);
        report.concurrence = w.concurrence;
        report.eof = w.eof;
    }

    if (std::abs(report.purity - 1.0) <= tol.purity) {
        // pure state: diagnostics come from the dominant eigenvector
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix);
        Eigen::VectorXcd v = solver.eigenvectors().col(rho.dim() - 1);
        v /= v.norm();

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshape_to_matrix(v, rho.d1, rho.d2));
        const Eigen::VectorXd sv = svd.singularValues();
        std::vector<double> alphas(sv.data(), sv.data() + sv.size());
        std::vector<double> lambdas(alphas.size());
        std::transform(alphas.begin(), alphas.end(), lambdas.begin(),
                       [](double a) { return a * a; });

        report.schmidt = alphas;
        report.entropy = entropy_from_probabilities(lambdas, tol.psd);
        report.eof = *report.entropy; // for pure states the two notions agree
        report.verdict = (*report.entropy <= tol.verdict) ? Verdict::SeparableCertified
                                                          : Verdict::EntangledCertified;
        return report;
    }

    // mixed state
    if (report.product_residual <= tol.product_residual) {
        report.verdict = Verdict::SeparableCertified;
    } else if (!report.ppt) {
        report.verdict = Verdict::EntangledCertified;
    } else if (report.eof && *report.eof > tol.verdict) {
        report.verdict = Verdict::EntangledCertified;
    } else if (mixture_certificate) {
        report.verdict = Verdict::SeparableCertified;
    } else {
        report.verdict = Verdict::Inconclusive;
    }
    return report;
}

std::string report_to_json(const EntanglementReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("d1");
    w.value(report.d1);
    w.key("d2");
    w.value(report.d2);
    w.key("purity");
    w.value(report.purity);
    w.key("entropy");
    if (report.entropy) {
        w.value(*report.entropy);
    } else {
        w.null_value();
    }
    w.key("schmidt");
    if (report.schmidt) {
        w.begin_array();
        for (double a : *report.schmidt) {
            w.value(a);
        }
        w.end_array();
    } else {
        w.null_value();
    }
    w.key("eof");
    if (report.eof) {
        w.value(*report.eof);
    } else {
        w.null_value();
    }
    w.key("concurrence");
    if (report.concurrence) {
        w.value(*report.concurrence);
    } else {
        w.null_value();
    }
    w.key("ppt_min_eigenvalue");
    w.value(report.ppt_min_eigenvalue);
    w.key("ppt");
    w.value(report.ppt);
    w.key("product_residual");
    w.value(report.product_residual);
    w.key("separable_verdict");
    w.value(to_string(report.verdict));
    w.key("tolerances");
    w.begin_object();
    w.key("hermiticity");
    w.value(report.tolerances.hermiticity);
    w.key("trace_one");
    w.value(report.tolerances.trace_one);
    w.key("psd");
    w.value(report.tolerances.psd);
    w.key("purity");
    w.value(report.tolerances.purity);
    w.key("verdict");
    w.value(report.tolerances.verdict);
    w.key("product_residual");
    w.value(report.tolerances.product_residual);
    w.end_object();
    w.end_object();
    return w.str();
}

} // namespace kqent
