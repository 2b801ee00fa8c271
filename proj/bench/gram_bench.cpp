// Timing comparison of the Gram assembly kernels: the serial reference
// implementation against the OpenMP node-parallel one, on a torus
// submanifold where the node count dominates the cost.

#include "kqent/projective.hpp"
#include "kqent/quadrature.hpp"
#include "kqent/states.hpp"
#include "kqent/submanifold.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double time_assembly(const kqent::SectionBasis& basis1, const kqent::SectionBasis& basis2,
                     const kqent::SubmanifoldSpec& spec, const kqent::QuadratureRule& rule,
                     kqent::Exec exec, int repeats, kqent::GramOperator& out) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        out = kqent::restriction_gram(basis1, basis2, spec, rule, exec);
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    int n_min = 2;
    int n_max = 6;
    int nodes = 192;
    int repeats = 3;

    CLI::App app{"gram assembly benchmark: serial reference vs OpenMP kernel"};
    app.add_option("--n-min", n_min, "smallest bundle power");
    app.add_option("--n-max", n_max, "largest bundle power");
    app.add_option("--nodes", nodes, "angular nodes per circle");
    app.add_option("--repeats", repeats, "timing repeats (best of)");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP; both columns run serially)\n");
#endif
    std::printf("torus r1=1.1 r2=0.8, %d x %d nodes, best of %d\n\n", nodes, nodes, repeats);
    std::printf("%4s %6s %12s %12s %9s %12s\n", "N", "dim", "serial [s]", "parallel [s]",
                "speedup", "max |diff|");

    const kqent::SubmanifoldSpec spec = kqent::make_torus_spec(1.1, 0.8);
    const kqent::QuadratureRule rule = kqent::build_rule(spec.parameter_domain(), nodes);

    for (int power = n_min; power <= n_max; ++power) {
        const kqent::SectionBasis basis1 = kqent::make_section_basis(1, power);
        const kqent::SectionBasis basis2 = kqent::make_section_basis(1, power);

        kqent::GramOperator serial, parallel;
        const double t_serial =
            time_assembly(basis1, basis2, spec, rule, kqent::Exec::Serial, repeats, serial);
        const double t_parallel = time_assembly(basis1, basis2, spec, rule,
                                                kqent::Exec::Parallel, repeats, parallel);
        const double diff = (serial.matrix - parallel.matrix).cwiseAbs().maxCoeff();

        std::printf("%4d %6d %12.4f %12.4f %8.2fx %12.3e\n", power,
                    basis1.size() * basis2.size(), t_serial, t_parallel,
                    t_serial / t_parallel, diff);
    }
    return 0;
}
