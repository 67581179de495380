// Benchmark: serial reference kernels vs the OpenMP parallel paths.
//
// Every comparison prints the maximum absolute entry difference, which must be
// exactly 0: the parallel paths fill independent slots with the same scalar
// code and reduce in a fixed order, so thread count never changes a bit.

#include <chrono>
#include <cstdio>
#include <functional>

#include "focklab/fock_core.hpp"
#include "focklab/operators.hpp"
#include "focklab/oracle.hpp"
#include "focklab/symbols.hpp"

using namespace focklab;

namespace {

double now_run(const char* label, const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("  %-34s %8.3f s\n", label, s);
    return s;
}

double max_diff(const TruncatedOperator& a, const TruncatedOperator& b) {
    double worst = 0.0;
    for (int m = 0; m < a.rows; ++m)
        for (int n = 0; n < a.cols; ++n)
            worst = std::max(worst, std::abs(a.at(m, n) - b.at(m, n)));
    return worst;
}

} // namespace

int main() {
    const FockWeight w{1.0};
    const HarmonicSymbol phi =
        HarmonicSymbol::parse("z^6+0.5z^4-0.25z^2+z+0.125+2conj(z)+0.75conj(z)^3+conj(z)^6");

    std::printf("operator assembly (htoeplitz)\n");
    for (int n : {256, 512, 1024}) {
        std::printf("block %d x %d\n", n, n);
        TruncatedOperator serial;
        TruncatedOperator parallel;
        const double ts = now_run("serial build", [&] {
            serial = build(OperatorKind::htoeplitz, phi, n, n, w, Assembly::serial);
        });
        const double tp = now_run("parallel build", [&] {
            parallel = build(OperatorKind::htoeplitz, phi, n, n, w, Assembly::parallel);
        });
        std::printf("  speedup %.2fx, max |serial - parallel| = %.17g\n", ts / tp,
                    max_diff(serial, parallel));
    }

    std::printf("composition (256 x 256)\n");
    {
        const TruncatedOperator s =
            build(OperatorKind::htoeplitz, phi, 256, 256, w, Assembly::parallel);
        TruncatedOperator cs;
        TruncatedOperator cp;
        const double ts = now_run("serial compose",
                                  [&] { cs = compose(s, s, Assembly::serial); });
        const double tp = now_run("parallel compose",
                                  [&] { cp = compose(s, s, Assembly::parallel); });
        std::printf("  speedup %.2fx, max |serial - parallel| = %.17g\n", ts / tp,
                    max_diff(cs, cp));
    }

    std::printf("quadrature oracle (13 x 13 block, degree-6 symbol)\n");
    {
        TruncatedOperator q1;
        now_run("build_operator_by_quadrature", [&] {
            q1 = oracle::build_operator_by_quadrature(OperatorKind::htoeplitz, phi, 13, 13, w);
        });
        const TruncatedOperator exact = build(OperatorKind::htoeplitz, phi, 13, 13, w);
        std::printf("  max |exact - quadrature| = %.3g\n", max_diff(exact, q1));
    }
    return 0;
}
