// Ground truth comes first: before anything else leans on the quadrature
// oracle, this suite pins the oracle itself against closed forms it shares no
// code with (iterative factorial products vs. the engine's lgamma route, rule
// exactness plateaus, and the Gram rule for mixed monomials).
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/fock_core.hpp"
#include "focklab/operators.hpp"
#include "focklab/oracle.hpp"
#include "focklab/symbols.hpp"

using namespace focklab;
using oracle::QuadratureRule;
using oracle::SampledSymbol;

namespace {

double rel_gap(Complex a, Complex b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("moment reproduces delta_pq * p!/alpha^p") {
    const FockWeight one{1.0};
    const FockWeight two{2.0};
    CHECK(oracle::moment(0, 0, one) == Complex{1.0, 0.0});
    CHECK(oracle::moment(3, 3, one).real() == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(oracle::moment(2, 2, two).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(oracle::moment(5, 5, two).real() == doctest::Approx(120.0 / 32.0).epsilon(1e-14));
    CHECK(oracle::moment(2, 1, one) == Complex{0.0, 0.0});
    CHECK(oracle::moment(0, 4, two) == Complex{0.0, 0.0});
}

TEST_CASE("basis_coeff_direct agrees with the log-space normalization") {
    for (const double a : {0.5, 1.0, 2.0}) {
        const FockWeight w{a};
        for (const int n : {0, 1, 2, 7, 23, 64}) {
            const double direct = oracle::basis_coeff_direct(n, w);
            const double engine = basis_norm_coeff(n, w);
            CHECK(std::abs(direct - engine) <= 1e-12 * std::max(direct, engine));
        }
    }
}

TEST_CASE("every rule integrates the measure to total mass one") {
    const FockWeight w{1.5};
    const auto unit = [](Complex) { return Complex{1.0, 0.0}; };

    const QuadratureRule gl = QuadratureRule::gauss_laguerre(8, 12);
    CHECK(std::abs(oracle::integrate(unit, gl, w) - Complex{1.0, 0.0}) <= 1e-13);

    const QuadratureRule comp = QuadratureRule::composite(8, {3.0}, 40.0);
    CHECK(std::abs(oracle::integrate(unit, comp, w) - Complex{1.0, 0.0}) <= 1e-12);
}

TEST_CASE("radial monomials |z|^{2k} integrate to k!/alpha^k") {
    const FockWeight w{2.0};
    const QuadratureRule rule = QuadratureRule::gauss_laguerre(4, 9); // exact through u^17
    double expected = 1.0; // k!/alpha^k, updated iteratively
    for (int k = 1; k <= 8; ++k) {
        expected *= k / w.alpha;
        const Complex got = oracle::integrate(
            [&](Complex z) { return Complex{std::pow(std::norm(z), k), 0.0}; }, rule, w);
        CHECK(rel_gap(got, Complex{expected, 0.0}) <= 1e-13);
    }
}

TEST_CASE("angular sampling annihilates unmatched powers") {
    const FockWeight w{1.0};
    const QuadratureRule rule = QuadratureRule::gauss_laguerre(16, 10);
    for (const auto [p, q] : {std::pair{1, 0}, {3, 1}, {0, 2}, {5, 2}}) {
        const Complex got = oracle::integrate(
            [p = p, q = q](Complex z) {
                return std::pow(z, p) * std::pow(std::conj(z), q);
            },
            rule, w);
        CHECK(std::abs(got) <= 1e-12);
    }
}

TEST_CASE("for_max_degree covers exactly what it claims") {
    const QuadratureRule rule = QuadratureRule::for_max_degree(5);
    CHECK(rule.covers(10));
    CHECK_FALSE(rule.covers(11));
    CHECK(rule.polynomial_exact);
}

TEST_CASE("exactness plateau: a doubled rule changes nothing on covered degrees") {
    const FockWeight w{0.5};
    const QuadratureRule rule = QuadratureRule::for_max_degree(6);
    const QuadratureRule fine = rule.doubled();
    MixedVector f(w), g(w);
    f.add(4, 2, Complex{0.7, -0.3});
    f.add(1, 0, Complex{-0.2, 0.1});
    f.add(0, 3, Complex{0.05, 0.4});
    g.add(2, 4, Complex{0.6, 0.25});
    g.add(3, 0, Complex{1.1, 0.0});
    g.add(0, 0, Complex{0.3, -0.9});
    const Complex coarse_val = oracle::quad_inner(f, g, rule);
    const Complex fine_val = oracle::quad_inner(f, g, fine);
    CHECK(rel_gap(coarse_val, fine_val) <= 1e-11);
}

TEST_CASE("quad_inner matches the exact Gram rule on mixed vectors") {
    for (const double a : {0.5, 1.0, 2.0}) {
        const FockWeight w{a};
        MixedVector f(w), g(w);
        f.add(3, 1, Complex{1.0, 0.5});   // z^3 conj(z): order 2
        f.add(2, 0, Complex{-0.4, 0.0});  // z^2: order 2, same orbit
        f.add(0, 2, Complex{0.0, 0.3});
        g.add(2, 0, Complex{0.8, -0.2});
        g.add(4, 2, Complex{0.1, 0.1});
        g.add(1, 3, Complex{0.5, 0.0});
        const QuadratureRule rule = QuadratureRule::for_max_degree(6);
        const Complex numeric = oracle::quad_inner(f, g, rule);
        const Complex exact = f.inner(g);
        CHECK(rel_gap(numeric, exact) <= 1e-10);
    }
}

TEST_CASE("quad_inner includes the non-orthogonal same-orbit cross terms") {
    // <z^3 conj(z), z^2> = (3+0)!/alpha^3 even though the monomials differ.
    const FockWeight w{2.0};
    MixedVector f(w), g(w);
    f.add(3, 1, Complex{1.0, 0.0});
    g.add(2, 0, Complex{1.0, 0.0});
    const Complex got = oracle::quad_inner(f, g, QuadratureRule::for_max_degree(4));
    CHECK(rel_gap(got, Complex{6.0 / 8.0, 0.0}) <= 1e-12);
}

TEST_CASE("quad_inner refuses rules below the required degree") {
    const FockWeight w{1.0};
    MixedVector f(w), g(w);
    f.add(3, 0, Complex{1.0, 0.0});
    g.add(3, 0, Complex{1.0, 0.0});
    CHECK_THROWS_AS((void)oracle::quad_inner(f, g, QuadratureRule::for_max_degree(2)),
                    QuadratureDegreeError);
    CHECK_NOTHROW((void)oracle::quad_inner(f, g, QuadratureRule::for_max_degree(3)));
}

TEST_CASE("composite rule with a breakpoint nails the disk indicator") {
    // integral of 1_{|z| <= R} dlambda_alpha = 1 - e^{-alpha R^2}.
    for (const double a : {1.0, 2.0}) {
        const FockWeight w{a};
        const double radius = 1.5;
        const SampledSymbol disk = SampledSymbol::disk_indicator(radius);
        const double cut = a * radius * radius;
        const QuadratureRule rule = QuadratureRule::composite(4, {cut}, cut + 40.0);
        const Complex got = oracle::integrate(disk.eval, rule, w);
        const double expected = 1.0 - std::exp(-cut);
        CHECK(std::abs(got - Complex{expected, 0.0}) <= 1e-10);
    }
}

TEST_CASE("column_image writes down the defining functions") {
    const FockWeight w{2.0};

    const MixedVector toe = oracle::column_image(OperatorKind::toeplitz, 3, w);
    CHECK(toe.term_count() == 1);
    CHECK(std::abs(toe.coeff(3, 0) - Complex{basis_norm_coeff(3, w), 0.0}) <= 1e-15);

    const MixedVector han = oracle::column_image(OperatorKind::hankel, 3, w);
    CHECK(han.term_count() == 1);
    CHECK(std::abs(han.coeff(0, 4) - Complex{basis_norm_coeff(4, w), 0.0}) <= 1e-15);

    const MixedVector even = oracle::column_image(OperatorKind::htoeplitz, 6, w);
    CHECK(std::abs(even.coeff(3, 0) - Complex{basis_norm_coeff(3, w), 0.0}) <= 1e-15);
    const MixedVector odd = oracle::column_image(OperatorKind::htoeplitz, 7, w);
    CHECK(std::abs(odd.coeff(0, 4) - Complex{basis_norm_coeff(4, w), 0.0}) <= 1e-15);
}

TEST_CASE("quadrature assembly agrees with the closed-form engine") {
    const HarmonicSymbol phi = HarmonicSymbol::parse("z^2+(0.5-0.25i)conj(z)+1");
    for (const double a : {0.5, 2.0}) {
        const FockWeight w{a};
        for (const OperatorKind kind :
             {OperatorKind::toeplitz, OperatorKind::hankel, OperatorKind::htoeplitz}) {
            const int cols = kind == OperatorKind::htoeplitz ? 12 : 6;
            const TruncatedOperator numeric =
                oracle::build_operator_by_quadrature(kind, phi, 6, cols, w);
            const TruncatedOperator exact = build(kind, phi, 6, cols, w);
            for (int m = 0; m < 6; ++m)
                for (int n = 0; n < cols; ++n)
                    CHECK(rel_gap(numeric.at(m, n), exact.at(m, n)) <= 1e-9);
        }
    }
}

TEST_CASE("singular values come back sorted and match known spectra") {
    const FockWeight w{1.0};

    // T_1 is the identity on any truncation: every singular value is 1.
    const TruncatedOperator ident = build(OperatorKind::toeplitz, HarmonicSymbol::parse("1"), 8, 8, w);
    const std::vector<double> ones = oracle::singular_value_decay(ident, 5);
    REQUIRE(ones.size() == 5);
    for (const double s : ones) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));

    // A generic block just needs to come back non-increasing.
    const TruncatedOperator s =
        build(OperatorKind::htoeplitz, HarmonicSymbol::parse("z+conj(z)^2"), 10, 20, w);
    const std::vector<double> sv = oracle::singular_value_decay(s, 8);
    REQUIRE(sv.size() == 8);
    for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] <= sv[i - 1] + 1e-14);
}

} // TEST_SUITE
