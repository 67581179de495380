// Truncated operator blocks: closed-form entries, column interleaving, exact
// application as a cross-check on assembly, dilation/flip building blocks,
// block algebra, and the serialization formats.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>

#include <json.hpp>

#include "focklab/errors.hpp"
#include "focklab/fock_core.hpp"
#include "focklab/operators.hpp"
#include "focklab/symbols.hpp"

using namespace focklab;

namespace {

bool same_entries(const TruncatedOperator& a, const TruncatedOperator& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (a.entries[i] != b.entries[i]) return false;
    return true;
}

} // namespace

TEST_SUITE("operators") {

TEST_CASE("Toeplitz entries follow the two-sided closed form") {
    const FockWeight w{2.0};
    const HarmonicSymbol phi = HarmonicSymbol::parse("z^2 + (0.5-0.25i)conj(z) + 3");
    // Lower triangle reads analytic coefficients: <T e_1, e_3> = a_2 sqrt(3!/1!)/alpha.
    CHECK(std::abs(toeplitz_entry(phi, 3, 1, w) -
                   Complex{std::sqrt(6.0) / 2.0, 0.0}) <= 1e-14);
    // Diagonal reads a_0.
    CHECK(std::abs(toeplitz_entry(phi, 5, 5, w) - Complex{3.0, 0.0}) <= 1e-14);
    // Upper triangle reads anti coefficients: <T e_4, e_3> = b_1 sqrt(4!/3!)/sqrt(alpha).
    CHECK(std::abs(toeplitz_entry(phi, 3, 4, w) -
                   Complex{0.5, -0.25} * std::sqrt(4.0 / 2.0)) <= 1e-14);
    // Off-band entries vanish.
    CHECK(toeplitz_entry(phi, 0, 4, w) == Complex{0.0, 0.0});
}

TEST_CASE("Hankel entries carry the anti-diagonal symmetry") {
    const FockWeight w{1.0};
    const HarmonicSymbol ones = HarmonicSymbol::parse("1+z+z^2+z^3+z^4+z^5+z^6+z^7");
    // <H e_2, e_2> = a_5 * 5!/sqrt(2! 3!) = 120/sqrt(12) = 20 sqrt(3) / ... at alpha=1.
    CHECK(std::abs(hankel_entry(ones, 2, 2, w).real() - 120.0 / std::sqrt(12.0)) <= 1e-12);
    // H(m, n) = H(n+1, m-1): both sides read a_{m+n+1} with the same weight.
    for (int m = 1; m < 6; ++m)
        for (int n = 0; n < 6; ++n)
            CHECK(hankel_entry(ones, m, n, w) == hankel_entry(ones, n + 1, m - 1, w));
    // Co-analytic coefficients never enter the Hankel block.
    CHECK(hankel_entry(HarmonicSymbol::parse("conj(z)^3"), 4, 2, w) == Complex{0.0, 0.0});
}

TEST_CASE("H-Toeplitz columns interleave the Toeplitz and Hankel blocks bitwise") {
    const FockWeight w{0.5};
    const HarmonicSymbol phi = HarmonicSymbol::parse("(1+1i)z^3 + 2z - 0.5conj(z)^2");
    for (int m = 0; m < 9; ++m)
        for (int k = 0; k < 5; ++k) {
            CHECK(htoeplitz_entry(phi, m, 2 * k, w) == toeplitz_entry(phi, m, k, w));
            CHECK(htoeplitz_entry(phi, m, 2 * k + 1, w) == hankel_entry(phi, m, k, w));
        }

    const TruncatedOperator s = build(OperatorKind::htoeplitz, phi, 9, 10, w);
    const TruncatedOperator t = build(OperatorKind::toeplitz, phi, 9, 5, w);
    const TruncatedOperator h = build(OperatorKind::hankel, phi, 9, 5, w);
    CHECK(same_entries(extract_even_columns(s), t));
    CHECK(same_entries(extract_odd_columns(s), h));
}

TEST_CASE("serial and parallel assembly agree bit for bit") {
    const HarmonicSymbol phi = HarmonicSymbol::parse("z^4 - 2z + (0.3+0.7i)conj(z)^3");
    const FockWeight w{1.3};
    for (const OperatorKind kind :
         {OperatorKind::toeplitz, OperatorKind::hankel, OperatorKind::htoeplitz}) {
        const TruncatedOperator ser = build(kind, phi, 40, 40, w, Assembly::serial);
        const TruncatedOperator par = build(kind, phi, 40, 40, w, Assembly::parallel);
        CHECK(same_entries(ser, par));
    }
}

TEST_CASE("assembled columns match exact application of the definitions") {
    // build() fills entries from closed forms; apply_*_exact multiplies the
    // symbol and projects. Agreement is a genuine two-path cross-check.
    const HarmonicSymbol phi = HarmonicSymbol::parse("z^2 + (1-1i)conj(z) + 0.5");
    for (const double a : {1.0, 2.0}) {
        const FockWeight w{a};
        const int rows = 16;
        for (const OperatorKind kind :
             {OperatorKind::toeplitz, OperatorKind::hankel, OperatorKind::htoeplitz}) {
            const int cols = kind == OperatorKind::htoeplitz ? 12 : 6;
            const TruncatedOperator op = build(kind, phi, rows, cols, w);
            for (int n = 0; n < cols; ++n) {
                const FockVector e = FockVector::basis(n, w);
                FockVector image(w);
                switch (kind) {
                    case OperatorKind::toeplitz: image = apply_toeplitz_exact(phi, e); break;
                    case OperatorKind::hankel: image = apply_hankel_exact(phi, e); break;
                    default: image = apply_htoeplitz_exact(phi, e); break;
                }
                for (int m = 0; m < rows; ++m)
                    CHECK(std::abs(op.at(m, n) - image.coeff(m)) <=
                          1e-13 * std::max(1.0, std::abs(image.coeff(m))));
            }
        }
    }
}

TEST_CASE("dilation and flip act on basis vectors as advertised") {
    const FockWeight w{2.0};

    // K e_{2n} = e_n: e_4 becomes the analytic monomial bnc(2) z^2.
    const MixedVector even = dilation_apply(FockVector::basis(4, w));
    CHECK(even.term_count() == 1);
    CHECK(even.coeff(2, 0) == Complex{basis_norm_coeff(2, w), 0.0});

    // K e_{2n+1} = conj(e_{n+1}): e_5 becomes bnc(3) conj(z)^3.
    const MixedVector odd = dilation_apply(FockVector::basis(5, w));
    CHECK(odd.term_count() == 1);
    CHECK(odd.coeff(0, 3) == Complex{basis_norm_coeff(3, w), 0.0});

    // J e_n = conj(e_{n+1}).
    const MixedVector flipped = flip_apply(FockVector::basis(2, w));
    CHECK(flipped.term_count() == 1);
    CHECK(flipped.coeff(0, 3) == Complex{basis_norm_coeff(3, w), 0.0});
}

TEST_CASE("K* K is exactly the identity on basis vectors") {
    for (const double a : {0.5, 1.0, 2.0}) {
        const FockWeight w{a};
        for (int n = 0; n <= 24; ++n) {
            const FockVector back = dilation_adjoint_apply(dilation_apply(FockVector::basis(n, w)));
            REQUIRE(back.coeffs().size() == 1);
            CHECK(back.coeff(n) == Complex{1.0, 0.0}); // bitwise, by the division trick
        }
    }
}

TEST_CASE("K* annihilates into the kernel correctly on a mixed monomial") {
    // K*(z conj(z)) = (1/alpha) e_0.
    for (const double a : {1.0, 2.0}) {
        const FockWeight w{a};
        MixedVector v(w);
        v.add(1, 1, Complex{1.0, 0.0});
        const FockVector f = dilation_adjoint_apply(v);
        CHECK(f.coeffs().size() == 1);
        CHECK(std::abs(f.coeff(0) - Complex{1.0 / a, 0.0}) <= 1e-15 / a);
    }
}

TEST_CASE("multiply_symbol distributes over terms") {
    const FockWeight w{1.0};
    MixedVector v(w);
    v.add(1, 0, Complex{2.0, 0.0}); // 2z
    const MixedVector prod = multiply_symbol(HarmonicSymbol::parse("z^2+conj(z)"), v);
    CHECK(prod.term_count() == 2);
    CHECK(prod.coeff(3, 0) == Complex{2.0, 0.0});
    CHECK(prod.coeff(1, 1) == Complex{2.0, 0.0});
}

TEST_CASE("adjoint transposes and conjugates; Toeplitz adjoints stay Toeplitz") {
    const FockWeight w{1.0};
    const HarmonicSymbol phi = HarmonicSymbol::parse("(1+2i)z^2 + 0.5conj(z)");
    const TruncatedOperator t = build(OperatorKind::toeplitz, phi, 6, 6, w);
    const TruncatedOperator adj = adjoint(t);
    CHECK(adj.kind == OperatorKind::toeplitz);
    for (int m = 0; m < 6; ++m)
        for (int n = 0; n < 6; ++n)
            CHECK(adj.at(m, n) == std::conj(t.at(n, m)));
    CHECK(same_entries(adjoint(adj), t));

    // T_phi^* = T_{conj(phi)} holds entrywise.
    const TruncatedOperator conj_built = build(OperatorKind::toeplitz, phi.conjugate(), 6, 6, w);
    for (int m = 0; m < 6; ++m)
        for (int n = 0; n < 6; ++n)
            CHECK(std::abs(adj.at(m, n) - conj_built.at(m, n)) <= 1e-14);
}

TEST_CASE("compose reproduces the canonical commutation relation on the interior") {
    // [T_conj(z), T_z] = (1/alpha) I away from the truncation edge; the last
    // diagonal entry shows the familiar -(N-1)/alpha boundary artifact.
    const int n = 6;
    for (const double a : {1.0, 2.0}) {
        const FockWeight w{a};
        const TruncatedOperator tz = build(OperatorKind::toeplitz, HarmonicSymbol::parse("z"), n, n, w);
        const TruncatedOperator tzbar =
            build(OperatorKind::toeplitz, HarmonicSymbol::parse("conj(z)"), n, n, w);
        const TruncatedOperator c = commutator(tzbar, tz);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double expected = i != j ? 0.0 : (i < n - 1 ? 1.0 / a : -(n - 1.0) / a);
                CHECK(std::abs(c.at(i, j) - Complex{expected, 0.0}) <= 1e-13 * (1.0 + n / a));
            }
    }
}

TEST_CASE("compose validates shapes and scale_add combines blocks") {
    const FockWeight w{1.0};
    const TruncatedOperator a = build(OperatorKind::toeplitz, HarmonicSymbol::parse("z"), 4, 6, w);
    const TruncatedOperator b = build(OperatorKind::toeplitz, HarmonicSymbol::parse("1"), 6, 3, w);
    const TruncatedOperator ab = compose(a, b);
    CHECK(ab.rows == 4);
    CHECK(ab.cols == 3);
    CHECK_THROWS_AS((void)compose(b, a), InputError);

    const TruncatedOperator two_a = scale_add(Complex{2.0, 0.0}, a, Complex{0.0, 0.0},
                                              build(OperatorKind::toeplitz, HarmonicSymbol::parse("0"), 4, 6, w));
    for (int m = 0; m < 4; ++m)
        for (int nn = 0; nn < 6; ++nn)
            CHECK(two_a.at(m, nn) == 2.0 * a.at(m, nn));
}

TEST_CASE("stable_truncation_size covers the requested corner") {
    CHECK(stable_truncation_size(2, 1, 8) == 2 * (8 + 2 + 1 + 1));
    CHECK(stable_truncation_size(0, 0, 4) == 2 * (4 + 1));
    const HarmonicSymbol phi = HarmonicSymbol::parse("z + conj(z)^2");
    const int n = stable_truncation_size(phi, 6, FockWeight{1.0});
    CHECK(n >= 2 * (6 + 1 + 2 + 1));
    CHECK_NOTHROW((void)stable_truncation_size(phi, 6, FockWeight{1.0}, true));
}

TEST_CASE("column extraction returns the coefficients of one column") {
    const FockWeight w{1.0};
    const TruncatedOperator s =
        build(OperatorKind::htoeplitz, HarmonicSymbol::parse("z+z^2"), 8, 6, w);
    for (int n = 0; n < 6; ++n) {
        const FockVector col = s.column(n);
        for (int m = 0; m < 8; ++m) CHECK(col.coeff(m) == s.at(m, n));
    }
}

TEST_CASE("CSV serialization quotes re,im cells") {
    const FockWeight w{1.0};
    const TruncatedOperator op =
        build(OperatorKind::toeplitz, HarmonicSymbol::parse("(1+0.5i)"), 1, 1, w);
    CHECK(to_csv(op) == "\"1,0.5\"\n");

    const TruncatedOperator two =
        build(OperatorKind::htoeplitz, HarmonicSymbol::parse("conj(z)"), 1, 4, w);
    CHECK(to_csv(two) == "\"0,0\",\"0,0\",\"1,0\",\"0,0\"\n");
}

TEST_CASE("JSON round trip restores the block exactly") {
    const FockWeight w{1.7};
    const TruncatedOperator op =
        build(OperatorKind::htoeplitz, HarmonicSymbol::parse("(0.3-0.9i)z^2 + conj(z)"), 5, 8, w);
    const TruncatedOperator back = operator_from_json(to_json(op));
    CHECK(back.kind == op.kind);
    CHECK(back.alpha == op.alpha);
    CHECK(same_entries(back, op));

    nlohmann::json bad = to_json(op);
    bad.erase("entries");
    CHECK_THROWS_AS((void)operator_from_json(bad), InputError);
    nlohmann::json short_entries = to_json(op);
    short_entries["entries"].erase(0);
    CHECK_THROWS_AS((void)operator_from_json(short_entries), InputError);
}

TEST_CASE("size and kind guards") {
    const FockWeight w{1.0};
    const HarmonicSymbol phi = HarmonicSymbol::parse("z");
    CHECK_THROWS_AS((void)build(OperatorKind::toeplitz, phi, 4097, 2, w), SizeLimitError);
    CHECK_THROWS_AS((void)build(OperatorKind::toeplitz, phi, -1, 2, w), InputError);
    CHECK_THROWS_AS((void)build(OperatorKind::generic, phi, 4, 4, w), InputError);
    CHECK_THROWS_AS((void)kind_from_name("sideways"), InputError);
    CHECK(kind_from_name("htoeplitz") == OperatorKind::htoeplitz);
    CHECK(std::string(kind_name(OperatorKind::hankel)) == "hankel");
}

} // TEST_SUITE
