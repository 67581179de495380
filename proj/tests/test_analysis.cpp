// Spectral-side studies: commutators of H-Toeplitz pairs, Hilbert-Schmidt
// partial sums, the compactness defect, and the Berezin transform with its
// two independent evaluation paths.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "focklab/analysis.hpp"
#include "focklab/errors.hpp"
#include "focklab/fock_core.hpp"
#include "focklab/oracle.hpp"
#include "focklab/symbols.hpp"

using namespace focklab;

TEST_SUITE("analysis") {

TEST_CASE("proportional symbols commute, independent ones do not") {
    const FockWeight w{1.0};
    const HarmonicSymbol phi = HarmonicSymbol::parse("0.25z^2 + 0.5conj(z)");
    const HarmonicSymbol lam =
        scale_add(Complex{2.0, 1.0}, phi, Complex{0.0, 0.0}, HarmonicSymbol{});

    const CommutatorReport prop = commutator_report(phi, lam, 6, w);
    CHECK(prop.commuting);
    CHECK(prop.frobenius_norm <= 1e-10);
    REQUIRE(prop.fitted_ratio.has_value());
    CHECK(std::abs(*prop.fitted_ratio - Complex{2.0, 1.0}) <= 1e-12);
    CHECK(prop.dependence_residual <= 1e-12);
    CHECK(prop.block_size >= 2 * 6);

    const CommutatorReport indep =
        commutator_report(phi, HarmonicSymbol::parse("z"), 6, w);
    CHECK_FALSE(indep.commuting);
    CHECK(indep.frobenius_norm > 0.1);
    CHECK(indep.dependence_residual > 1e-3);

    const nlohmann::json j = indep.to_json();
    for (const char* key : {"phi", "psi", "alpha", "corner", "block_size", "frobenius_norm",
                            "max_abs", "tolerance", "verdict", "dependence_residual"})
        CHECK(j.contains(key));
    CHECK(j["verdict"] == "non-commuting");
}

TEST_CASE("random_symbol is deterministic in the seed state") {
    std::uint64_t s1 = 42, s2 = 42, s3 = 7;
    const HarmonicSymbol a = random_symbol(s1, 4);
    const HarmonicSymbol b = random_symbol(s2, 4);
    const HarmonicSymbol c = random_symbol(s3, 4);
    CHECK(a == b);
    CHECK(s1 == s2); // the state advanced identically
    CHECK_FALSE(a == c);
    CHECK_FALSE(a.is_zero());
    CHECK(a.analytic_degree() <= 4);
    CHECK(a.anti_degree() <= 4);

    std::uint64_t s4 = 11;
    const HarmonicSymbol analytic_only = random_symbol(s4, 3, /*include_anti=*/false);
    CHECK(analytic_only.is_analytic());
    std::uint64_t s5 = 11;
    const HarmonicSymbol no_constant = random_symbol(s5, 3, true, /*zero_constant=*/true);
    CHECK(no_constant.analytic_coeff(0) == Complex{0.0, 0.0});
}

TEST_CASE("converse search finds no commuting independent pair") {
    const ConverseSearchResult r = converse_search(6, 0x5eedf00dULL, 5, FockWeight{1.0});
    CHECK(r.pairs_tested == 6);
    CHECK(r.commuting_independent_pairs.empty());
    CHECK(r.min_commutator_norm > 1e-6);
    CHECK(r.to_json().contains("pairs_tested"));
}

TEST_CASE("Hilbert-Schmidt prefix sums for phi = z at alpha = 1") {
    const FockWeight w{1.0};
    const HarmonicSymbol z = HarmonicSymbol::parse("z");
    const std::vector<double> sums = hs_partial_sums(z, 7, w);
    REQUIRE(sums.size() == 7);
    const double expected[] = {1.0, 2.0, 4.0, 4.0, 7.0, 7.0, 11.0};
    for (int i = 0; i < 7; ++i) CHECK(sums[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(hs_partial_sum(z, 7, w) == sums.back());
}

TEST_CASE("Hilbert-Schmidt sums diverge quadratically for phi = z") {
    const FockWeight w{1.0};
    const HarmonicSymbol z = HarmonicSymbol::parse("z");
    double prev = 0.0;
    for (const int n : {8, 16, 32, 64}) {
        const double s = hs_partial_sum(z, n, w);
        CHECK(s > prev);
        CHECK(s >= n * n / 9.0);
        prev = s;
    }
}

TEST_CASE("compactness defect closed forms for phi = z^2") {
    // d_0 = sqrt(2)/alpha, d_1 = 2/alpha, then the two paths agree.
    for (const double a : {1.0, 2.0}) {
        const FockWeight w{a};
        const HarmonicSymbol z2 = HarmonicSymbol::parse("z^2");
        CHECK(compactness_defect(z2, 0, w) ==
              doctest::Approx(std::sqrt(2.0) / a).epsilon(1e-12));
        CHECK(compactness_defect(z2, 1, w) == doctest::Approx(2.0 / a).epsilon(1e-12));
        for (int n = 2; n <= 8; ++n) CHECK(compactness_defect(z2, n, w) <= 1e-12);
    }
}

TEST_CASE("defect sequence summarizes the tail") {
    const FockWeight w{2.0};
    const DefectSequence seq = defect_sequence(HarmonicSymbol::parse("z"), 12, w);
    REQUIRE(seq.values.size() == 13);
    CHECK(seq.values[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(seq.tail_max <= 1e-12);
    CHECK(seq.max_value == doctest::Approx(seq.values[0]).epsilon(1e-12));
    const nlohmann::json j = seq.to_json();
    CHECK(j.contains("values"));
    CHECK(j.contains("coefficient_growth_note"));
}

TEST_CASE("dilated kernel: fixed-order and automatic summation agree") {
    for (const double a : {1.0, 2.0}) {
        const FockWeight w{a};
        // At z = 0 only the n = 0 term of the analytic branch survives.
        CHECK(std::abs(dilated_kernel_auto(Complex{0.0, 0.0}, Complex{0.7, -0.3}, w) -
                       Complex{1.0, 0.0}) <= 1e-15);
        const Complex z{1.0, 1.0};
        const Complex pt{0.7, -0.3};
        CHECK(std::abs(dilated_kernel(z, pt, 80, w) - dilated_kernel_auto(z, pt, w)) <= 1e-12);
    }
}

TEST_CASE("dilated kernel matches the coefficient-level dilation of k_z") {
    // (K k_z)(w) = sum_n c_{2n}(z) e_n(w) + sum_n c_{2n+1}(z) conj(e_{n+1}(w)),
    // assembled here from kernel_coeffs directly.
    for (const double a : {1.0, 2.0}) {
        const FockWeight w{a};
        const Complex z{1.2, -0.4};
        const Complex pt{0.5, 0.9};
        const int terms = kernel_truncation_terms(z, w) + 4;
        const FockVector c = kernel_coeffs(z, terms, w);
        Complex direct{0.0, 0.0};
        for (int n = 0; 2 * n < terms; ++n) {
            direct += c.coeff(2 * n) * basis_norm_coeff(n, w) * std::pow(pt, n);
            direct += c.coeff(2 * n + 1) * basis_norm_coeff(n + 1, w) *
                      std::pow(std::conj(pt), n + 1);
        }
        CHECK(std::abs(direct - dilated_kernel_auto(z, pt, w)) <= 1e-12);
    }
}

TEST_CASE("Berezin transform: value at the origin and linearity") {
    const FockWeight w{1.0};
    const HarmonicSymbol phi = HarmonicSymbol::parse("0.5 + z^2");
    const HarmonicSymbol psi = HarmonicSymbol::parse("conj(z)");
    CHECK(std::abs(berezin(phi, Complex{0.0, 0.0}, w) - Complex{0.5, 0.0}) <= 1e-12);

    const Complex z{0.8, -0.6};
    const HarmonicSymbol combo = scale_add(Complex{1.0, 0.0}, phi, Complex{2.0, 0.0}, psi);
    const Complex lhs = berezin(combo, z, w);
    const Complex rhs = berezin(phi, z, w) + 2.0 * berezin(psi, z, w);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(lhs)));

    // The truncation choice is converged: more terms change nothing.
    const int terms = kernel_truncation_terms(z, w) + 6;
    CHECK(std::abs(berezin(phi, z, terms, w) - berezin(phi, z, terms + 25, w)) <= 1e-11);
}

TEST_CASE("Berezin series agrees with the quadrature path") {
    const FockWeight w{1.0};
    const HarmonicSymbol phi = HarmonicSymbol::parse("z + conj(z)");
    const oracle::SampledSymbol sampled = oracle::SampledSymbol::from_symbol(phi);
    for (const Complex z : {Complex{0.4, 0.0}, Complex{1.0, 0.5}}) {
        const Complex series = berezin(phi, z, w);
        const Complex quad = berezin_by_quadrature(sampled, z, w);
        CHECK(std::abs(series - quad) <= 1e-8 * (1.0 + std::abs(series)));
    }
}

TEST_CASE("Berezin bound check accepts only symbols with a declared sup-norm") {
    const FockWeight w{1.0};
    const std::vector<Complex> zs{Complex{0.0, 0.0}, Complex{1.0, 1.0}, Complex{2.0, 0.0}};

    const BoundCheckReport c =
        berezin_bound_check(HarmonicSymbol::parse("(0.3+0.4i)"), zs, w);
    CHECK(c.within_bound);
    CHECK(c.sup_norm == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.samples.size() == zs.size());

    CHECK_THROWS_AS((void)berezin_bound_check(HarmonicSymbol::parse("z"), zs, w), InputError);

    oracle::SampledSymbol anon;
    anon.name = "undeclared";
    anon.eval = [](Complex) { return Complex{1.0, 0.0}; };
    CHECK_THROWS_AS((void)berezin_bound_check(anon, zs, w), InputError);

    const BoundCheckReport disk =
        berezin_bound_check(oracle::SampledSymbol::disk_indicator(1.5), zs, w);
    CHECK(disk.within_bound);
    CHECK(disk.max_abs_transform <= 1.0 + 1e-10);
}

TEST_CASE("worked example report walks the composition step by step") {
    for (const double a : {1.0, 2.0}) {
        const nlohmann::json j = worked_example_report(FockWeight{a});
        REQUIRE(j.contains("steps"));
        REQUIRE(j["steps"].size() == 4);
        for (const auto& step : j["steps"]) CHECK(step["matches"].get<bool>());
        CHECK(j["steps"][0]["closed_form"]["value"].get<double>() ==
              doctest::Approx(std::sqrt(6.0) / a).epsilon(1e-12));
        CHECK(j["steps"][2]["closed_form"]["value"].get<double>() ==
              doctest::Approx(std::sqrt(2.0 / (a * a * a))).epsilon(1e-12));
        CHECK(j["composition_order_matters"].get<bool>());
        CHECK(j["order_gap"].get<double>() > 0.0);
        CHECK(j["documented_discrepancy"]["step"].get<int>() == 4);
        CHECK(j["documented_discrepancy"]["computed_norm"].get<double>() == 0.0);
        CHECK(j["documented_discrepancy"]["alternate_value"]["abs"].get<double>() ==
              doctest::Approx(std::sqrt(3.0) / a).epsilon(1e-12));
    }
}

TEST_CASE("adjoint-vs-conjugate-symbol report distinguishes the kinds") {
    const FockWeight w{1.0};
    const HarmonicSymbol phi = HarmonicSymbol::parse("z + (0.3-0.2i)conj(z)^2");
    const nlohmann::json toe = adjoint_symbol_report(OperatorKind::toeplitz, phi, 8, w);
    CHECK(toe["adjoint_equals_conjugate_symbol"].get<bool>());
    const nlohmann::json h =
        adjoint_symbol_report(OperatorKind::htoeplitz, HarmonicSymbol::parse("z"), 8, w);
    CHECK_FALSE(h["adjoint_equals_conjugate_symbol"].get<bool>());
}

} // TEST_SUITE
