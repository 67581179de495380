#include "focklab/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <utility>

#include "focklab/analysis.hpp"
#include "focklab/errors.hpp"
#include "focklab/fock_core.hpp"
#include "focklab/hgraph.hpp"
#include "focklab/operators.hpp"
#include "focklab/oracle.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

namespace {

std::string fmt(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

std::string fmtc(Complex v) {
    char b[96];
    std::snprintf(b, sizeof b, "%.12g%+.12gi", v.real(), v.imag());
    return b;
}

std::string fmt_ints(const std::vector<int>& v) {
    std::string out = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(v[k]);
    }
    return out + ")";
}

class Checker {
  public:
    void run(const std::string& id, const std::string& name,
             const std::function<std::pair<bool, std::string>()>& body) {
        CheckResult r;
        r.id = id;
        r.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto [pass, detail] = body();
            r.pass = pass;
            r.detail = std::move(detail);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("threw: ") + e.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results_.push_back(std::move(r));
    }

    std::vector<CheckResult> take() { return std::move(results_); }

  private:
    std::vector<CheckResult> results_;
};

constexpr double kAlphas[] = {0.5, 1.0, 2.0};

// Platform-independent pseudo-random stream (splitmix64 mapped to [-1, 1)).
double unit_double(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

// ---------------------------------------------------------------------------
// Criterion 1: monomial inner products

void criterion_1(Checker& ck) {
    ck.run("c1.orthonormality", "<e_s, e_t> = delta_st from the closed-form Gram rule", [] {
        double worst = 0.0;
        for (double alpha : kAlphas) {
            const FockWeight w{alpha};
            for (int s = 0; s <= 12; ++s)
                for (int t = 0; t <= 12; ++t) {
                    const Complex v = basis_norm_coeff(s, w) * basis_norm_coeff(t, w) *
                                      monomial_inner(s, t, w);
                    worst = std::max(worst, std::abs(v - (s == t ? 1.0 : 0.0)));
                }
        }
        return std::pair{worst <= 1e-12,
                         "max |<e_s,e_t> - delta| = " + fmt(worst) +
                             " over s,t <= 12, alpha in {0.5,1,2}"};
    });

    ck.run("c1.quadrature-moments",
           "quadrature reproduces <z^s, z^t> = delta_st * s!/alpha^s to relative 1e-9", [] {
               double worst = 0.0;
               for (double alpha : kAlphas) {
                   const FockWeight w{alpha};
                   const auto rule = oracle::QuadratureRule::for_max_degree(13);
                   for (int s = 0; s <= 12; ++s)
                       for (int t = 0; t <= 12; ++t) {
                           MixedVector f(w), g(w);
                           f.add(s, 0, {1.0, 0.0});
                           g.add(t, 0, {1.0, 0.0});
                           const Complex q = oracle::quad_inner(f, g, rule);
                           const double la = std::log(alpha);
                           const Complex exact =
                               s == t ? Complex{std::exp(log_factorial(s) - s * la), 0.0}
                                      : Complex{0.0, 0.0};
                           const double scale = std::exp(
                               0.5 * (log_factorial(s) + log_factorial(t)) - 0.5 * (s + t) * la);
                           worst = std::max(worst, std::abs(q - exact) / scale);
                       }
               }
               return std::pair{worst <= 1e-9, "max relative deviation = " + fmt(worst)};
           });
}

// ---------------------------------------------------------------------------
// Criterion 2: the projection P(z^p conj(z)^q)

void criterion_2(Checker& ck) {
    ck.run("c2.projection-vs-oracle",
           "P(z^p conj(z)^q) coefficients match quadrature for p+q <= 10 (1e-8)", [] {
               double worst = 0.0;
               int worst_p = 0, worst_q = 0;
               for (double alpha : kAlphas) {
                   const FockWeight w{alpha};
                   const auto rule = oracle::QuadratureRule::for_max_degree(11);
                   for (int p = 0; p <= 10; ++p)
                       for (int q = 0; p + q <= 10; ++q) {
                           const FockVector proj = project_mixed_monomial(p, q, w);
                           MixedVector mono(w);
                           mono.add(p, q, {1.0, 0.0});
                           const double fn = mono.norm();
                           for (int m = 0; m <= 10; ++m) {
                               MixedVector em(w);
                               em.add(m, 0, {basis_norm_coeff(m, w), 0.0});
                               const Complex byquad = oracle::quad_inner(mono, em, rule);
                               const double scale = std::max(1.0, fn);
                               const double d = std::abs(proj.coeff(m) - byquad) / scale;
                               if (d > worst) {
                                   worst = d;
                                   worst_p = p;
                                   worst_q = q;
                               }
                           }
                       }
               }
               return std::pair{worst <= 1e-8, "max scaled deviation = " + fmt(worst) +
                                                   " at (p,q) = (" + std::to_string(worst_p) +
                                                   "," + std::to_string(worst_q) + ")"};
           });
}

// ---------------------------------------------------------------------------
// Criterion 3: matrix fidelity

struct Slot {
    double c;      // numeric factor
    int halfpow;   // entry = c * alpha^{-halfpow/2} for a symbol with unit coefficients
};

void criterion_3(Checker& ck) {
    ck.run("c3.displayed-corners",
           "4x4 corners of T, H and the 4x8 corner of S match their closed forms", [] {
               const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
               const Slot T44[4][4] = {
                   {{1, 0}, {1, 1}, {r2, 2}, {r6, 3}},
                   {{1, 1}, {1, 0}, {r2, 1}, {r6, 2}},
                   {{r2, 2}, {r2, 1}, {1, 0}, {r3, 1}},
                   {{r6, 3}, {r6, 2}, {r3, 1}, {1, 0}},
               };
               const Slot H44[4][4] = {
                   {{1, 1}, {r2, 2}, {r6, 3}, {2 * r6, 4}},
                   {{2, 2}, {3 * r2, 3}, {4 * r6, 4}, {10 * r6, 5}},
                   {{3 * r2, 3}, {12, 4}, {20 * r3, 5}, {60 * r3, 6}},
                   {{4 * r6, 4}, {20 * r3, 5}, {120, 6}, {420, 7}},
               };
               HarmonicSymbol phi;
               for (int i = 0; i <= 7; ++i) phi.set_analytic(i, {1.0, 0.0});
               for (int j = 1; j <= 3; ++j) phi.set_anti(j, {1.0, 0.0});

               double worst = 0.0;
               for (double alpha : {1.0, 2.0}) {
                   const FockWeight w{alpha};
                   const TruncatedOperator t = build(OperatorKind::toeplitz, phi, 4, 4, w);
                   const TruncatedOperator h = build(OperatorKind::hankel, phi, 4, 4, w);
                   const TruncatedOperator s = build(OperatorKind::htoeplitz, phi, 4, 8, w);
                   auto expected = [alpha](Slot sl) {
                       return sl.c * std::pow(alpha, -0.5 * sl.halfpow);
                   };
                   for (int m = 0; m < 4; ++m)
                       for (int n = 0; n < 4; ++n) {
                           const double et = expected(T44[m][n]);
                           const double eh = expected(H44[m][n]);
                           worst = std::max(worst, std::abs(t.at(m, n) - et) /
                                                       std::max(1.0, std::abs(et)));
                           worst = std::max(worst, std::abs(h.at(m, n) - eh) /
                                                       std::max(1.0, std::abs(eh)));
                           worst = std::max(worst, std::abs(s.at(m, 2 * n) - et) /
                                                       std::max(1.0, std::abs(et)));
                           worst = std::max(worst, std::abs(s.at(m, 2 * n + 1) - eh) /
                                                       std::max(1.0, std::abs(eh)));
                       }
               }
               const FockWeight w1{1.0};
               const TruncatedOperator h1 = build(OperatorKind::hankel, phi, 4, 4, w1);
               const bool witness =
                   std::abs(h1.at(2, 2) - 20.0 * std::sqrt(3.0)) <= 1e-12 * 40.0;
               return std::pair{worst <= 1e-12 && witness,
                                "max scaled deviation = " + fmt(worst) +
                                    "; H(2,2) at alpha=1 = " + fmt(h1.at(2, 2).real()) +
                                    " (closed form 20*sqrt(3) = " +
                                    fmt(20.0 * std::sqrt(3.0)) + ")"};
           });

    ck.run("c3.entries-vs-oracle",
           "all entries m,n <= 12 for a degree-5 symbol match quadrature (1e-8)", [] {
               HarmonicSymbol phi;
               phi.set_analytic(0, {0.7, 0.0});
               phi.set_analytic(1, {1.1, 0.0});
               phi.set_analytic(2, {0.2, -0.3});
               phi.set_analytic(3, {-0.4, 0.0});
               phi.set_analytic(4, {0.6, 0.0});
               phi.set_analytic(5, {0.8, 0.1});
               phi.set_anti(1, {0.9, -0.2});
               phi.set_anti(2, {0.5, 0.0});
               phi.set_anti(3, {-0.35, 0.0});
               phi.set_anti(4, {0.15, 0.45});
               phi.set_anti(5, {0.25, 0.0});
               double worst = 0.0;
               std::string worst_at;
               for (double alpha : kAlphas) {
                   const FockWeight w{alpha};
                   for (OperatorKind kind : {OperatorKind::toeplitz, OperatorKind::hankel,
                                             OperatorKind::htoeplitz}) {
                       const TruncatedOperator eng = build(kind, phi, 13, 13, w);
                       const TruncatedOperator orc =
                           oracle::build_operator_by_quadrature(kind, phi, 13, 13, w);
                       for (int m = 0; m < 13; ++m)
                           for (int n = 0; n < 13; ++n) {
                               const double d = std::abs(eng.at(m, n) - orc.at(m, n)) /
                                                std::max(1.0, std::abs(eng.at(m, n)));
                               if (d > worst) {
                                   worst = d;
                                   worst_at = kind_name(kind) + "(" + std::to_string(m) +
                                              "," + std::to_string(n) + ") alpha=" +
                                              fmt(alpha);
                               }
                           }
                   }
               }
               return std::pair{worst <= 1e-8,
                                "max scaled deviation = " + fmt(worst) + " at " + worst_at};
           });
}

// ---------------------------------------------------------------------------
// Criterion 4: column extraction

void criterion_4(Checker& ck) {
    ck.run("c4.column-extraction",
           "even/odd columns of S equal the T/H blocks for 20 random symbols", [] {
               std::uint64_t seed = 0x4c4b4f42u;
               double worst = 0.0;
               for (int rep = 0; rep < 20; ++rep) {
                   const HarmonicSymbol phi = random_symbol(seed, 4);
                   for (double alpha : {1.0, 2.0}) {
                       const FockWeight w{alpha};
                       const TruncatedOperator s =
                           build(OperatorKind::htoeplitz, phi, 12, 24, w);
                       const TruncatedOperator t = build(OperatorKind::toeplitz, phi, 12, 12, w);
                       const TruncatedOperator h = build(OperatorKind::hankel, phi, 12, 12, w);
                       const TruncatedOperator se = extract_even_columns(s);
                       const TruncatedOperator so = extract_odd_columns(s);
                       for (int m = 0; m < 12; ++m)
                           for (int n = 0; n < 12; ++n) {
                               worst = std::max(worst, std::abs(se.at(m, n) - t.at(m, n)));
                               worst = std::max(worst, std::abs(so.at(m, n) - h.at(m, n)));
                           }
                   }
               }
               return std::pair{worst <= 1e-12, "max |difference| = " + fmt(worst) +
                                                    " (expected exactly 0: the column "
                                                    "dispatch shares one entry routine)"};
           });
}

// ---------------------------------------------------------------------------
// Criterion 5: the worked example

void criterion_5(Checker& ck) {
    ck.run("c5.worked-example",
           "S_{z^2}e_2, S_{conj z}e_2 and the composition reproduce their closed forms", [] {
               bool ok = true;
               std::string detail;
               for (double alpha : {1.0, 2.0}) {
                   const nlohmann::json rep = worked_example_report(FockWeight{alpha});
                   for (const auto& step : rep.at("steps"))
                       if (!step.at("matches").get<bool>()) {
                           ok = false;
                           detail += "step " + std::to_string(step.at("id").get<int>()) +
                                     " mismatched at alpha=" + fmt(alpha) + "; ";
                       }
               }
               if (ok)
                   detail = "all four steps match at alpha in {1,2}: sqrt(6)/alpha e_3, "
                            "1/sqrt(alpha) e_0, sqrt(2/alpha^3) e_2, zero vector";
               return std::pair{ok, detail};
           });

    ck.run("c5.order-and-step4",
           "composition orders differ; the step-4 value is 0 and the alternate "
           "closed form sqrt(3)/alpha e_1 is flagged as inconsistent",
           [] {
               bool ok = true;
               std::string detail;
               for (double alpha : {1.0, 2.0}) {
                   const nlohmann::json rep = worked_example_report(FockWeight{alpha});
                   const bool orders = rep.at("composition_order_matters").get<bool>();
                   const auto& disc = rep.at("documented_discrepancy");
                   const double step4_norm = disc.at("computed_norm").get<double>();
                   const double alt = disc.at("alternate_value").at("abs").get<double>();
                   const bool flagged =
                       std::abs(alt - std::sqrt(3.0) / alpha) <= 1e-12 && step4_norm == 0.0;
                   if (!(orders && flagged)) ok = false;
                   detail += "alpha=" + fmt(alpha) + ": order_gap=" +
                             fmt(rep.at("order_gap").get<double>()) +
                             ", step4 norm=" + fmt(step4_norm) +
                             ", flagged alternate=" + fmt(alt) + "; ";
               }
               return std::pair{ok, detail};
           });
}

// ---------------------------------------------------------------------------
// Criterion 6: proportional symbols commute

void criterion_6(Checker& ck) {
    ck.run("c6.proportional-symbols-commute",
           "[S_phi, S_{lambda phi}] corner norm <= 1e-10 for lambda in {2.5, -1, i}", [] {
               HarmonicSymbol phi;
               phi.set_analytic(0, {0.25, 0.0});
               phi.set_analytic(1, {0.125, 0.0});
               phi.set_analytic(2, {0.5, 0.0});
               phi.set_analytic(3, {-0.25, 0.0});
               phi.set_analytic(4, {0.5, 0.0});
               phi.set_anti(1, {0.5, 0.0});
               phi.set_anti(2, {-0.125, 0.0});
               phi.set_anti(3, {0.25, 0.25});
               phi.set_anti(4, {0.25, 0.0});
               double worst = 0.0;
               bool verdicts = true;
               for (Complex lambda : {Complex{2.5, 0.0}, Complex{-1.0, 0.0}, Complex{0.0, 1.0}}) {
                   const HarmonicSymbol psi =
                       scale_add(lambda, phi, {0.0, 0.0}, HarmonicSymbol{});
                   const CommutatorReport rep =
                       commutator_report(phi, psi, 8, FockWeight{1.0}, 1e-10);
                   worst = std::max(worst, rep.frobenius_norm);
                   verdicts = verdicts && rep.commuting;
               }
               return std::pair{worst <= 1e-10 && verdicts,
                                "max corner Frobenius norm = " + fmt(worst) +
                                    " over the three multiples (block 8, N=" +
                                    std::to_string(stable_truncation_size(4, 4, 8)) + ")"};
           });
}

// ---------------------------------------------------------------------------
// Criterion 7: Hilbert-Schmidt divergence

void criterion_7(Checker& ck) {
    ck.run("c7.hs-value-at-7", "sum of ||S_z e_n||^2 over the first 7 columns equals 11", [] {
        const double v = hs_partial_sum(HarmonicSymbol::parse("z"), 7, FockWeight{1.0});
        return std::pair{std::abs(v - 11.0) <= 1e-10, "hs_partial_sum(7) = " + fmt(v)};
    });

    ck.run("c7.hs-divergence",
           "partial sums at Ncols in {8,16,32,64} increase and stay >= Ncols^2/9", [] {
               const auto sums =
                   hs_partial_sums(HarmonicSymbol::parse("z"), 64, FockWeight{1.0});
               const double v8 = sums[7], v16 = sums[15], v32 = sums[31], v64 = sums[63];
               const bool increasing = v8 < v16 && v16 < v32 && v32 < v64;
               const bool lower = v8 >= 64.0 / 9 && v16 >= 256.0 / 9 && v32 >= 1024.0 / 9 &&
                                  v64 >= 4096.0 / 9;
               return std::pair{increasing && lower,
                                "sums = " + fmt(v8) + ", " + fmt(v16) + ", " + fmt(v32) +
                                    ", " + fmt(v64)};
           });
}

// ---------------------------------------------------------------------------
// Criterion 8: compactness defect

void criterion_8(Checker& ck) {
    ck.run("c8.defect-vanishes",
           "d_n = 0 for n <= 40 when phi in {1, conj(z)} (S* equals K*M over the range)", [] {
               double worst = 0.0;
               for (double alpha : {1.0, 2.0})
                   for (const char* sym : {"1", "conj(z)"}) {
                       const DefectSequence ds = defect_sequence(
                           HarmonicSymbol::parse(sym), 40, FockWeight{alpha});
                       worst = std::max(worst, ds.max_value);
                   }
               return std::pair{worst <= 1e-10, "max defect = " + fmt(worst)};
           });

    ck.run("c8.defect-z",
           "phi = z: d_0 = 1/sqrt(alpha), d_n = 0 for 1 <= n <= 40", [] {
               bool ok = true;
               std::string detail;
               for (double alpha : {1.0, 2.0}) {
                   const DefectSequence ds =
                       defect_sequence(HarmonicSymbol::parse("z"), 40, FockWeight{alpha});
                   const double want = 1.0 / std::sqrt(alpha);
                   double tail = 0.0;
                   for (std::size_t n = 1; n < ds.values.size(); ++n)
                       tail = std::max(tail, ds.values[n]);
                   if (std::abs(ds.values[0] - want) > 1e-10 || tail > 1e-10) ok = false;
                   detail += "alpha=" + fmt(alpha) + ": d_0=" + fmt(ds.values[0]) +
                             " (want " + fmt(want) + "), max d_{1..40}=" + fmt(tail) + "; ";
               }
               return std::pair{ok, detail};
           });
}

// ---------------------------------------------------------------------------
// Criterion 9: Berezin transform

void criterion_9(Checker& ck) {
    ck.run("c9.value-at-origin",
           "transform at z = 0 equals the constant coefficient for 20 random symbols", [] {
               std::uint64_t seed = 0xBE7E21Full;
               double worst = 0.0;
               const FockWeight w{1.0};
               for (int rep = 0; rep < 20; ++rep) {
                   const HarmonicSymbol phi = random_symbol(seed, 4);
                   const Complex v = berezin(phi, {0.0, 0.0}, w);
                   worst = std::max(worst, std::abs(v - phi.analytic_coeff(0)));
               }
               return std::pair{worst <= 1e-12, "max |B(0) - a_0| = " + fmt(worst)};
           });

    ck.run("c9.radial-decay",
           "phi = 1, alpha = 1: values decrease strictly along r = 0..5 and end below 0.5",
           [] {
               const HarmonicSymbol one = HarmonicSymbol::parse("1");
               const FockWeight w{1.0};
               std::string vals;
               bool decreasing = true;
               double prev = 2.0, last = 0.0;
               for (int r = 0; r <= 5; ++r) {
                   const Complex v = berezin(one, {static_cast<double>(r), 0.0}, w);
                   const double a = std::abs(v);
                   if (a >= prev) decreasing = false;
                   prev = a;
                   last = a;
                   vals += fmt(a) + (r < 5 ? ", " : "");
               }
               return std::pair{decreasing && last < 0.5, "|B(r)| = " + vals};
           });

    ck.run("c9.series-vs-quadrature",
           "series and integral evaluations agree to 1e-8 on sample symbols and points", [] {
               double worst = 0.0;
               const FockWeight w{1.0};
               for (const char* sym : {"1", "z+conj(z)", "z^2"}) {
                   const HarmonicSymbol phi = HarmonicSymbol::parse(sym);
                   const auto sampled = oracle::SampledSymbol::from_symbol(phi);
                   for (Complex z : {Complex{0.3, 0.0}, Complex{1.0, 0.5}, Complex{0.0, 2.0}}) {
                       const Complex a = berezin(phi, z, w);
                       const Complex b = berezin_by_quadrature(sampled, z, w);
                       worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
                   }
               }
               return std::pair{worst <= 1e-8, "max scaled gap = " + fmt(worst)};
           });
}

// ---------------------------------------------------------------------------
// Criterion 10: directed graphs

void criterion_10(Checker& ck) {
    const FockWeight w1{1.0};
    const HarmonicSymbol co = HarmonicSymbol::parse("2conj(z)+3conj(z)^2+conj(z)^3");
    const HarmonicSymbol an = HarmonicSymbol::parse("5z+9z^2+z^4");
    const HarmonicSymbol mixed = HarmonicSymbol::parse("4z+z^3+conj(z)^2+7conj(z)^3");

    ck.run("c10.coanalytic-family",
           "graph of 2conj(z)+3conj(z)^2+conj(z)^3 (n=25): indegree prefix, outdegree 3, "
           "no loops",
           [&] {
               const HGraph g = graph_from_symbol(co, 25, w1);
               const DegreeReport dr = degree_report(g);
               const std::vector<int> want = {0, 0, 1, 0, 2, 0, 3, 0, 3};
               std::vector<int> got(dr.indegree.begin() + 1, dr.indegree.begin() + 10);
               bool outdeg_ok = true;
               for (int i = 1; i <= g.n; ++i)
                   if (!g.clipped.count(i) &&
                       dr.outdegree[static_cast<std::size_t>(i)] != 3)
                       outdeg_ok = false;
               const bool succ_ok = g.successors(1) == std::vector<int>{3, 5, 7};
               const bool ok =
                   got == want && outdeg_ok && dr.loop_vertices.empty() && succ_ok;
               return std::pair{ok, "indegree(1..9) = " + fmt_ints(got) + ", successors(1) = " +
                                        fmt_ints(g.successors(1)) + ", loops = " +
                                        fmt_ints(dr.loop_vertices)};
           });

    ck.run("c10.analytic-family-pattern",
           "graph of 5z+9z^2+z^4 (n=25): successors of vertex 2 are {1,2,6}", [&] {
               const HGraph g = graph_from_symbol(an, 25, w1);
               const auto got = g.successors(2);
               return std::pair{got == std::vector<int>{1, 2, 6},
                                "successors(2) = " + fmt_ints(got)};
           });

    ck.run("c10.analytic-family-indegree",
           "graph of 5z+9z^2+z^4 (n=25): indegree prefix matches the pinned reference "
           "(3,3,2,2,3,1,3,1,3)",
           [&] {
               const HGraph g = graph_from_symbol(an, 25, w1);
               const DegreeReport dr = degree_report(g);
               const std::vector<int> pinned = {3, 3, 2, 2, 3, 1, 3, 1, 3};
               std::vector<int> got(dr.indegree.begin() + 1, dr.indegree.begin() + 10);
               std::string detail = "computed indegree(1..9) = " + fmt_ints(got) +
                                    ", pinned reference = " + fmt_ints(pinned);
               if (got != pinned)
                   detail +=
                       ". The computed value follows from the operator: vertex 3 reads "
                       "matrix column 2, whose nonzero entries sit at rows 2, 3 and 5 "
                       "(they carry the coefficients of z, z^2 and z^4 respectively), so "
                       "its indegree is 3; the reference prefix undercounts it as 2.";
               return std::pair{got == pinned, detail};
           });

    ck.run("c10.analytic-family-loops",
           "graph of 5z+9z^2+z^4 (n=25): loop census matches the pinned reference "
           "{2,3,5} (3 loops)",
           [&] {
               const HGraph g = graph_from_symbol(an, 25, w1);
               const auto loops = degree_report(g).loop_vertices;
               const std::vector<int> pinned = {2, 3, 5};
               std::string detail = "computed loops = " + fmt_ints(loops) +
                                    ", pinned reference = " + fmt_ints(pinned);
               if (loops != pinned)
                   detail +=
                       ". Vertex 9's loop is real: entry (9,9) of the block reads the z^4 "
                       "coefficient as a_4*sqrt(8!/4!) = sqrt(1680) != 0. A census of one "
                       "loop per analytic term only covers the upper-left 8x8 window and "
                       "misses diagonal re-reads of the same coefficients further out.";
               return std::pair{loops == pinned, detail};
           });

    ck.run("c10.captions", "offset parameters reproduce the three figure captions", [&] {
        const std::string c1 = symbol_to_params(co).caption();
        const std::string c2 = symbol_to_params(an).caption();
        const std::string c3 = symbol_to_params(mixed).caption();
        const bool ok = c1 == "⟨2,4,6;∅⟩" &&
                        c2 == "⟨1,3,7;1,2,4⟩" && c3 == "⟨1,4,5,6;1,3⟩";
        return std::pair{ok, c1 + "  " + c2 + "  " + c3};
    });

    ck.run("c10.construction-divergence",
           "literal arc rule agrees with the operator graph for the co-analytic symbol "
           "and diverges for 5z+9z^2+z^4",
           [&] {
               const SymbolParams pco = symbol_to_params(co);
               const GraphComparison agree =
                   compare(graph_from_symbol(co, 25, w1),
                           graph_from_params(25, pco.xs, pco.ys, pco.zero_offset_flag));
               const SymbolParams pan = symbol_to_params(an);
               const HGraph gs = graph_from_symbol(an, 25, w1);
               const HGraph gp = graph_from_params(25, pan.xs, pan.ys, pan.zero_offset_flag);
               const GraphComparison diverge = compare(gs, gp);
               const bool ok = agree.identical() && !diverge.identical() &&
                               gs.successors(2) == std::vector<int>{1, 2, 6} &&
                               gp.successors(2) == std::vector<int>{1, 4, 6, 10};
               return std::pair{
                   ok, "co-analytic comparison identical = " +
                           std::string(agree.identical() ? "yes" : "no") +
                           "; analytic divergence: successors(2) = " +
                           fmt_ints(gs.successors(2)) + " from the operator vs " +
                           fmt_ints(gp.successors(2)) + " from the literal rule (" +
                           std::to_string(diverge.only_first.size()) + " arcs operator-only, " +
                           std::to_string(diverge.only_second.size()) + " rule-only)"};
           });
}

// ---------------------------------------------------------------------------
// Criterion 11: dilation identities

void criterion_11(Checker& ck) {
    ck.run("c11.left-inverse", "K*K e_n = e_n exactly for n = 0..63", [] {
        bool ok = true;
        for (double alpha : {1.0, 2.0}) {
            const FockWeight w{alpha};
            for (int n = 0; n <= 63 && ok; ++n) {
                const FockVector back =
                    dilation_adjoint_apply(dilation_apply(FockVector::basis(n, w)));
                ok = back.coeffs().size() == 1 && back.coeff(n) == Complex{1.0, 0.0};
            }
        }
        return std::pair{ok, ok ? "every coefficient came back as exactly 1.0"
                                : "a basis vector did not return exactly"};
    });

    ck.run("c11.isometry", "||K f|| = ||f|| to 1e-12 on random vectors", [] {
        std::uint64_t seed = 0xD15A11CEull;
        double worst = 0.0;
        for (double alpha : {1.0, 2.0}) {
            const FockWeight w{alpha};
            for (int rep = 0; rep < 10; ++rep) {
                FockVector f(w);
                for (int n = 0; n <= 40; ++n)
                    f.set(n, {unit_double(seed), unit_double(seed)});
                const double a = dilation_apply(f).norm();
                const double b = f.norm();
                worst = std::max(worst, std::abs(a - b) / b);
            }
        }
        return std::pair{worst <= 1e-12, "max relative norm gap = " + fmt(worst)};
    });

    ck.run("c11.range-projection",
           "KK* fixes every e_n and every conj(e_{n+1}) (n = 0..40)", [] {
               double worst = 0.0;
               for (double alpha : {1.0, 2.0}) {
                   const FockWeight w{alpha};
                   for (int n = 0; n <= 40; ++n) {
                       const MixedVector en = to_mixed(FockVector::basis(n, w));
                       MixedVector diff_a =
                           dilation_apply(dilation_adjoint_apply(en));
                       for (const auto& [pq, c] : en.terms())
                           diff_a.add(pq.first, pq.second, -c);
                       worst = std::max(worst, diff_a.norm());

                       MixedVector cen(w); // conj(e_{n+1})
                       cen.add(0, n + 1, {basis_norm_coeff(n + 1, w), 0.0});
                       MixedVector diff_b =
                           dilation_apply(dilation_adjoint_apply(cen));
                       for (const auto& [pq, c] : cen.terms())
                           diff_b.add(pq.first, pq.second, -c);
                       worst = std::max(worst, diff_b.norm());
                   }
               }
               return std::pair{worst <= 1e-12, "max residual norm = " + fmt(worst)};
           });

    ck.run("c11.mixed-annihilation",
           "K* sends z*conj(z) to its constant component (1/alpha) e_0 alone", [] {
               bool ok = true;
               std::string detail;
               for (double alpha : {1.0, 2.0}) {
                   const FockWeight w{alpha};
                   MixedVector zzbar(w);
                   zzbar.add(1, 1, {1.0, 0.0});
                   const FockVector out = dilation_adjoint_apply(zzbar);
                   const Complex c0 = out.coeff(0);
                   const bool single = out.coeffs().size() == 1;
                   if (!single || std::abs(c0 - Complex{1.0 / alpha, 0.0}) > 1e-12)
                       ok = false;
                   detail += "alpha=" + fmt(alpha) + ": K*(z conj z) = " + fmtc(c0) +
                             " e_0" + (single ? "" : " plus spurious components") + "; ";
               }
               return std::pair{ok, detail};
           });
}

} // namespace

std::vector<CheckResult> run_criterion(int k) {
    Checker ck;
    switch (k) {
        case 1: criterion_1(ck); break;
        case 2: criterion_2(ck); break;
        case 3: criterion_3(ck); break;
        case 4: criterion_4(ck); break;
        case 5: criterion_5(ck); break;
        case 6: criterion_6(ck); break;
        case 7: criterion_7(ck); break;
        case 8: criterion_8(ck); break;
        case 9: criterion_9(ck); break;
        case 10: criterion_10(ck); break;
        case 11: criterion_11(ck); break;
        default: throw InputError("criterion index must be in 1..11");
    }
    return ck.take();
}

std::vector<CheckResult> run_verification() {
    std::vector<CheckResult> all;
    for (int k = 1; k <= 11; ++k) {
        auto part = run_criterion(k);
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return all;
}

int verification_exit_code(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return 4;
    return 0;
}

} // namespace focklab
