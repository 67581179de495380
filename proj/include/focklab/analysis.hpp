#ifndef FOCKLAB_ANALYSIS_HPP
#define FOCKLAB_ANALYSIS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "focklab/fock_core.hpp"
#include "focklab/operators.hpp"
#include "focklab/oracle.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

// --- Commutativity ----------------------------------------------------------

struct CommutatorReport {
    std::string phi;
    std::string psi;
    double alpha = 1.0;
    int corner = 0;     // the corner block the verdict is about
    int block_size = 0; // truncation size actually used (stable for the corner)
    double frobenius_norm = 0.0;
    double max_abs = 0.0;
    int max_row = 0;
    int max_col = 0;
    double tolerance = 0.0;
    bool commuting = false;
    // Least-squares lambda minimizing ||psi - lambda*phi|| over the shared
    // coefficient slots, and the residual of that fit: dependence detector.
    std::optional<Complex> fitted_ratio;
    double dependence_residual = 0.0;

    nlohmann::json to_json() const;
};

// Commutator [S_phi, S_psi] restricted to the corner x corner block, computed
// at a truncation size where that block is converged.
CommutatorReport commutator_report(const HarmonicSymbol& phi, const HarmonicSymbol& psi,
                                   int corner, FockWeight w, double tolerance = 1e-10);

// Deterministic pseudo-random harmonic symbol with degrees <= max_degree and
// coefficients in the unit square; reproducible across platforms (does not
// rely on distribution implementations).
HarmonicSymbol random_symbol(std::uint64_t& state, int max_degree, bool include_anti = true,
                             bool zero_constant = false);

struct ConverseSearchResult {
    int pairs_tested = 0;
    double min_commutator_norm = 0.0; // over all tested independent pairs
    std::vector<std::pair<std::string, std::string>> commuting_independent_pairs;
    nlohmann::json to_json() const;
};

// Samples independent symbol pairs and records any that nevertheless commute
// on a stable corner: a finding, not a proof, in either direction.
ConverseSearchResult converse_search(int pairs, std::uint64_t seed, int corner, FockWeight w,
                                     double tolerance = 1e-10);

// --- Hilbert-Schmidt partial sums -------------------------------------------

// sum_{n<ncols} ||S_phi e_n||^2 with exact (truncation-free) column norms.
double hs_partial_sum(const HarmonicSymbol& phi, int ncols, FockWeight w);
// All prefixes 1..ncols of the same sum.
std::vector<double> hs_partial_sums(const HarmonicSymbol& phi, int ncols, FockWeight w);

// --- Compactness defect -----------------------------------------------------

// d_n = || S_phi^* e_n  -  K^*( P( conj(phi) e_n ) ) ||.
// The left side is read off a truncation wide enough to hold all of row n;
// the right side is assembled exactly.
double compactness_defect(const HarmonicSymbol& phi, int n, FockWeight w);

struct DefectSequence {
    std::string phi;
    double alpha = 1.0;
    std::vector<double> values; // d_0 .. d_{n_max}
    double max_value = 0.0;
    double tail_max = 0.0; // max over the second half of the range
    std::string coefficient_growth_note;
    nlohmann::json to_json() const;
};

DefectSequence defect_sequence(const HarmonicSymbol& phi, int n_max, FockWeight w);

// --- Berezin transform ------------------------------------------------------

// Dilated kernel I(z, w) = (K k_z)(w), summing `terms` terms of each branch:
//   e^{-alpha|z|^2/2} [ sum_n sqrt(alpha^{3n}/((2n)! n!)) conj(z)^{2n} w^n
//                     + sum_n sqrt(alpha^{3n+2}/((2n+1)!(n+1)!)) conj(z)^{2n+1} conj(w)^{n+1} ].
Complex dilated_kernel(Complex z, Complex w_pt, int terms, FockWeight w);
// Same, stopping automatically once both branches' terms are negligible.
Complex dilated_kernel_auto(Complex z, Complex w_pt, FockWeight w);

// Berezin transform <S_phi k_z, k_z> via the matrix-sandwich series.
Complex berezin(const HarmonicSymbol& phi, Complex z, int terms, FockWeight w);
Complex berezin(const HarmonicSymbol& phi, Complex z, FockWeight w); // auto truncation

// Independent path via the integral representation
//   e^{-alpha|z|^2/2} * integral phi(w) I(z,w) e^{alpha z conj(w)} dlambda_alpha(w).
Complex berezin_by_quadrature(const oracle::SampledSymbol& phi, Complex z, FockWeight w);

struct BoundCheckReport {
    std::string symbol_name;
    double alpha = 1.0;
    double sup_norm = 0.0;
    double max_abs_transform = 0.0;
    bool within_bound = false;
    std::vector<std::pair<Complex, Complex>> samples; // (z, transform value)
    nlohmann::json to_json() const;
};

// |berezin| <= sup-norm check over sample points. The harmonic-symbol overload
// accepts only bounded (i.e. constant) symbols and explains the rejection
// otherwise; sampled symbols must declare their sup-norm.
BoundCheckReport berezin_bound_check(const HarmonicSymbol& phi, const std::vector<Complex>& zs,
                                     FockWeight w);
BoundCheckReport berezin_bound_check(const oracle::SampledSymbol& phi,
                                     const std::vector<Complex>& zs, FockWeight w);

// --- Reports on structural identities ---------------------------------------

// Step-by-step composition walkthrough for phi = z^2 and psi = conj(z) acting
// on e_2: the order of composition changes the result, and the co-analytic
// factor annihilates the intermediate vector in one of the two orders. The
// report flags that definition-based evaluation of S_conj(z) S_z^2 e_2 yields
// the zero vector (odd columns read the Hankel block, which vanishes for
// co-analytic symbols), not a multiple of e_1.
nlohmann::json worked_example_report(FockWeight w);

// Does adjoint(build(kind, phi)) equal build(kind, conj(phi))? True for
// Toeplitz; generally false for Hankel / H-Toeplitz. Reported, not asserted.
nlohmann::json adjoint_symbol_report(OperatorKind kind, const HarmonicSymbol& phi, int n,
                                     FockWeight w);

} // namespace focklab

#endif
