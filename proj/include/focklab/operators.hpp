#ifndef FOCKLAB_OPERATORS_HPP
#define FOCKLAB_OPERATORS_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "focklab/fock_core.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

enum class OperatorKind { toeplitz, hankel, htoeplitz, generic };

std::string kind_name(OperatorKind k);
OperatorKind kind_from_name(const std::string& name);

// Whether entries are computed serially or with the OpenMP kernel. Both paths
// evaluate the identical scalar expression per entry, so results agree
// bit-for-bit; the serial path exists as the reference for testing.
enum class Assembly { serial, parallel };

// Dense row-major truncated matrix block of an operator on F^2_alpha,
// indices 0-based: entry(m, n) = <Op e_n, e_m>.
struct TruncatedOperator {
    int rows = 0;
    int cols = 0;
    OperatorKind kind = OperatorKind::generic;
    double alpha = 1.0;
    std::optional<HarmonicSymbol> symbol;
    std::vector<Complex> entries;

    Complex& at(int m, int n) { return entries[static_cast<std::size_t>(m) * cols + n]; }
    Complex at(int m, int n) const { return entries[static_cast<std::size_t>(m) * cols + n]; }

    double frobenius_norm() const;
    double max_abs() const;

    // Column n as a basis-coefficient vector.
    FockVector column(int n) const;
};

// Largest supported truncation size per dimension.
inline constexpr int kMaxTruncationSize = 4096;

// Closed-form matrix entries, 0-based, for phi = sum a_i z^i + sum b_j conj(z)^j.
//
// Toeplitz  <T_phi e_n, e_m>:
//   m >= n: a_{m-n} * sqrt(alpha^(n-m) * m!/n!)
//   m <  n: b_{n-m} * sqrt(alpha^(m-n) * n!/m!)
// Hankel    <H_phi e_n, e_m> = a_{m+n+1} * (m+n+1)! / sqrt(alpha^(m+n+1) m! (n+1)!)
// H-Toeplitz columns interleave the two:
//   <S_phi e_{2k}, e_m> = <T_phi e_k, e_m>,  <S_phi e_{2k+1}, e_m> = <H_phi e_k, e_m>.
Complex toeplitz_entry(const HarmonicSymbol& phi, int m, int n, FockWeight w);
Complex hankel_entry(const HarmonicSymbol& phi, int m, int n, FockWeight w);
Complex htoeplitz_entry(const HarmonicSymbol& phi, int m, int n, FockWeight w);

TruncatedOperator build(OperatorKind kind, const HarmonicSymbol& phi, int rows, int cols,
                        FockWeight w, Assembly assembly = Assembly::parallel);

// --- Exact (truncation-free) application machinery -------------------------
//
// Dilation K: e_{2n} -> e_n, e_{2n+1} -> conj(e_{n+1}); flip J: e_n -> conj(e_{n+1}).
// K is an isometry of F^2_alpha onto the closed span of
// {e_n} u {conj(e_m): m >= 1}; its adjoint K* acts as K^{-1} on that span and
// annihilates its orthogonal complement.
MixedVector dilation_apply(const FockVector& f);
MixedVector flip_apply(const FockVector& f);
FockVector dilation_adjoint_apply(const MixedVector& v);

// Pointwise product phi * v as a mixed expression.
MixedVector multiply_symbol(const HarmonicSymbol& phi, const MixedVector& v);

// S_phi f = P(phi * K f) with no truncation anywhere (exact coefficients).
FockVector apply_htoeplitz_exact(const HarmonicSymbol& phi, const FockVector& f);
// T_phi f = P(phi * f), H_phi f = P(phi * J f), likewise exact.
FockVector apply_toeplitz_exact(const HarmonicSymbol& phi, const FockVector& f);
FockVector apply_hankel_exact(const HarmonicSymbol& phi, const FockVector& f);

// --- Block algebra ----------------------------------------------------------

TruncatedOperator adjoint(const TruncatedOperator& a);
// Matrix product with complex<long double> accumulation, fixed summation order.
TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b,
                          Assembly assembly = Assembly::parallel);
// a*b - b*a on square blocks of equal size.
TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b,
                             Assembly assembly = Assembly::parallel);
TruncatedOperator scale_add(Complex x, const TruncatedOperator& a,
                            Complex y, const TruncatedOperator& b);

// Columns 0,2,4,... of an H-Toeplitz block form the Toeplitz block;
// columns 1,3,5,... form the Hankel block.
TruncatedOperator extract_even_columns(const TruncatedOperator& s);
TruncatedOperator extract_odd_columns(const TruncatedOperator& s);

// Size at which the n0 x n0 corner of products of truncations of T/H/S_phi is
// converged: N = 2*(n0 + max(deg_a,0) + max(deg_b,0) + 1). verify=true also
// runs the doubling check (rebuild at 2N, compare the n0 corner of S*S) and
// throws StabilityError on divergence.
int stable_truncation_size(const HarmonicSymbol& phi, int n0, FockWeight w, bool verify = false);
// Degree-driven core of the same formula (degrees may come from several
// symbols; pass the maxima so coefficient cancellation cannot shrink N).
int stable_truncation_size(int deg_a, int deg_b, int n0);

// --- Serialization ----------------------------------------------------------

// CSV: one line per row, cells are quoted "re,im" pairs, 17 significant digits.
std::string to_csv(const TruncatedOperator& op);
nlohmann::json to_json(const TruncatedOperator& op);
TruncatedOperator operator_from_json(const nlohmann::json& j);

} // namespace focklab

#endif
