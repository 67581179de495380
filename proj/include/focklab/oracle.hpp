#ifndef FOCKLAB_ORACLE_HPP
#define FOCKLAB_ORACLE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "focklab/fock_core.hpp"
#include "focklab/operators.hpp"
#include "focklab/symbols.hpp"

// Independent numerical ground truth. Everything in this namespace recomputes
// values straight from the defining integrals over the Gaussian measure,
// deliberately avoiding the closed-form entry formulas and the lgamma-based
// normalization used by the main engine, so agreement between the two paths is
// meaningful evidence.

namespace focklab::oracle {

// Polar-coordinate rule with the substitution u = alpha*r^2:
//   integral f dlambda_alpha = (1/A) sum_a sum_l w_l * f(sqrt(u_l/alpha) e^{i theta_a}),
// theta_a = 2*pi*a/A. Weights absorb the e^{-u} density, so sum_l w_l ~ 1.
struct QuadratureRule {
    enum class Radial { gauss_laguerre, composite_legendre };

    Radial radial_kind = Radial::gauss_laguerre;
    int angular = 1;                 // A: integrates e^{ik theta} exactly for 0 < |k| < A
    std::vector<double> nodes_u;
    std::vector<double> weights;

    // For the Laguerre rule: exact for u^d, d <= radial_exact_degree.
    int radial_exact_degree = 0;
    bool polynomial_exact = false;

    // Construction parameters, kept so the rule can be refined (doubled).
    int radial_points = 0;
    std::vector<double> breakpoints_u;
    double u_max = 0.0;
    int panel_points = 0;
    double panel_width = 0.0;

    // Exact for every monomial z^p conj(z)^q of total degree p+q <= total_degree?
    bool covers(int total_degree) const;

    // A rule with twice the angular count and a refined radial rule, for
    // exactness-plateau and convergence checks.
    QuadratureRule doubled() const;

    static QuadratureRule gauss_laguerre(int angular, int radial_points);
    // Exact for <f, g> whenever deg f, deg g <= max_factor_degree.
    static QuadratureRule for_max_degree(int max_factor_degree);
    // Composite Gauss-Legendre in u on [0, u_max] with panel boundaries at the
    // given breakpoints (u-coordinates of integrand discontinuities).
    static QuadratureRule composite(int angular, std::vector<double> breakpoints_u,
                                    double u_max, int panel_points = 24,
                                    double panel_width = 2.0);
};

// delta_{pq} * p!/alpha^p by an iterative product (no lgamma).
Complex moment(int p, int q, FockWeight w);

// sqrt(alpha^n/n!) as the iterative product prod_{k=1..n} sqrt(alpha/k).
double basis_coeff_direct(int n, FockWeight w);

// integral of f against dlambda_alpha. Node values may be computed in
// parallel; the reduction is always serial in fixed node order, so the result
// does not depend on the thread count.
Complex integrate(const std::function<Complex(Complex)>& f, const QuadratureRule& rule,
                  FockWeight w);

// <f, g> in L^2(dlambda_alpha) for finite mixed expressions. Requires a
// polynomial-exact rule covering total degree deg(f) + deg(g); throws
// QuadratureDegreeError otherwise.
Complex quad_inner(const MixedVector& f, const MixedVector& g, const QuadratureRule& rule);

// A symbol available only through pointwise evaluation.
struct SampledSymbol {
    std::string name;
    std::function<Complex(Complex)> eval;
    std::optional<double> sup_norm;          // declared sup-norm when known
    std::vector<double> radial_breakpoints;  // radii where the symbol jumps
    int poly_degree = -1;                    // >=0 when polynomial of that degree

    static SampledSymbol constant(Complex c);
    static SampledSymbol disk_indicator(double radius);
    static SampledSymbol from_symbol(const HarmonicSymbol& phi);
};

// The function the operator's column n multiplies: e_n for Toeplitz,
// conj(e_{n+1}) for Hankel, K e_n for H-Toeplitz - written down directly from
// the definitions with the oracle's own normalization.
MixedVector column_image(OperatorKind kind, int n, FockWeight w);

// Every entry <phi * column_image(n), e_m> by numerical integration.
TruncatedOperator build_operator_by_quadrature(OperatorKind kind, const SampledSymbol& phi,
                                               int rows, int cols, const QuadratureRule& rule,
                                               FockWeight w);
// Convenience overload: polynomial symbol, automatically sized exact rule.
TruncatedOperator build_operator_by_quadrature(OperatorKind kind, const HarmonicSymbol& phi,
                                               int rows, int cols, FockWeight w);

// Largest k singular values (descending).
std::vector<double> singular_value_decay(const TruncatedOperator& op, int k);

} // namespace focklab::oracle

#endif
