#ifndef FOCKLAB_FOCK_CORE_HPP
#define FOCKLAB_FOCK_CORE_HPP

#include <cmath>
#include <complex>
#include <map>
#include <utility>

#include "focklab/errors.hpp"

// Core objects of the Fock space F^2_alpha: entire functions square-integrable
// against the Gaussian measure dlambda_alpha = (alpha/pi) e^{-alpha|z|^2} dA(z).
// The orthonormal basis is e_n(z) = sqrt(alpha^n / n!) z^n.

namespace focklab {

using Complex = std::complex<double>;

// Weight parameter alpha > 0 of the Gaussian measure.
struct FockWeight {
    double alpha;
    explicit FockWeight(double a) : alpha(a) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw InputError("weight parameter alpha must be finite and > 0");
    }
};

// Default comparison tolerances: closed-form identities are held to a tighter
// bar than quadrature cross-checks.
struct Tolerances {
    double closed_form = 1e-10;
    double quadrature = 1e-8;
};

// log(n!) for n >= 0.
double log_factorial(int n);

// sqrt(alpha^n / n!), the normalization of e_n. Computed in log space so large
// n neither overflows nor loses the leading digits.
double basis_norm_coeff(int n, FockWeight w);

// <z^s, z^t> = delta_{st} * s!/alpha^s. Real-valued, returned as complex to
// match the inner-product signature.
Complex monomial_inner(int s, int t, FockWeight w);

// A single term c * z^p conj(z)^q of a harmonic/mixed expression.
struct MixedMonomial {
    int p = 0;
    int q = 0;
    Complex coeff{0.0, 0.0};
};

// Finite linear combination of basis vectors e_n. The ordered map fixes the
// summation order (ascending n) so norms and inner products are reproducible
// bit-for-bit regardless of construction order.
class FockVector {
public:
    explicit FockVector(FockWeight w) : alpha_(w) {}

    static FockVector basis(int n, FockWeight w);

    void add(int n, Complex c);
    void set(int n, Complex c);
    Complex coeff(int n) const;
    const std::map<int, Complex>& coeffs() const { return coeffs_; }
    FockWeight weight() const { return alpha_; }

    bool empty() const { return coeffs_.empty(); }
    int max_index() const;

    double squared_norm() const;
    double norm() const;
    Complex inner(const FockVector& other) const;

    // Drops coefficients with |c| <= cutoff (exact zeros by default).
    void prune(double cutoff = 0.0);

private:
    std::map<int, Complex> coeffs_;
    FockWeight alpha_;
};

// x*a + y*b over matching basis indices.
FockVector scale_add(Complex x, const FockVector& a, Complex y, const FockVector& b);
double distance(const FockVector& a, const FockVector& b);

// Finite linear combination of mixed monomials z^p conj(z)^q. Terms with equal
// p - q are *not* orthogonal in L^2(dlambda_alpha); inner products use the
// exact Gram rule <z^p1 cz^q1, z^p2 cz^q2> = (p1+q2)!/alpha^(p1+q2) when
// p1 - q1 = p2 - q2 (and 0 otherwise).
class MixedVector {
public:
    explicit MixedVector(FockWeight w) : alpha_(w) {}

    void add(int p, int q, Complex c);
    Complex coeff(int p, int q) const;
    const std::map<std::pair<int, int>, Complex>& terms() const { return terms_; }
    FockWeight weight() const { return alpha_; }

    bool empty() const { return terms_.empty(); }
    int max_total_degree() const; // max p + q over the support
    std::size_t term_count() const { return terms_.size(); }

    Complex inner(const MixedVector& other) const;
    double squared_norm() const;
    double norm() const;

    // Pointwise value sum c * z^p * conj(z)^q.
    Complex eval(Complex z) const;

    void prune(double cutoff = 0.0);

private:
    std::map<std::pair<int, int>, Complex> terms_;
    FockWeight alpha_;
};

// Embeds a basis-coefficient vector as the mixed expression it denotes:
// e_n contributes basis_norm_coeff(n) * z^n.
MixedVector to_mixed(const FockVector& f);

// Orthogonal projection P : L^2(dlambda_alpha) -> F^2_alpha on one monomial:
//   P(z^p conj(z)^q) = (p!/alpha^p) * sqrt(alpha^(p-q)/(p-q)!) * e_{p-q}  if p >= q,
//   P(z^p conj(z)^q) = 0                                                  if p < q.
// For q = 0 the coefficient is computed as 1/basis_norm_coeff(p), which keeps
// P exactly idempotent on analytic monomials in floating point.
FockVector project_mixed_monomial(int p, int q, FockWeight w);

// Projection of a finite mixed expression, term by term.
FockVector project_mixed_vector(const MixedVector& v);

// Basis coefficients of the normalized reproducing kernel
// k_z = e^{-alpha|z|^2/2} K_z, i.e. c_n = e^{-alpha|z|^2/2} conj(z)^n sqrt(alpha^n/n!),
// for n < terms. Computed by a stable multiplicative recurrence.
FockVector kernel_coeffs(Complex z, int terms, FockWeight w);

// Smallest N whose kernel tail satisfies sum_{n>=N} |c_n|^2 <= tail_bound
// (the |c_n|^2 follow a Poisson(alpha|z|^2) distribution), plus a margin.
int kernel_truncation_terms(Complex z, FockWeight w, double tail_bound = 1e-24);

} // namespace focklab

#endif
