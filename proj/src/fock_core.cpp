#include "focklab/fock_core.hpp"

#include <algorithm>
#include <cmath>

namespace focklab {

namespace {

void require_nonnegative(int n, const char* what) {
    if (n < 0) throw InputError(std::string(what) + " must be >= 0");
}

// Coefficient placed on e_{p-q} by the projection of z^p conj(z)^q, p >= q.
// The q = 0 branch divides by the basis normalization instead of running the
// equivalent exp/lgamma chain, so P(z^p) = z^p holds bit-for-bit.
double projection_coeff(int p, int q, FockWeight w) {
    if (q == 0) return 1.0 / basis_norm_coeff(p, w);
    const double la = std::log(w.alpha);
    const int d = p - q;
    return std::exp(log_factorial(p) - p * la + 0.5 * (d * la - log_factorial(d)));
}

} // namespace

double log_factorial(int n) {
    require_nonnegative(n, "factorial argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double basis_norm_coeff(int n, FockWeight w) {
    require_nonnegative(n, "basis index");
    return std::exp(0.5 * (n * std::log(w.alpha) - log_factorial(n)));
}

Complex monomial_inner(int s, int t, FockWeight w) {
    require_nonnegative(s, "monomial exponent");
    require_nonnegative(t, "monomial exponent");
    if (s != t) return {0.0, 0.0};
    return {std::exp(log_factorial(s) - s * std::log(w.alpha)), 0.0};
}

// ---------------------------------------------------------------------------
// FockVector

FockVector FockVector::basis(int n, FockWeight w) {
    FockVector f(w);
    f.set(n, {1.0, 0.0});
    return f;
}

void FockVector::add(int n, Complex c) {
    require_nonnegative(n, "basis index");
    coeffs_[n] += c;
}

void FockVector::set(int n, Complex c) {
    require_nonnegative(n, "basis index");
    if (c == Complex{0.0, 0.0})
        coeffs_.erase(n);
    else
        coeffs_[n] = c;
}

Complex FockVector::coeff(int n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
}

int FockVector::max_index() const {
    return coeffs_.empty() ? -1 : coeffs_.rbegin()->first;
}

double FockVector::squared_norm() const {
    long double acc = 0.0L;
    for (const auto& [n, c] : coeffs_) {
        (void)n;
        acc += static_cast<long double>(std::norm(c));
    }
    return static_cast<double>(acc);
}

double FockVector::norm() const { return std::sqrt(squared_norm()); }

Complex FockVector::inner(const FockVector& other) const {
    // Linear in the first slot, conjugate-linear in the second.
    std::complex<long double> acc{0.0L, 0.0L};
    for (const auto& [n, c] : coeffs_) {
        Complex d = other.coeff(n);
        if (d == Complex{0.0, 0.0}) continue;
        acc += std::complex<long double>(c) * std::conj(std::complex<long double>(d));
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

void FockVector::prune(double cutoff) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= cutoff)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

FockVector scale_add(Complex x, const FockVector& a, Complex y, const FockVector& b) {
    FockVector out(a.weight());
    for (const auto& [n, c] : a.coeffs()) out.add(n, x * c);
    for (const auto& [n, c] : b.coeffs()) out.add(n, y * c);
    out.prune();
    return out;
}

double distance(const FockVector& a, const FockVector& b) {
    return scale_add({1.0, 0.0}, a, {-1.0, 0.0}, b).norm();
}

// ---------------------------------------------------------------------------
// MixedVector

void MixedVector::add(int p, int q, Complex c) {
    require_nonnegative(p, "monomial exponent");
    require_nonnegative(q, "monomial exponent");
    terms_[{p, q}] += c;
}

Complex MixedVector::coeff(int p, int q) const {
    auto it = terms_.find({p, q});
    return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

int MixedVector::max_total_degree() const {
    int d = -1;
    for (const auto& [pq, c] : terms_) {
        (void)c;
        d = std::max(d, pq.first + pq.second);
    }
    return d;
}

Complex MixedVector::inner(const MixedVector& other) const {
    // <z^p1 cz^q1, z^p2 cz^q2> = (p1+q2)!/alpha^(p1+q2) iff p1-q1 = p2-q2.
    const double la = std::log(alpha_.alpha);
    std::complex<long double> acc{0.0L, 0.0L};
    for (const auto& [k1, c1] : terms_) {
        for (const auto& [k2, c2] : other.terms_) {
            if (k1.first - k1.second != k2.first - k2.second) continue;
            const int tot = k1.first + k2.second;
            const double gram = std::exp(log_factorial(tot) - tot * la);
            acc += std::complex<long double>(c1) *
                   std::conj(std::complex<long double>(c2)) *
                   static_cast<long double>(gram);
        }
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double MixedVector::squared_norm() const {
    return std::max(0.0, inner(*this).real());
}

double MixedVector::norm() const { return std::sqrt(squared_norm()); }

Complex MixedVector::eval(Complex z) const {
    Complex acc{0.0, 0.0};
    const Complex zb = std::conj(z);
    for (const auto& [pq, c] : terms_)
        acc += c * std::pow(z, pq.first) * std::pow(zb, pq.second);
    return acc;
}

void MixedVector::prune(double cutoff) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= cutoff)
            it = terms_.erase(it);
        else
            ++it;
    }
}

MixedVector to_mixed(const FockVector& f) {
    MixedVector v(f.weight());
    for (const auto& [n, c] : f.coeffs())
        v.add(n, 0, c * basis_norm_coeff(n, f.weight()));
    return v;
}

// ---------------------------------------------------------------------------
// Projection

FockVector project_mixed_monomial(int p, int q, FockWeight w) {
    require_nonnegative(p, "monomial exponent");
    require_nonnegative(q, "monomial exponent");
    FockVector out(w);
    if (p < q) return out;
    out.set(p - q, {projection_coeff(p, q, w), 0.0});
    return out;
}

FockVector project_mixed_vector(const MixedVector& v) {
    FockVector out(v.weight());
    for (const auto& [pq, c] : v.terms()) {
        if (pq.first < pq.second) continue;
        // Dividing (rather than multiplying by a precomputed reciprocal) costs
        // one rounding instead of two, so embedding a basis vector and
        // projecting it back is the exact identity.
        if (pq.second == 0)
            out.add(pq.first, c / basis_norm_coeff(pq.first, v.weight()));
        else
            out.add(pq.first - pq.second,
                    c * projection_coeff(pq.first, pq.second, v.weight()));
    }
    out.prune();
    return out;
}

// ---------------------------------------------------------------------------
// Reproducing kernel

FockVector kernel_coeffs(Complex z, int terms, FockWeight w) {
    if (terms < 0) throw InputError("kernel term count must be >= 0");
    FockVector out(w);
    Complex c = {std::exp(-0.5 * w.alpha * std::norm(z)), 0.0};
    const Complex zb = std::conj(z);
    for (int n = 0; n < terms; ++n) {
        out.set(n, c);
        c *= zb * std::sqrt(w.alpha / (n + 1));
    }
    out.prune();
    return out;
}

int kernel_truncation_terms(Complex z, FockWeight w, double tail_bound) {
    const double t = w.alpha * std::norm(z);
    const int margin = 8;
    double mass = std::exp(-t);
    if (mass == 0.0) {
        // Underflow regime: Poisson tail bound via mean + 12 standard deviations.
        return static_cast<int>(t + 12.0 * std::sqrt(t) + 50.0) + margin;
    }
    // March past the Poisson mode, then stop once a geometric bound on the
    // remaining tail mass drops below the target (1 - cum would stall at the
    // double-precision floor long before reaching tail_bound).
    int n = 0;
    while (n < 100000) {
        ++n;
        mass *= t / n;
        const double ratio = t / (n + 2.0);
        if (static_cast<double>(n) > t && ratio < 1.0 &&
            mass * (t / (n + 1.0)) < tail_bound * (1.0 - ratio))
            break;
    }
    return n + 1 + margin;
}

} // namespace focklab
