#ifndef FOCKLAB_SYMBOLS_HPP
#define FOCKLAB_SYMBOLS_HPP

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "focklab/fock_core.hpp"

namespace focklab {

// A harmonic polynomial symbol
//   phi(z) = sum_i a_i z^i + sum_{j>=1} b_j conj(z)^j
// stored as two sparse coefficient maps. The constant term always lives on
// the analytic side (a_0).
class HarmonicSymbol {
public:
    HarmonicSymbol() = default;

    // Parses text like "1+2z", "5z + 9z^2 + z^4", "(0.5-2i) conj(z)^3 - 3i z".
    // Products may use '*' or juxtaposition. Mixed products such as
    // "z conj(z)" are rejected (not harmonic) with the offending position.
    static HarmonicSymbol parse(std::string_view text);

    // Canonical text form; parse(render()) reproduces the symbol exactly
    // (coefficients are printed with 17 significant digits).
    std::string render() const;

    nlohmann::json to_json() const;
    static HarmonicSymbol from_json(const nlohmann::json& j);

    Complex analytic_coeff(int i) const;
    Complex anti_coeff(int j) const;
    void set_analytic(int i, Complex c);
    void set_anti(int j, Complex c);

    const std::map<int, Complex>& analytic_coeffs() const { return analytic_; }
    const std::map<int, Complex>& anti_coeffs() const { return anti_; }

    // Highest exponent with a nonzero coefficient; -1 when that side is empty.
    int analytic_degree() const;
    int anti_degree() const;

    bool is_zero() const { return analytic_.empty() && anti_.empty(); }
    bool is_analytic() const { return anti_.empty(); }
    bool is_coanalytic() const;

    double max_abs_coeff() const;
    std::size_t term_count() const { return analytic_.size() + anti_.size(); }

    // Pointwise value.
    Complex eval(Complex z) const;

    // As a mixed expression (for quadrature and exact application).
    MixedVector to_mixed(FockWeight w) const;

    // Complex conjugate symbol: conj(phi) swaps the two sides.
    HarmonicSymbol conjugate() const;

    bool operator==(const HarmonicSymbol& other) const = default;

private:
    std::map<int, Complex> analytic_; // i >= 0
    std::map<int, Complex> anti_;     // j >= 1
};

// a*phi + b*psi, coefficientwise; exact zeros are dropped.
HarmonicSymbol scale_add(Complex a, const HarmonicSymbol& phi,
                         Complex b, const HarmonicSymbol& psi);

} // namespace focklab

#endif
