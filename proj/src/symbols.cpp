#include "focklab/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

namespace focklab {

namespace {

std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_complex(Complex c) {
    if (c.imag() == 0.0) return fmt_real(c.real());
    if (c.real() == 0.0) return fmt_real(c.imag()) + "i";
    std::string s = "(" + fmt_real(c.real());
    s += c.imag() < 0.0 ? "-" + fmt_real(-c.imag()) : "+" + fmt_real(c.imag());
    return s + "i)";
}

// Recursive-descent parser for the term grammar
//   symbol := term (('+'|'-') term)*
//   term   := factor (['*'] factor)+
//   factor := number['i'] | 'i' | '(' complex ')' | 'z'['^'k] | 'conj(z['^'k])'['^'k]
// A term multiplies its factors; mixing z and conj(z) powers in one term is
// rejected because the result would not be harmonic.
struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw SymbolParseError(msg, at);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() const { return pos >= s.size(); }
    char peek() const { return eof() ? '\0' : s[pos]; }
    bool starts_number() const {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    double parse_number() {
        double value = 0.0;
        auto res = std::from_chars(s.data() + pos, s.data() + s.size(), value);
        if (res.ec != std::errc{} || res.ptr == s.data() + pos)
            fail("expected a number", pos);
        pos = static_cast<std::size_t>(res.ptr - s.data());
        return value;
    }

    int parse_exponent() {
        // caller consumed '^'
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a non-negative integer exponent after '^'", pos);
        int value = 0;
        auto res = std::from_chars(s.data() + pos, s.data() + s.size(), value);
        if (res.ec != std::errc{}) fail("exponent out of range", pos);
        pos = static_cast<std::size_t>(res.ptr - s.data());
        if (value > 4096) fail("exponent exceeds the supported degree limit (4096)", pos);
        return value;
    }

    int parse_optional_power() {
        skip_ws();
        if (peek() != '^') return 1;
        ++pos;
        return parse_exponent();
    }

    // Complex literal between parentheses: a, ai, a+bi, a-bi, i, -i, bi ...
    Complex parse_paren_complex() {
        std::size_t open = pos;
        ++pos; // '('
        skip_ws();
        double re = 0.0, im = 0.0;
        auto component = [&](double sign) {
            if (peek() == 'i') {
                ++pos;
                im += sign;
                return;
            }
            if (!starts_number()) fail("expected a number inside complex literal", pos);
            double v = sign * parse_number();
            if (peek() == 'i') {
                ++pos;
                im += v;
            } else {
                re += v;
            }
        };
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos;
            skip_ws();
        }
        component(sign);
        skip_ws();
        if (peek() == '+' || peek() == '-') {
            double sign2 = peek() == '-' ? -1.0 : 1.0;
            ++pos;
            skip_ws();
            std::size_t second = pos;
            double before = im;
            component(sign2);
            if (im == before) fail("second component of a complex literal must be imaginary", second);
            skip_ws();
        }
        if (peek() != ')') fail("expected ')' closing complex literal opened here", open);
        ++pos;
        return {re, im};
    }

    struct Factor {
        Complex coeff{1.0, 0.0};
        int zpow = 0;
        int qpow = 0;
    };

    std::optional<Factor> try_factor() {
        skip_ws();
        std::size_t start = pos;
        Factor f;
        if (starts_number()) {
            double v = parse_number();
            if (peek() == 'i') {
                ++pos;
                f.coeff = {0.0, v};
            } else {
                f.coeff = {v, 0.0};
            }
            return f;
        }
        if (peek() == '(') {
            f.coeff = parse_paren_complex();
            return f;
        }
        if (peek() == 'z') {
            ++pos;
            f.zpow = parse_optional_power();
            return f;
        }
        if (s.compare(pos, 4, "conj") == 0) {
            pos += 4;
            skip_ws();
            if (peek() != '(') fail("expected '(' after conj", pos);
            ++pos;
            skip_ws();
            if (peek() != 'z') fail("conj(...) must contain z", pos);
            ++pos;
            int inner = parse_optional_power();
            skip_ws();
            if (peek() != ')') fail("expected ')' after conj argument", pos);
            ++pos;
            int outer = parse_optional_power();
            f.qpow = inner * outer;
            if (f.qpow > 4096) fail("exponent exceeds the supported degree limit (4096)", start);
            return f;
        }
        if (peek() == 'i') {
            ++pos;
            f.coeff = {0.0, 1.0};
            return f;
        }
        return std::nullopt;
    }

    void parse_term(HarmonicSymbol& out, double sign) {
        skip_ws();
        std::size_t term_start = pos;
        Factor acc;
        acc.coeff = {sign, 0.0};
        bool any = false;
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                if (!any) fail("'*' without a left operand", pos);
                ++pos;
            }
            std::size_t fpos = pos;
            auto f = try_factor();
            if (!f) break;
            any = true;
            acc.coeff *= f->coeff;
            acc.zpow += f->zpow;
            acc.qpow += f->qpow;
            if (acc.zpow > 0 && acc.qpow > 0)
                fail("term mixes z and conj(z); such a product is not harmonic", fpos);
        }
        if (!any) fail("expected a term", term_start);
        if (acc.zpow > 0)
            out.set_analytic(acc.zpow, out.analytic_coeff(acc.zpow) + acc.coeff);
        else if (acc.qpow > 0)
            out.set_anti(acc.qpow, out.anti_coeff(acc.qpow) + acc.coeff);
        else
            out.set_analytic(0, out.analytic_coeff(0) + acc.coeff);
    }

    HarmonicSymbol parse_symbol() {
        HarmonicSymbol out;
        skip_ws();
        if (eof()) fail("empty symbol text", pos);
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos;
        }
        parse_term(out, sign);
        for (;;) {
            skip_ws();
            if (eof()) break;
            if (peek() != '+' && peek() != '-')
                fail("expected '+' or '-' between terms", pos);
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos;
            parse_term(out, sign);
        }
        return out;
    }
};

std::string monomial_text(bool anti, int k) {
    if (k == 0) return "";
    std::string base = anti ? "conj(z)" : "z";
    if (k == 1) return base;
    return base + "^" + std::to_string(k);
}

void append_term(std::string& out, Complex c, const std::string& mono) {
    const bool pure_real = c.imag() == 0.0;
    const bool negative = pure_real && c.real() < 0.0;
    std::string lead;
    if (out.empty())
        lead = negative ? "-" : "";
    else
        lead = negative ? " - " : " + ";
    Complex shown = negative ? -c : c;
    std::string body;
    if (mono.empty())
        body = fmt_complex(shown);
    else if (shown == Complex{1.0, 0.0})
        body = mono;
    else
        body = fmt_complex(shown) + mono;
    out += lead + body;
}

} // namespace

HarmonicSymbol HarmonicSymbol::parse(std::string_view text) {
    Parser p{text};
    return p.parse_symbol();
}

std::string HarmonicSymbol::render() const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [i, c] : analytic_) append_term(out, c, monomial_text(false, i));
    for (const auto& [j, c] : anti_) append_term(out, c, monomial_text(true, j));
    return out;
}

nlohmann::json HarmonicSymbol::to_json() const {
    nlohmann::json a = nlohmann::json::array();
    nlohmann::json b = nlohmann::json::array();
    for (const auto& [i, c] : analytic_) a.push_back({i, c.real(), c.imag()});
    for (const auto& [j, c] : anti_) b.push_back({j, c.real(), c.imag()});
    return {{"analytic", a}, {"anti", b}};
}

HarmonicSymbol HarmonicSymbol::from_json(const nlohmann::json& j) {
    HarmonicSymbol out;
    auto read_side = [&](const char* key, bool anti) {
        if (!j.contains(key)) throw InputError(std::string("symbol JSON missing '") + key + "' array");
        const auto& arr = j.at(key);
        if (!arr.is_array()) throw InputError(std::string("symbol JSON '") + key + "' must be an array");
        for (const auto& entry : arr) {
            if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
                !entry[1].is_number() || !entry[2].is_number())
                throw InputError("symbol JSON entries must be [exponent, re, im] triples");
            int k = entry[0].get<int>();
            Complex c{entry[1].get<double>(), entry[2].get<double>()};
            if (anti) {
                if (out.anti_coeff(k) != Complex{0.0, 0.0})
                    throw InputError("duplicate exponent in symbol JSON");
                out.set_anti(k, c);
            } else {
                if (out.analytic_coeff(k) != Complex{0.0, 0.0})
                    throw InputError("duplicate exponent in symbol JSON");
                out.set_analytic(k, c);
            }
        }
    };
    read_side("analytic", false);
    read_side("anti", true);
    return out;
}

Complex HarmonicSymbol::analytic_coeff(int i) const {
    auto it = analytic_.find(i);
    return it == analytic_.end() ? Complex{0.0, 0.0} : it->second;
}

Complex HarmonicSymbol::anti_coeff(int j) const {
    auto it = anti_.find(j);
    return it == anti_.end() ? Complex{0.0, 0.0} : it->second;
}

void HarmonicSymbol::set_analytic(int i, Complex c) {
    if (i < 0) throw InputError("analytic exponent must be >= 0");
    if (c == Complex{0.0, 0.0})
        analytic_.erase(i);
    else
        analytic_[i] = c;
}

void HarmonicSymbol::set_anti(int j, Complex c) {
    if (j < 1) throw InputError("conjugate exponent must be >= 1 (constants go on the analytic side)");
    if (c == Complex{0.0, 0.0})
        anti_.erase(j);
    else
        anti_[j] = c;
}

int HarmonicSymbol::analytic_degree() const {
    return analytic_.empty() ? -1 : analytic_.rbegin()->first;
}

int HarmonicSymbol::anti_degree() const {
    return anti_.empty() ? -1 : anti_.rbegin()->first;
}

bool HarmonicSymbol::is_coanalytic() const {
    return analytic_.empty() ||
           (analytic_.size() == 1 && analytic_.begin()->first == 0);
}

double HarmonicSymbol::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [i, c] : analytic_) (void)i, m = std::max(m, std::abs(c));
    for (const auto& [j, c] : anti_) (void)j, m = std::max(m, std::abs(c));
    return m;
}

Complex HarmonicSymbol::eval(Complex z) const {
    Complex acc{0.0, 0.0};
    for (const auto& [i, c] : analytic_) acc += c * std::pow(z, i);
    const Complex zb = std::conj(z);
    for (const auto& [j, c] : anti_) acc += c * std::pow(zb, j);
    return acc;
}

MixedVector HarmonicSymbol::to_mixed(FockWeight w) const {
    MixedVector v(w);
    for (const auto& [i, c] : analytic_) v.add(i, 0, c);
    for (const auto& [j, c] : anti_) v.add(0, j, c);
    return v;
}

HarmonicSymbol HarmonicSymbol::conjugate() const {
    HarmonicSymbol out;
    for (const auto& [i, c] : analytic_) {
        if (i == 0)
            out.set_analytic(0, std::conj(c));
        else
            out.set_anti(i, std::conj(c));
    }
    for (const auto& [j, c] : anti_) out.set_analytic(j, std::conj(c));
    return out;
}

HarmonicSymbol scale_add(Complex a, const HarmonicSymbol& phi,
                         Complex b, const HarmonicSymbol& psi) {
    HarmonicSymbol out;
    auto acc = [&](bool anti, int k, Complex c) {
        if (c == Complex{0.0, 0.0}) return;
        if (anti)
            out.set_anti(k, out.anti_coeff(k) + c);
        else
            out.set_analytic(k, out.analytic_coeff(k) + c);
    };
    for (const auto& [i, c] : phi.analytic_coeffs()) acc(false, i, a * c);
    for (const auto& [j, c] : phi.anti_coeffs()) acc(true, j, a * c);
    for (const auto& [i, c] : psi.analytic_coeffs()) acc(false, i, b * c);
    for (const auto& [j, c] : psi.anti_coeffs()) acc(true, j, b * c);
    return out;
}

} // namespace focklab
