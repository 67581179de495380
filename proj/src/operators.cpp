#include "focklab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace focklab {

namespace {

void check_dims(int rows, int cols) {
    if (rows < 0 || cols < 0) throw InputError("matrix dimensions must be >= 0");
    if (rows > kMaxTruncationSize || cols > kMaxTruncationSize)
        throw SizeLimitError("requested block exceeds the supported truncation size (" +
                             std::to_string(kMaxTruncationSize) + ")");
}

void check_same_weight(const TruncatedOperator& a, const TruncatedOperator& b) {
    if (a.alpha != b.alpha)
        throw InputError("operands live over different weight parameters");
}

using EntryFn = Complex (*)(const HarmonicSymbol&, int, int, FockWeight);

EntryFn entry_fn(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::toeplitz: return &toeplitz_entry;
    case OperatorKind::hankel: return &hankel_entry;
    case OperatorKind::htoeplitz: return &htoeplitz_entry;
    case OperatorKind::generic: break;
    }
    throw InputError("cannot assemble a 'generic' operator from a symbol");
}

} // namespace

std::string kind_name(OperatorKind k) {
    switch (k) {
    case OperatorKind::toeplitz: return "toeplitz";
    case OperatorKind::hankel: return "hankel";
    case OperatorKind::htoeplitz: return "htoeplitz";
    case OperatorKind::generic: return "generic";
    }
    return "generic";
}

OperatorKind kind_from_name(const std::string& name) {
    if (name == "toeplitz") return OperatorKind::toeplitz;
    if (name == "hankel") return OperatorKind::hankel;
    if (name == "htoeplitz") return OperatorKind::htoeplitz;
    if (name == "generic") return OperatorKind::generic;
    throw InputError("unknown operator kind '" + name +
                     "' (expected toeplitz, hankel, htoeplitz, or generic)");
}

double TruncatedOperator::frobenius_norm() const {
    long double acc = 0.0L;
    for (const Complex& c : entries) acc += static_cast<long double>(std::norm(c));
    return static_cast<double>(std::sqrt(acc));
}

double TruncatedOperator::max_abs() const {
    double m = 0.0;
    for (const Complex& c : entries) m = std::max(m, std::abs(c));
    return m;
}

FockVector TruncatedOperator::column(int n) const {
    if (n < 0 || n >= cols) throw InputError("column index out of range");
    FockVector f{FockWeight(alpha)};
    for (int m = 0; m < rows; ++m) f.set(m, at(m, n));
    return f;
}

Complex toeplitz_entry(const HarmonicSymbol& phi, int m, int n, FockWeight w) {
    if (m < 0 || n < 0) throw InputError("matrix indices must be >= 0");
    const double la = std::log(w.alpha);
    if (m >= n) {
        const Complex a = phi.analytic_coeff(m - n);
        if (a == Complex{0.0, 0.0}) return a;
        return a * std::exp(0.5 * ((n - m) * la + log_factorial(m) - log_factorial(n)));
    }
    const Complex b = phi.anti_coeff(n - m);
    if (b == Complex{0.0, 0.0}) return b;
    return b * std::exp(0.5 * ((m - n) * la + log_factorial(n) - log_factorial(m)));
}

Complex hankel_entry(const HarmonicSymbol& phi, int m, int n, FockWeight w) {
    if (m < 0 || n < 0) throw InputError("matrix indices must be >= 0");
    const Complex a = phi.analytic_coeff(m + n + 1);
    if (a == Complex{0.0, 0.0}) return a;
    const double la = std::log(w.alpha);
    return a * std::exp(log_factorial(m + n + 1) -
                        0.5 * ((m + n + 1) * la + log_factorial(m) + log_factorial(n + 1)));
}

Complex htoeplitz_entry(const HarmonicSymbol& phi, int m, int n, FockWeight w) {
    if (m < 0 || n < 0) throw InputError("matrix indices must be >= 0");
    return n % 2 == 0 ? toeplitz_entry(phi, m, n / 2, w) : hankel_entry(phi, m, (n - 1) / 2, w);
}

TruncatedOperator build(OperatorKind kind, const HarmonicSymbol& phi, int rows, int cols,
                        FockWeight w, Assembly assembly) {
    check_dims(rows, cols);
    const EntryFn fn = entry_fn(kind);
    TruncatedOperator out;
    out.rows = rows;
    out.cols = cols;
    out.kind = kind;
    out.alpha = w.alpha;
    out.symbol = phi;
    out.entries.assign(static_cast<std::size_t>(rows) * cols, Complex{0.0, 0.0});
    const long total = static_cast<long>(rows) * cols;
    if (assembly == Assembly::parallel) {
#pragma omp parallel for schedule(static)
        for (long idx = 0; idx < total; ++idx)
            out.entries[static_cast<std::size_t>(idx)] =
                fn(phi, static_cast<int>(idx / cols), static_cast<int>(idx % cols), w);
    } else {
        for (long idx = 0; idx < total; ++idx)
            out.entries[static_cast<std::size_t>(idx)] =
                fn(phi, static_cast<int>(idx / cols), static_cast<int>(idx % cols), w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact application

MixedVector dilation_apply(const FockVector& f) {
    const FockWeight w = f.weight();
    MixedVector out(w);
    for (const auto& [j, c] : f.coeffs()) {
        if (j % 2 == 0) {
            const int n = j / 2;
            out.add(n, 0, c * basis_norm_coeff(n, w));
        } else {
            const int n = (j - 1) / 2;
            out.add(0, n + 1, c * basis_norm_coeff(n + 1, w));
        }
    }
    return out;
}

MixedVector flip_apply(const FockVector& f) {
    const FockWeight w = f.weight();
    MixedVector out(w);
    for (const auto& [j, c] : f.coeffs()) out.add(0, j + 1, c * basis_norm_coeff(j + 1, w));
    return out;
}

FockVector dilation_adjoint_apply(const MixedVector& v) {
    const FockWeight w = v.weight();
    const double la = std::log(w.alpha);
    FockVector out(w);
    for (const auto& [pq, c] : v.terms()) {
        const auto [p, q] = pq;
        if (p >= q) {
            // component along e_{p-q}: <v, e_{p-q}> = c * bnc(p-q) * p!/alpha^p.
            // For q = 0 this is c / bnc(p); dividing keeps K* K = I exact.
            const int d = p - q;
            Complex coeff = q == 0 ? c / basis_norm_coeff(p, w)
                                   : c * std::exp(log_factorial(p) - p * la +
                                                  0.5 * (d * la - log_factorial(d)));
            out.add(2 * d, coeff);
        }
        if (q > p) {
            // component along conj(e_{q-p}): <v, conj(e_{q-p})> = c * bnc(q-p) * q!/alpha^q.
            const int d = q - p;
            Complex coeff = p == 0 ? c / basis_norm_coeff(q, w)
                                   : c * std::exp(log_factorial(q) - q * la +
                                                  0.5 * (d * la - log_factorial(d)));
            out.add(2 * d - 1, coeff);
        }
    }
    out.prune();
    return out;
}

MixedVector multiply_symbol(const HarmonicSymbol& phi, const MixedVector& v) {
    MixedVector out(v.weight());
    for (const auto& [pq, c] : v.terms()) {
        for (const auto& [i, a] : phi.analytic_coeffs()) out.add(pq.first + i, pq.second, a * c);
        for (const auto& [j, b] : phi.anti_coeffs()) out.add(pq.first, pq.second + j, b * c);
    }
    out.prune();
    return out;
}

FockVector apply_htoeplitz_exact(const HarmonicSymbol& phi, const FockVector& f) {
    return project_mixed_vector(multiply_symbol(phi, dilation_apply(f)));
}

FockVector apply_toeplitz_exact(const HarmonicSymbol& phi, const FockVector& f) {
    return project_mixed_vector(multiply_symbol(phi, to_mixed(f)));
}

FockVector apply_hankel_exact(const HarmonicSymbol& phi, const FockVector& f) {
    return project_mixed_vector(multiply_symbol(phi, flip_apply(f)));
}

// ---------------------------------------------------------------------------
// Block algebra

TruncatedOperator adjoint(const TruncatedOperator& a) {
    TruncatedOperator out;
    out.rows = a.cols;
    out.cols = a.rows;
    out.alpha = a.alpha;
    if (a.kind == OperatorKind::toeplitz) {
        // T_phi^* = T_{conj(phi)}; for the other kinds the adjoint leaves the class.
        out.kind = OperatorKind::toeplitz;
        if (a.symbol) out.symbol = a.symbol->conjugate();
    } else {
        out.kind = OperatorKind::generic;
    }
    out.entries.assign(static_cast<std::size_t>(out.rows) * out.cols, Complex{0.0, 0.0});
    for (int m = 0; m < out.rows; ++m)
        for (int n = 0; n < out.cols; ++n) out.at(m, n) = std::conj(a.at(n, m));
    return out;
}

TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b,
                          Assembly assembly) {
    check_same_weight(a, b);
    if (a.cols != b.rows)
        throw InputError("inner dimensions do not match: " + std::to_string(a.cols) + " vs " +
                         std::to_string(b.rows));
    TruncatedOperator out;
    out.rows = a.rows;
    out.cols = b.cols;
    out.kind = OperatorKind::generic;
    out.alpha = a.alpha;
    out.entries.assign(static_cast<std::size_t>(out.rows) * out.cols, Complex{0.0, 0.0});
    const long total = static_cast<long>(out.rows) * out.cols;
    const int inner = a.cols;
    auto entry = [&](long idx) {
        const int m = static_cast<int>(idx / out.cols);
        const int n = static_cast<int>(idx % out.cols);
        // Extended-precision accumulation in fixed ascending-k order.
        std::complex<long double> acc{0.0L, 0.0L};
        for (int k = 0; k < inner; ++k)
            acc += std::complex<long double>(a.at(m, k)) * std::complex<long double>(b.at(k, n));
        return Complex{static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    };
    if (assembly == Assembly::parallel) {
#pragma omp parallel for schedule(static)
        for (long idx = 0; idx < total; ++idx) out.entries[static_cast<std::size_t>(idx)] = entry(idx);
    } else {
        for (long idx = 0; idx < total; ++idx) out.entries[static_cast<std::size_t>(idx)] = entry(idx);
    }
    return out;
}

TruncatedOperator scale_add(Complex x, const TruncatedOperator& a,
                            Complex y, const TruncatedOperator& b) {
    check_same_weight(a, b);
    if (a.rows != b.rows || a.cols != b.cols)
        throw InputError("matrix shapes do not match");
    TruncatedOperator out;
    out.rows = a.rows;
    out.cols = a.cols;
    out.kind = a.kind == b.kind ? a.kind : OperatorKind::generic;
    out.alpha = a.alpha;
    out.entries.resize(a.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        out.entries[i] = x * a.entries[i] + y * b.entries[i];
    return out;
}

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b,
                             Assembly assembly) {
    if (a.rows != a.cols || b.rows != b.cols || a.rows != b.rows)
        throw InputError("commutator requires square blocks of equal size");
    return scale_add({1.0, 0.0}, compose(a, b, assembly), {-1.0, 0.0}, compose(b, a, assembly));
}

TruncatedOperator extract_even_columns(const TruncatedOperator& s) {
    TruncatedOperator out;
    out.rows = s.rows;
    out.cols = (s.cols + 1) / 2;
    out.kind = s.kind == OperatorKind::htoeplitz ? OperatorKind::toeplitz : OperatorKind::generic;
    out.alpha = s.alpha;
    out.symbol = s.symbol;
    out.entries.assign(static_cast<std::size_t>(out.rows) * out.cols, Complex{0.0, 0.0});
    for (int m = 0; m < out.rows; ++m)
        for (int t = 0; t < out.cols; ++t) out.at(m, t) = s.at(m, 2 * t);
    return out;
}

TruncatedOperator extract_odd_columns(const TruncatedOperator& s) {
    TruncatedOperator out;
    out.rows = s.rows;
    out.cols = s.cols / 2;
    out.kind = s.kind == OperatorKind::htoeplitz ? OperatorKind::hankel : OperatorKind::generic;
    out.alpha = s.alpha;
    out.symbol = s.symbol;
    out.entries.assign(static_cast<std::size_t>(out.rows) * out.cols, Complex{0.0, 0.0});
    for (int m = 0; m < out.rows; ++m)
        for (int t = 0; t < out.cols; ++t) out.at(m, t) = s.at(m, 2 * t + 1);
    return out;
}

int stable_truncation_size(int deg_a, int deg_b, int n0) {
    if (n0 < 1) throw InputError("corner size must be >= 1");
    return 2 * (n0 + std::max(deg_a, 0) + std::max(deg_b, 0) + 1);
}

int stable_truncation_size(const HarmonicSymbol& phi, int n0, FockWeight w, bool verify) {
    const int n = stable_truncation_size(phi.analytic_degree(), phi.anti_degree(), n0);
    if (!verify) return n;
    // Doubling check: the n0 x n0 corner of S*S and adj(S)*S must not move
    // when the truncation size doubles.
    auto corner_products = [&](int size) {
        TruncatedOperator s = build(OperatorKind::htoeplitz, phi, size, size, w);
        return std::pair{compose(s, s), compose(adjoint(s), s)};
    };
    auto [p1, q1] = corner_products(n);
    auto [p2, q2] = corner_products(2 * n);
    double worst = 0.0;
    double scale = 1.0;
    for (int m = 0; m < n0; ++m)
        for (int k = 0; k < n0; ++k) {
            worst = std::max(worst, std::abs(p1.at(m, k) - p2.at(m, k)));
            worst = std::max(worst, std::abs(q1.at(m, k) - q2.at(m, k)));
            scale = std::max({scale, std::abs(p2.at(m, k)), std::abs(q2.at(m, k))});
        }
    if (worst > 1e-10 * scale)
        throw StabilityError("truncation instability: the " + std::to_string(n0) +
                             "-corner of products moved by " + std::to_string(worst) +
                             " when the block size doubled from " + std::to_string(n));
    return n;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string to_csv(const TruncatedOperator& op) {
    std::string out;
    out.reserve(static_cast<std::size_t>(op.rows) * op.cols * 24);
    for (int m = 0; m < op.rows; ++m) {
        for (int n = 0; n < op.cols; ++n) {
            if (n) out += ',';
            const Complex c = op.at(m, n);
            out += '"';
            out += fmt17(c.real());
            out += ',';
            out += fmt17(c.imag());
            out += '"';
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const TruncatedOperator& op) {
    nlohmann::json entries = nlohmann::json::array();
    for (const Complex& c : op.entries) entries.push_back({c.real(), c.imag()});
    nlohmann::json j{{"rows", op.rows},
                     {"cols", op.cols},
                     {"kind", kind_name(op.kind)},
                     {"alpha", op.alpha},
                     {"entries", std::move(entries)}};
    if (op.symbol) j["symbol"] = op.symbol->render();
    return j;
}

TruncatedOperator operator_from_json(const nlohmann::json& j) {
    for (const char* key : {"rows", "cols", "kind", "alpha", "entries"})
        if (!j.contains(key)) throw InputError(std::string("matrix JSON missing '") + key + "'");
    TruncatedOperator op;
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw InputError("matrix JSON rows/cols must be integers");
    op.rows = j["rows"].get<int>();
    op.cols = j["cols"].get<int>();
    check_dims(op.rows, op.cols);
    op.kind = kind_from_name(j["kind"].get<std::string>());
    if (!j["alpha"].is_number()) throw InputError("matrix JSON alpha must be a number");
    op.alpha = j["alpha"].get<double>();
    (void)FockWeight(op.alpha); // validates positivity
    const auto& entries = j["entries"];
    if (!entries.is_array() ||
        entries.size() != static_cast<std::size_t>(op.rows) * static_cast<std::size_t>(op.cols))
        throw InputError("matrix JSON entries must be an array of rows*cols pairs");
    op.entries.reserve(entries.size());
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw InputError("matrix JSON entries must be [re, im] pairs");
        op.entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    if (j.contains("symbol")) op.symbol = HarmonicSymbol::parse(j["symbol"].get<std::string>());
    return op;
}

} // namespace focklab
