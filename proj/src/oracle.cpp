#include "focklab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace focklab::oracle {

namespace {

// z^k by binary exponentiation: exact multiplication chains, no polar forms.
Complex cpow_int(Complex z, int k) {
    Complex acc{1.0, 0.0};
    while (k > 0) {
        if (k & 1) acc *= z;
        z *= z;
        k >>= 1;
    }
    return acc;
}

// Nodes/weights of an n-point rule for integral_0^inf f(u) e^{-u} du
// (Gauss-Laguerre) via the Golub-Welsch eigenproblem on the Jacobi matrix.
void laguerre_nodes(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        j(k, k) = 2.0 * k + 1.0;
        if (k > 0) j(k, k - 1) = j(k - 1, k) = static_cast<double>(k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    nodes.resize(n);
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        nodes[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        weights[k] = v0 * v0; // mu_0 = integral e^{-u} du = 1
    }
}

// n-point Gauss-Legendre on [-1, 1], same construction.
void legendre_nodes(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        j(k, k - 1) = j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    nodes.resize(n);
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        nodes[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        weights[k] = 2.0 * v0 * v0; // mu_0 = integral_{-1}^{1} du = 2
    }
}

} // namespace

bool QuadratureRule::covers(int total_degree) const {
    if (!polynomial_exact) return false;
    return angular > total_degree && radial_exact_degree >= total_degree / 2;
}

QuadratureRule QuadratureRule::doubled() const {
    if (radial_kind == Radial::gauss_laguerre)
        return gauss_laguerre(2 * angular, 2 * radial_points);
    return composite(2 * angular, breakpoints_u, u_max, panel_points, 0.5 * panel_width);
}

QuadratureRule QuadratureRule::gauss_laguerre(int angular, int radial_points) {
    if (angular < 1 || radial_points < 1)
        throw InputError("quadrature rule needs at least one node per direction");
    QuadratureRule r;
    r.radial_kind = Radial::gauss_laguerre;
    r.angular = angular;
    r.radial_points = radial_points;
    laguerre_nodes(radial_points, r.nodes_u, r.weights);
    r.radial_exact_degree = 2 * radial_points - 1;
    r.polynomial_exact = true;
    return r;
}

QuadratureRule QuadratureRule::for_max_degree(int max_factor_degree) {
    if (max_factor_degree < 0) throw InputError("degree must be >= 0");
    const int angular = 2 * max_factor_degree + 1;
    const int radial = max_factor_degree / 2 + 2;
    return gauss_laguerre(angular, radial);
}

QuadratureRule QuadratureRule::composite(int angular, std::vector<double> breakpoints_u,
                                         double u_max, int panel_points, double panel_width) {
    if (angular < 1 || panel_points < 2 || !(u_max > 0.0) || !(panel_width > 0.0))
        throw InputError("invalid composite quadrature parameters");
    QuadratureRule r;
    r.radial_kind = Radial::composite_legendre;
    r.angular = angular;
    r.breakpoints_u = breakpoints_u;
    r.u_max = u_max;
    r.panel_points = panel_points;
    r.panel_width = panel_width;
    r.polynomial_exact = false;

    std::vector<double> cuts{0.0};
    std::sort(breakpoints_u.begin(), breakpoints_u.end());
    for (double b : breakpoints_u)
        if (b > 0.0 && b < u_max) cuts.push_back(b);
    cuts.push_back(u_max);

    std::vector<double> gl_x, gl_w;
    legendre_nodes(panel_points, gl_x, gl_w);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double len = cuts[s + 1] - cuts[s];
        if (!(len > 0.0)) continue;
        const int panels = std::max(1, static_cast<int>(std::ceil(len / panel_width)));
        for (int p = 0; p < panels; ++p) {
            const double lo = cuts[s] + len * p / panels;
            const double hi = cuts[s] + len * (p + 1) / panels;
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (int k = 0; k < panel_points; ++k) {
                const double u = mid + half * gl_x[k];
                r.nodes_u.push_back(u);
                r.weights.push_back(gl_w[k] * half * std::exp(-u));
            }
        }
    }
    return r;
}

Complex moment(int p, int q, FockWeight w) {
    if (p < 0 || q < 0) throw InputError("moment exponents must be >= 0");
    if (p != q) return {0.0, 0.0};
    double v = 1.0;
    for (int k = 1; k <= p; ++k) v *= k / w.alpha;
    return {v, 0.0};
}

double basis_coeff_direct(int n, FockWeight w) {
    if (n < 0) throw InputError("basis index must be >= 0");
    double v = 1.0;
    for (int k = 1; k <= n; ++k) v *= std::sqrt(w.alpha / k);
    return v;
}

Complex integrate(const std::function<Complex(Complex)>& f, const QuadratureRule& rule,
                  FockWeight w) {
    const int a_count = rule.angular;
    const int l_count = static_cast<int>(rule.nodes_u.size());
    std::vector<Complex> angular_dir(a_count);
    for (int a = 0; a < a_count; ++a) {
        const double th = 2.0 * std::numbers::pi * a / a_count;
        angular_dir[a] = {std::cos(th), std::sin(th)};
    }
    const long total = static_cast<long>(l_count) * a_count;
    std::vector<Complex> vals(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
    for (long idx = 0; idx < total; ++idx) {
        const int l = static_cast<int>(idx / a_count);
        const int a = static_cast<int>(idx % a_count);
        if (rule.weights[l] == 0.0) {
            // Far-tail nodes whose weight underflowed: skip the evaluation so an
            // integrand that overflows out there cannot poison the sum with inf * 0.
            vals[static_cast<std::size_t>(idx)] = {0.0, 0.0};
            continue;
        }
        const double r = std::sqrt(rule.nodes_u[l] / w.alpha);
        vals[static_cast<std::size_t>(idx)] = rule.weights[l] * f(r * angular_dir[a]);
    }
    // Serial reduction in fixed node order: thread-count independent.
    std::complex<long double> acc{0.0L, 0.0L};
    for (const Complex& v : vals) acc += std::complex<long double>(v);
    acc /= static_cast<long double>(a_count);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

Complex quad_inner(const MixedVector& f, const MixedVector& g, const QuadratureRule& rule) {
    if (f.empty() || g.empty()) return {0.0, 0.0};
    const int total_degree = f.max_total_degree() + g.max_total_degree();
    if (!rule.covers(total_degree))
        throw QuadratureDegreeError(
            "quadrature rule is not exact to total degree " + std::to_string(total_degree) +
            " (angular " + std::to_string(rule.angular) + ", radial degree " +
            std::to_string(rule.radial_exact_degree) + ")");
    auto integrand = [&](Complex z) {
        Complex fv{0.0, 0.0}, gv{0.0, 0.0};
        const Complex zb = std::conj(z);
        for (const auto& [pq, c] : f.terms()) fv += c * cpow_int(z, pq.first) * cpow_int(zb, pq.second);
        for (const auto& [pq, c] : g.terms()) gv += c * cpow_int(z, pq.first) * cpow_int(zb, pq.second);
        return fv * std::conj(gv);
    };
    return integrate(integrand, rule, f.weight());
}

SampledSymbol SampledSymbol::constant(Complex c) {
    SampledSymbol s;
    s.name = "constant";
    s.eval = [c](Complex) { return c; };
    s.sup_norm = std::abs(c);
    s.poly_degree = 0;
    return s;
}

SampledSymbol SampledSymbol::disk_indicator(double radius) {
    if (!(radius > 0.0)) throw InputError("indicator radius must be > 0");
    SampledSymbol s;
    s.name = "disk_indicator";
    s.eval = [radius](Complex z) { return std::abs(z) <= radius ? Complex{1.0, 0.0} : Complex{0.0, 0.0}; };
    s.sup_norm = 1.0;
    s.radial_breakpoints = {radius};
    return s;
}

SampledSymbol SampledSymbol::from_symbol(const HarmonicSymbol& phi) {
    SampledSymbol s;
    s.name = phi.render();
    s.eval = [phi](Complex z) { return phi.eval(z); };
    s.poly_degree = std::max({phi.analytic_degree(), phi.anti_degree(), 0});
    if (phi.is_zero() || (phi.analytic_degree() <= 0 && phi.anti_degree() < 0))
        s.sup_norm = std::abs(phi.analytic_coeff(0));
    return s;
}

MixedVector column_image(OperatorKind kind, int n, FockWeight w) {
    if (n < 0) throw InputError("column index must be >= 0");
    MixedVector v(w);
    switch (kind) {
    case OperatorKind::toeplitz:
        v.add(n, 0, {basis_coeff_direct(n, w), 0.0});
        return v;
    case OperatorKind::hankel:
        v.add(0, n + 1, {basis_coeff_direct(n + 1, w), 0.0});
        return v;
    case OperatorKind::htoeplitz:
        if (n % 2 == 0)
            v.add(n / 2, 0, {basis_coeff_direct(n / 2, w), 0.0});
        else
            v.add(0, (n + 1) / 2, {basis_coeff_direct((n + 1) / 2, w), 0.0});
        return v;
    case OperatorKind::generic:
        break;
    }
    throw InputError("column_image requires a toeplitz, hankel, or htoeplitz kind");
}

TruncatedOperator build_operator_by_quadrature(OperatorKind kind, const SampledSymbol& phi,
                                               int rows, int cols, const QuadratureRule& rule,
                                               FockWeight w) {
    if (rows < 0 || cols < 0) throw InputError("matrix dimensions must be >= 0");
    if (rows > kMaxTruncationSize || cols > kMaxTruncationSize)
        throw SizeLimitError("requested block exceeds the supported truncation size");

    // Column images and the largest powers any entry integrand needs.
    std::vector<MixedVector> col_images;
    col_images.reserve(static_cast<std::size_t>(cols));
    int max_p = 0, max_q = 0;
    for (int n = 0; n < cols; ++n) {
        col_images.push_back(column_image(kind, n, w));
        for (const auto& [pq, c] : col_images.back().terms()) {
            (void)c;
            max_p = std::max(max_p, pq.first);
            max_q = std::max(max_q, pq.second);
        }
    }
    const int max_zb = max_q + std::max(0, rows - 1); // conj(e_m) adds zbar^m

    const int a_count = rule.angular;
    const int l_count = static_cast<int>(rule.nodes_u.size());
    const long node_count = static_cast<long>(l_count) * a_count;

    // Per-node tables: weight/A, phi value, powers of z and conj(z).
    std::vector<Complex> phi_vals(static_cast<std::size_t>(node_count));
    std::vector<double> wt(static_cast<std::size_t>(node_count));
    std::vector<Complex> zpow(static_cast<std::size_t>(node_count) * (max_p + 1));
    std::vector<Complex> zbpow(static_cast<std::size_t>(node_count) * (max_zb + 1));
#pragma omp parallel for schedule(static)
    for (long idx = 0; idx < node_count; ++idx) {
        const int l = static_cast<int>(idx / a_count);
        const int a = static_cast<int>(idx % a_count);
        const double th = 2.0 * std::numbers::pi * a / a_count;
        const double r = std::sqrt(rule.nodes_u[l] / w.alpha);
        const Complex z = {r * std::cos(th), r * std::sin(th)};
        const Complex zb = std::conj(z);
        phi_vals[idx] = phi.eval(z);
        wt[idx] = rule.weights[l] / a_count;
        Complex acc{1.0, 0.0};
        for (int k = 0; k <= max_p; ++k, acc *= z) zpow[idx * (max_p + 1) + k] = acc;
        acc = {1.0, 0.0};
        for (int k = 0; k <= max_zb; ++k, acc *= zb) zbpow[idx * (max_zb + 1) + k] = acc;
    }

    TruncatedOperator out;
    out.rows = rows;
    out.cols = cols;
    out.kind = kind;
    out.alpha = w.alpha;
    out.entries.assign(static_cast<std::size_t>(rows) * cols, Complex{0.0, 0.0});

    std::vector<double> row_norm(static_cast<std::size_t>(std::max(rows, 1)));
    for (int m = 0; m < rows; ++m) row_norm[m] = basis_coeff_direct(m, w);

    const long entry_count = static_cast<long>(rows) * cols;
#pragma omp parallel for schedule(static)
    for (long e = 0; e < entry_count; ++e) {
        const int m = static_cast<int>(e / cols);
        const int n = static_cast<int>(e % cols);
        std::complex<long double> acc{0.0L, 0.0L};
        for (long idx = 0; idx < node_count; ++idx) {
            // integrand: phi(z) * column_image_n(z) * conj(e_m(z))
            Complex col{0.0, 0.0};
            for (const auto& [pq, c] : col_images[n].terms())
                col += c * zpow[idx * (max_p + 1) + pq.first] * zbpow[idx * (max_zb + 1) + pq.second];
            const Complex v = phi_vals[idx] * col * (row_norm[m] * zbpow[idx * (max_zb + 1) + m]);
            acc += std::complex<long double>(wt[idx] * v);
        }
        out.entries[static_cast<std::size_t>(e)] = {static_cast<double>(acc.real()),
                                                    static_cast<double>(acc.imag())};
    }
    return out;
}

TruncatedOperator build_operator_by_quadrature(OperatorKind kind, const HarmonicSymbol& phi,
                                               int rows, int cols, FockWeight w) {
    const int d_phi = std::max({phi.analytic_degree(), phi.anti_degree(), 0});
    int col_deg = 0;
    switch (kind) {
    case OperatorKind::toeplitz: col_deg = std::max(0, cols - 1); break;
    case OperatorKind::hankel: col_deg = cols; break;
    case OperatorKind::htoeplitz: col_deg = (cols + 1) / 2; break;
    case OperatorKind::generic:
        throw InputError("column_image requires a toeplitz, hankel, or htoeplitz kind");
    }
    const int max_factor = std::max(d_phi + col_deg, std::max(0, rows - 1));
    return build_operator_by_quadrature(kind, SampledSymbol::from_symbol(phi), rows, cols,
                                        QuadratureRule::for_max_degree(max_factor), w);
}

std::vector<double> singular_value_decay(const TruncatedOperator& op, int k) {
    if (k < 1) throw InputError("singular value count must be >= 1");
    Eigen::MatrixXcd m(op.rows, op.cols);
    for (int i = 0; i < op.rows; ++i)
        for (int j = 0; j < op.cols; ++j) m(i, j) = op.at(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    std::vector<double> out;
    const int count = std::min<int>(k, static_cast<int>(sv.size()));
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(sv(i));
    return out;
}

} // namespace focklab::oracle
