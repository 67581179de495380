#include "focklab/hgraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "focklab/errors.hpp"
#include "focklab/operators.hpp"

namespace focklab {

namespace {

void canonicalize(std::vector<std::pair<int, int>>& arcs) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
}

std::vector<int> checked_offsets(std::vector<int> v, int n, const char* side) {
    std::sort(v.begin(), v.end());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] < 1) throw InputError(std::string(side) + " offsets must be >= 1");
        if (v[k] >= n) throw InputError(std::string(side) + " offsets must be < n");
        if (k > 0 && v[k] == v[k - 1])
            throw InputError(std::string(side) + " offsets must be distinct");
    }
    return v;
}

nlohmann::json arcs_json(const std::vector<std::pair<int, int>>& arcs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [i, j] : arcs) out.push_back({i, j});
    return out;
}

} // namespace

bool HGraph::has_arc(int i, int j) const {
    return std::binary_search(arcs.begin(), arcs.end(), std::make_pair(i, j));
}

std::vector<int> HGraph::successors(int i) const {
    std::vector<int> out;
    for (const auto& [a, b] : arcs)
        if (a == i) out.push_back(b);
    return out;
}

std::vector<int> HGraph::predecessors(int j) const {
    std::vector<int> out;
    for (const auto& [a, b] : arcs)
        if (b == j) out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> HGraph::loops() const {
    std::vector<int> out;
    for (const auto& [a, b] : arcs)
        if (a == b) out.push_back(a);
    return out;
}

nlohmann::json HGraph::to_json() const {
    return {{"n", n},
            {"origin", origin},
            {"arcs", arcs_json(arcs)},
            {"clipped", std::vector<int>(clipped.begin(), clipped.end())}};
}

std::string HGraph::to_dot(const std::string& name) const {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (int v = 1; v <= n; ++v) os << "  " << v << ";\n";
    for (const auto& [i, j] : arcs) os << "  " << i << " -> " << j << ";\n";
    os << "}\n";
    return os.str();
}

std::string HGraph::to_csv() const {
    std::ostringstream os;
    os << "# vertices=" << n << "\n"
       << "i,j\n";
    for (const auto& [i, j] : arcs) os << i << "," << j << "\n";
    return os.str();
}

HGraph HGraph::parse_csv(const std::string& text) {
    HGraph g;
    g.origin = "csv";
    bool have_n = false;
    int line_no = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("vertices=");
            if (pos != std::string::npos) {
                const char* first = line.data() + pos + 9;
                const char* last = line.data() + line.size();
                if (std::from_chars(first, last, g.n).ec != std::errc{})
                    throw InputError("graph CSV line " + std::to_string(line_no) +
                                     ": malformed vertex count");
                have_n = true;
            }
            continue;
        }
        if (line == "i,j") continue;
        const auto comma = line.find(',');
        int i = 0, j = 0;
        bool ok = comma != std::string::npos;
        if (ok) {
            const auto r1 = std::from_chars(line.data(), line.data() + comma, i);
            const auto r2 =
                std::from_chars(line.data() + comma + 1, line.data() + line.size(), j);
            ok = r1.ec == std::errc{} && r2.ec == std::errc{} &&
                 r1.ptr == line.data() + comma && r2.ptr == line.data() + line.size();
        }
        if (!ok)
            throw InputError("graph CSV line " + std::to_string(line_no) +
                             ": expected an 'i,j' arc");
        g.arcs.emplace_back(i, j);
    }
    if (!have_n)
        for (const auto& [i, j] : g.arcs) g.n = std::max({g.n, i, j});
    if (g.n < 1) throw InputError("graph CSV does not declare any vertices");
    for (const auto& [i, j] : g.arcs)
        if (i < 1 || j < 1 || i > g.n || j > g.n)
            throw InputError("graph CSV: arc (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") falls outside vertices 1.." +
                             std::to_string(g.n));
    canonicalize(g.arcs);
    return g;
}

HGraph graph_from_symbol(const HarmonicSymbol& phi, int n, FockWeight w, double eps) {
    if (n < 1) throw InputError("vertex count must be >= 1");
    if (!(eps > 0.0)) throw InputError("indicator threshold must be > 0");
    HGraph g;
    g.n = n;
    g.origin = "symbol";
    const double scale = phi.max_abs_coeff();
    if (scale == 0.0) return g;
    const double thresh = eps * scale;
    const int da = std::max(phi.analytic_degree(), 0);
    const int db = std::max(phi.anti_degree(), 0);
    // Wide enough that every nonzero entry of rows 0..n-1 is inside the block,
    // so clipping against the window [1, n] is decided exactly.
    const int wide = std::max(n, 2 * (n + da + db + 2));
    const TruncatedOperator s = build(OperatorKind::htoeplitz, phi, n, wide, w);
    for (int m = 0; m < n; ++m)
        for (int c = 0; c < wide; ++c)
            if (std::abs(s.at(m, c)) > thresh) {
                if (c < n)
                    g.arcs.emplace_back(m + 1, c + 1);
                else
                    g.clipped.insert(m + 1);
            }
    canonicalize(g.arcs);
    return g;
}

HGraph graph_from_params(int n, const std::vector<int>& xs_in, const std::vector<int>& ys_in,
                         bool include_zero_offset) {
    if (n < 1) throw InputError("vertex count must be >= 1");
    std::vector<int> xs = checked_offsets(xs_in, n, "upper");
    const std::vector<int> ys = checked_offsets(ys_in, n, "lower");
    if (include_zero_offset) xs.insert(xs.begin(), 0);
    HGraph g;
    g.n = n;
    g.origin = "params";
    for (int i = 1; i <= n; ++i)
        for (int x : xs) {
            const int j = (2 * i - 1) + x;
            if (j <= n)
                g.arcs.emplace_back(i, j);
            else
                g.clipped.insert(i);
        }
    for (int j = 1; j <= n; j += 2)
        for (int y : ys) {
            const int i = (j + 1) / 2 + y;
            // A source beyond the window has no vertex to attach the arc to.
            if (i <= n) g.arcs.emplace_back(i, j);
        }
    canonicalize(g.arcs);
    return g;
}

std::string SymbolParams::caption() const {
    auto join = [](const std::vector<int>& v) {
        std::string out;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(v[k]);
        }
        return out.empty() ? std::string("∅") : out;
    };
    std::vector<int> shown_xs = xs;
    if (zero_offset_flag) shown_xs.insert(shown_xs.begin(), 0);
    return "⟨" + join(shown_xs) + ";" + join(ys) + "⟩";
}

SymbolParams symbol_to_params(const HarmonicSymbol& phi) {
    SymbolParams p;
    std::set<int> xs;
    for (const auto& [i, c] : phi.analytic_coeffs()) {
        (void)c;
        if (i == 0) {
            p.zero_offset_flag = true;
            continue;
        }
        xs.insert(2 * i - 1);
        p.ys.push_back(i);
    }
    for (const auto& [j, c] : phi.anti_coeffs()) {
        (void)c;
        xs.insert(2 * j);
    }
    p.xs.assign(xs.begin(), xs.end());
    std::sort(p.ys.begin(), p.ys.end());
    return p;
}

nlohmann::json DegreeReport::to_json() const {
    long in_sum = 0, out_sum = 0;
    for (int k = 1; k <= n; ++k) {
        in_sum += indegree[static_cast<std::size_t>(k)];
        out_sum += outdegree[static_cast<std::size_t>(k)];
    }
    return {{"n", n},
            {"indegree", std::vector<int>(indegree.begin() + 1, indegree.end())},
            {"outdegree", std::vector<int>(outdegree.begin() + 1, outdegree.end())},
            {"loop_vertices", loop_vertices},
            {"clipped", std::vector<int>(clipped.begin(), clipped.end())},
            {"arc_count", arc_count},
            {"indegree_sum", in_sum},
            {"outdegree_sum", out_sum}};
}

DegreeReport degree_report(const HGraph& g) {
    DegreeReport r;
    r.n = g.n;
    r.indegree.assign(static_cast<std::size_t>(g.n) + 1, 0);
    r.outdegree.assign(static_cast<std::size_t>(g.n) + 1, 0);
    r.clipped = g.clipped;
    r.arc_count = static_cast<int>(g.arcs.size());
    for (const auto& [i, j] : g.arcs) {
        ++r.outdegree[static_cast<std::size_t>(i)];
        ++r.indegree[static_cast<std::size_t>(j)];
        if (i == j) r.loop_vertices.push_back(i);
    }
    return r;
}

nlohmann::json GraphComparison::to_json() const {
    return {{"only_first", arcs_json(only_first)},
            {"only_second", arcs_json(only_second)},
            {"shared", shared},
            {"identical", identical()}};
}

GraphComparison compare(const HGraph& a, const HGraph& b) {
    if (a.n != b.n)
        throw InputError("cannot compare graphs with different vertex counts (" +
                         std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
    GraphComparison out;
    std::set_difference(a.arcs.begin(), a.arcs.end(), b.arcs.begin(), b.arcs.end(),
                        std::back_inserter(out.only_first));
    std::set_difference(b.arcs.begin(), b.arcs.end(), a.arcs.begin(), a.arcs.end(),
                        std::back_inserter(out.only_second));
    std::vector<std::pair<int, int>> shared_arcs;
    std::set_intersection(a.arcs.begin(), a.arcs.end(), b.arcs.begin(), b.arcs.end(),
                          std::back_inserter(shared_arcs));
    out.shared = static_cast<int>(shared_arcs.size());
    return out;
}

} // namespace focklab
