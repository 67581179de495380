#pragma once

// Directed graphs attached to H-Toeplitz operators.
//
// The graph W(S_phi) on vertices {1, ..., n} has an arc i -> j exactly when the
// matrix entry <S_phi e_{j-1}, e_{i-1}> is nonzero.  Two constructions are
// provided:
//
//   * from_symbol   - reads the entries of the assembled operator (authoritative);
//   * from_params   - a purely combinatorial rule driven by the offset sets
//                     X = {x_1, ...} and Y = {y_1, ...}:
//                       arc i -> j when j = (2i - 1) + x_k for some k, or when
//                       j is odd and i = (j + 1) / 2 + y_l for some l.
//
// The two need not agree for every symbol; `compare` reports exactly where they
// differ.  Arcs whose target would exceed the window [1, n] are dropped and the
// source vertex is recorded as clipped, so finite renderings are honest about
// what they cannot show.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "focklab/fock_core.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

struct HGraph {
    int n = 0;                                  // vertices are 1..n
    std::vector<std::pair<int, int>> arcs;      // sorted, unique, 1-based
    std::string origin;                         // "symbol" or "params"
    std::set<int> clipped;                      // sources with dropped out-of-window arcs

    bool has_arc(int i, int j) const;
    std::vector<int> successors(int i) const;
    std::vector<int> predecessors(int j) const;
    std::vector<int> loops() const;             // vertices with an arc to themselves

    nlohmann::json to_json() const;
    std::string to_dot(const std::string& name = "W") const;
    std::string to_csv() const;
    static HGraph parse_csv(const std::string& text);
};

// Indicator graph of the assembled operator: arc i -> j iff the (i-1, j-1)
// entry of S_phi exceeds eps in absolute value.
HGraph graph_from_symbol(const HarmonicSymbol& phi, int n, FockWeight w, double eps = 1e-12);

// Combinatorial rule from offset sets.  All offsets must be >= 1; the constant
// coefficient is modelled by include_zero_offset, which adds x = 0 behaviour
// (arc i -> 2i - 1) alongside the positive offsets.
HGraph graph_from_params(int n, const std::vector<int>& xs, const std::vector<int>& ys,
                         bool include_zero_offset = false);

struct SymbolParams {
    std::vector<int> xs;        // offsets from analytic (upper) coefficients
    std::vector<int> ys;        // offsets from analytic coefficients, lower rule
    bool zero_offset_flag = false; // constant coefficient present

    std::string caption() const; // "<x_1,...,x_r; y_1,...,y_s>", empty side printed as "-"
};

// Offset sets read off the symbol's coefficient support:
//   xs = sorted({2i - 1 : a_i != 0, i >= 1} union {2j : b_j != 0}),
//   ys = {i : a_i != 0, i >= 1},  zero_offset_flag = (a_0 != 0).
SymbolParams symbol_to_params(const HarmonicSymbol& phi);

struct DegreeReport {
    int n = 0;
    std::vector<int> indegree;   // index 0 unused; 1..n
    std::vector<int> outdegree;
    std::vector<int> loop_vertices;
    std::set<int> clipped;       // outdegree undercounts for these sources
    int arc_count = 0;

    nlohmann::json to_json() const;
};

DegreeReport degree_report(const HGraph& g);

struct GraphComparison {
    std::vector<std::pair<int, int>> only_first;
    std::vector<std::pair<int, int>> only_second;
    int shared = 0;

    bool identical() const { return only_first.empty() && only_second.empty(); }
    nlohmann::json to_json() const;
};

GraphComparison compare(const HGraph& a, const HGraph& b);

} // namespace focklab
