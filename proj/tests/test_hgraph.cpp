// Directed graphs of H-Toeplitz operators: the authoritative entry-indicator
// construction, the combinatorial offset rule, where the two agree and where
// they provably part ways, plus serialization round trips.
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/hgraph.hpp"
#include "focklab/operators.hpp"
#include "focklab/symbols.hpp"

using namespace focklab;

namespace {

const FockWeight kOne{1.0};

std::vector<int> indegree_prefix(const HGraph& g, int upto) {
    const DegreeReport r = degree_report(g);
    std::vector<int> out;
    for (int v = 1; v <= upto; ++v) out.push_back(r.indegree[static_cast<std::size_t>(v)]);
    return out;
}

} // namespace

TEST_SUITE("hgraph") {

TEST_CASE("co-analytic family: symbol and params constructions agree") {
    const HarmonicSymbol phi = HarmonicSymbol::parse("conj(z)+conj(z)^2+conj(z)^3");
    const HGraph gs = graph_from_symbol(phi, 9, kOne);
    CHECK(gs.origin == "symbol");
    CHECK(gs.successors(1) == std::vector<int>{3, 5, 7});
    CHECK(gs.loops().empty());
    CHECK(indegree_prefix(gs, 9) == std::vector<int>{0, 0, 1, 0, 2, 0, 3, 0, 3});

    // Only even columns are populated (the Hankel block is empty), and rows
    // beyond the window would keep producing arcs: they are marked clipped.
    const DegreeReport r = degree_report(gs);
    CHECK(r.outdegree[1] == 3);
    CHECK(r.outdegree[2] == 3);
    CHECK(gs.clipped == std::set<int>{3, 4, 5, 6, 7, 8, 9});

    const SymbolParams p = symbol_to_params(phi);
    CHECK(p.xs == std::vector<int>{2, 4, 6});
    CHECK(p.ys.empty());
    CHECK_FALSE(p.zero_offset_flag);
    CHECK(p.caption() == "⟨2,4,6;∅⟩");

    const HGraph gp = graph_from_params(9, p.xs, p.ys, p.zero_offset_flag);
    CHECK(compare(gs, gp).identical());
}

TEST_CASE("analytic family: the two constructions genuinely diverge") {
    const HarmonicSymbol phi = HarmonicSymbol::parse("z+z^2+z^4");
    const HGraph gs = graph_from_symbol(phi, 41, kOne);

    // Values read off the assembled operator (the library's contract).
    CHECK(gs.successors(2) == std::vector<int>{1, 2, 6});
    CHECK(indegree_prefix(gs, 9) == std::vector<int>{3, 3, 3, 2, 3, 1, 3, 1, 3});
    CHECK(gs.loops() == std::vector<int>{2, 3, 5, 9});
    CHECK(gs.predecessors(3) == std::vector<int>{3, 4, 6});
    CHECK(gs.clipped.count(23) == 1);
    CHECK(gs.clipped.count(22) == 0);

    const SymbolParams p = symbol_to_params(phi);
    CHECK(p.xs == std::vector<int>{1, 3, 7});
    CHECK(p.ys == std::vector<int>{1, 2, 4});
    CHECK(p.caption() == "⟨1,3,7;1,2,4⟩");

    const HGraph gp = graph_from_params(41, p.xs, p.ys);
    CHECK(gp.successors(2) == std::vector<int>{1, 4, 6, 10});
    CHECK(indegree_prefix(gp, 9) == std::vector<int>{3, 1, 3, 2, 3, 2, 3, 3, 3});

    const GraphComparison cmp = compare(gs, gp);
    CHECK_FALSE(cmp.identical());
    CHECK(std::count(cmp.only_first.begin(), cmp.only_first.end(), std::pair{2, 2}) == 1);
    CHECK(std::count(cmp.only_second.begin(), cmp.only_second.end(), std::pair{2, 4}) == 1);
    CHECK(cmp.shared > 0);
}

TEST_CASE("interior outdegree equals the symbol's term count") {
    const HarmonicSymbol phi = HarmonicSymbol::parse("4z+z^3+conj(z)^2+7conj(z)^3");
    const HGraph g = graph_from_symbol(phi, 31, kOne);
    const DegreeReport r = degree_report(g);
    for (int v = 1; v <= 31; ++v)
        if (g.clipped.count(v) == 0)
            CHECK(r.outdegree[static_cast<std::size_t>(v)] ==
                  static_cast<int>(phi.term_count()));
}

TEST_CASE("arc indicator matches the assembled block entry for entry") {
    const HarmonicSymbol phi = HarmonicSymbol::parse("z^2 + 0.5conj(z) + 1");
    const int n = 12;
    const HGraph g = graph_from_symbol(phi, n, kOne);
    const TruncatedOperator s = build(OperatorKind::htoeplitz, phi, n, n, kOne);
    const double cut = 1e-12 * phi.max_abs_coeff();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            CHECK(g.has_arc(i, j) == (std::abs(s.at(i - 1, j - 1)) > cut));
}

TEST_CASE("zero symbol yields the empty graph") {
    const HGraph g = graph_from_symbol(HarmonicSymbol{}, 7, kOne);
    CHECK(g.n == 7);
    CHECK(g.arcs.empty());
    CHECK(g.clipped.empty());
}

TEST_CASE("params rule: lower offsets and the zero-offset diagonal") {
    // With Y = {1}: column j = 1 is hit from i = (1+1)/2 + 1 = 2.
    const HGraph g = graph_from_params(3, {}, {1});
    CHECK(g.arcs == std::vector<std::pair<int, int>>{{2, 1}, {3, 3}});
    CHECK(g.loops() == std::vector<int>{3});
    CHECK(g.clipped.empty()); // the lower rule never leaves the window

    const HGraph diag = graph_from_params(5, {}, {}, /*include_zero_offset=*/true);
    CHECK(diag.arcs == std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 5}});
    CHECK(diag.clipped == std::set<int>{4, 5});

    CHECK(graph_from_params(6, {}, {}).arcs.empty());
}

TEST_CASE("degree report satisfies the handshake identity") {
    for (const HGraph& g :
         {graph_from_symbol(HarmonicSymbol::parse("z+z^2+z^4"), 25, kOne),
          graph_from_params(25, {1, 3, 7}, {1, 2, 4}), graph_from_params(9, {2, 4, 6}, {})}) {
        const DegreeReport r = degree_report(g);
        int in_sum = 0, out_sum = 0;
        for (int v = 1; v <= g.n; ++v) {
            in_sum += r.indegree[static_cast<std::size_t>(v)];
            out_sum += r.outdegree[static_cast<std::size_t>(v)];
        }
        CHECK(in_sum == r.arc_count);
        CHECK(out_sum == r.arc_count);
        CHECK(r.arc_count == static_cast<int>(g.arcs.size()));
        const nlohmann::json j = r.to_json();
        CHECK(j["indegree_sum"].get<int>() == in_sum);
        CHECK(j["outdegree_sum"].get<int>() == out_sum);
    }
}

TEST_CASE("params validation rejects malformed offset sets") {
    CHECK_THROWS_AS((void)graph_from_params(9, {0}, {}), InputError);
    CHECK_THROWS_AS((void)graph_from_params(9, {2, 2}, {}), InputError);
    CHECK_THROWS_AS((void)graph_from_params(9, {}, {9}), InputError);
    CHECK_THROWS_AS((void)graph_from_params(9, {-3}, {}), InputError);
    CHECK_THROWS_AS((void)graph_from_params(0, {1}, {}), InputError);
}

TEST_CASE("adjacency queries") {
    const HGraph g = graph_from_params(9, {2, 4, 6}, {});
    CHECK(g.has_arc(1, 3));
    CHECK_FALSE(g.has_arc(3, 1));
    CHECK(g.successors(1) == std::vector<int>{3, 5, 7});
    CHECK(g.predecessors(7) == std::vector<int>{1, 2, 3});
    CHECK(g.successors(9).empty());
}

TEST_CASE("compare requires matching vertex counts") {
    const HGraph a = graph_from_params(5, {1}, {});
    const HGraph b = graph_from_params(6, {1}, {});
    CHECK_THROWS_AS((void)compare(a, b), InputError);
    CHECK(compare(a, a).identical());
}

TEST_CASE("DOT rendering lists every vertex, then the arcs") {
    const HGraph g = graph_from_params(3, {}, {1});
    CHECK(g.to_dot() ==
          "digraph W {\n  1;\n  2;\n  3;\n  2 -> 1;\n  3 -> 3;\n}\n");
    CHECK(g.to_dot("G").substr(0, 10) == "digraph G ");

    const HGraph empty = graph_from_params(2, {}, {});
    CHECK(empty.to_dot() == "digraph W {\n  1;\n  2;\n}\n");
}

TEST_CASE("CSV round trip preserves vertices and arcs") {
    for (const HGraph& g :
         {graph_from_symbol(HarmonicSymbol::parse("z+z^2+z^4"), 17, kOne),
          graph_from_params(9, {2, 4, 6}, {}), graph_from_params(4, {}, {})}) {
        const HGraph back = HGraph::parse_csv(g.to_csv());
        CHECK(back.n == g.n);
        CHECK(back.arcs == g.arcs);
        CHECK(back.origin == "csv");
    }
    CHECK(graph_from_params(4, {}, {}).to_csv() == "# vertices=4\ni,j\n");
}

TEST_CASE("CSV parser infers the vertex count and flags bad input") {
    const HGraph inferred = HGraph::parse_csv("i,j\n2,5\n1,1\n");
    CHECK(inferred.n == 5);
    CHECK(inferred.arcs == std::vector<std::pair<int, int>>{{1, 1}, {2, 5}});

    try {
        (void)HGraph::parse_csv("# vertices=3\ni,j\nfoo,3\n");
        FAIL("expected an InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS((void)HGraph::parse_csv("# vertices=3\ni,j\n4,1\n"), InputError);
    CHECK_THROWS_AS((void)HGraph::parse_csv(""), InputError);
    CHECK_THROWS_AS((void)HGraph::parse_csv("i,j\n"), InputError);

    // CRLF input and duplicate arcs are normalized away.
    const HGraph crlf = HGraph::parse_csv("# vertices=3\r\ni,j\r\n1,2\r\n1,2\r\n");
    CHECK(crlf.arcs == std::vector<std::pair<int, int>>{{1, 2}});
}

} // TEST_SUITE
