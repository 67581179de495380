// focklab - command-line laboratory for H-Toeplitz operators on the Fock space.
//
// Subcommands: matrix, apply, commutator, hsnorm, defect, berezin, graph, verify.
// Exit codes: 0 success, 2 input error, 3 resource limit, 4 verification or
// stability failure.  Numeric flags honor FOCKLAB_* environment variables with
// precedence flag > environment > default.  Identical invocations produce
// byte-identical standard output; timing goes to stderr.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "focklab/analysis.hpp"
#include "focklab/errors.hpp"
#include "focklab/fock_core.hpp"
#include "focklab/hgraph.hpp"
#include "focklab/operators.hpp"
#include "focklab/oracle.hpp"
#include "focklab/symbols.hpp"
#include "focklab/verify.hpp"

namespace {

using focklab::Complex;
using focklab::FockWeight;
using focklab::HarmonicSymbol;

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw focklab::InputError("cannot open output file '" + path + "'");
    os << text;
    if (!os) throw focklab::InputError("failed while writing '" + path + "'");
}

void print_error_json(const std::string& type, const std::string& message) {
    const nlohmann::json j{{"error", {{"type", type}, {"message", message}}}};
    std::fprintf(stderr, "%s\n", j.dump().c_str());
}

std::string dumped(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string tok = text.substr(pos, comma - pos);
        if (tok.empty())
            throw focklab::InputError(std::string(what) + ": empty element in list '" +
                                      text + "'");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw focklab::InputError(std::string(what) + ": cannot parse '" + tok + "'");
        }
        if (used != tok.size())
            throw focklab::InputError(std::string(what) + ": trailing characters in '" +
                                      tok + "'");
        out.push_back(v);
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    if (text.empty()) return out;
    for (double v : parse_double_list(text, what)) {
        const int k = static_cast<int>(v);
        if (static_cast<double>(k) != v)
            throw focklab::InputError(std::string(what) + ": expected integers in '" +
                                      text + "'");
        out.push_back(k);
    }
    return out;
}

// ---------------------------------------------------------------------------

struct MatrixArgs {
    std::string symbol;
    std::string kind = "htoeplitz";
    int rows = 8;
    int cols = 8;
    double alpha = 1.0;
    std::string format = "csv";
    std::string output;
    std::string assembly = "parallel";
};

int cmd_matrix(const MatrixArgs& a) {
    const HarmonicSymbol phi = HarmonicSymbol::parse(a.symbol);
    const FockWeight w{a.alpha};
    const auto mode = a.assembly == "serial" ? focklab::Assembly::serial
                                             : focklab::Assembly::parallel;
    const focklab::TruncatedOperator op =
        focklab::build(focklab::kind_from_name(a.kind), phi, a.rows, a.cols, w, mode);
    emit(a.format == "json" ? dumped(focklab::to_json(op)) : focklab::to_csv(op), a.output);
    return 0;
}

struct ApplyArgs {
    std::string symbol;
    std::string kind = "htoeplitz";
    int basis = 0;
    double alpha = 1.0;
    std::string output;
};

int cmd_apply(const ApplyArgs& a) {
    const HarmonicSymbol phi = HarmonicSymbol::parse(a.symbol);
    if (a.basis < 0) throw focklab::InputError("basis index must be >= 0");
    const FockWeight w{a.alpha};
    const focklab::FockVector e = focklab::FockVector::basis(a.basis, w);
    focklab::FockVector image(w);
    const auto kind = focklab::kind_from_name(a.kind);
    switch (kind) {
        case focklab::OperatorKind::toeplitz:
            image = focklab::apply_toeplitz_exact(phi, e);
            break;
        case focklab::OperatorKind::hankel:
            image = focklab::apply_hankel_exact(phi, e);
            break;
        default: image = focklab::apply_htoeplitz_exact(phi, e); break;
    }
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [n, c] : image.coeffs()) coeffs.push_back({n, c.real(), c.imag()});
    emit(dumped({{"symbol", phi.render()},
                 {"kind", a.kind},
                 {"alpha", a.alpha},
                 {"basis_index", a.basis},
                 {"coefficients", coeffs},
                 {"norm", image.norm()}}),
         a.output);
    return 0;
}

struct CommutatorArgs {
    std::string phi;
    std::string psi;
    int block = 8;
    double alpha = 1.0;
    double tolerance = 1e-10;
    std::string output;
};

int cmd_commutator(const CommutatorArgs& a) {
    const HarmonicSymbol phi = HarmonicSymbol::parse(a.phi);
    const HarmonicSymbol psi = HarmonicSymbol::parse(a.psi);
    const focklab::CommutatorReport rep =
        focklab::commutator_report(phi, psi, a.block, FockWeight{a.alpha}, a.tolerance);
    emit(dumped(rep.to_json()), a.output);
    return 0;
}

struct HsnormArgs {
    std::string symbol;
    int ncols = 16;
    double alpha = 1.0;
    std::string output;
};

int cmd_hsnorm(const HsnormArgs& a) {
    const HarmonicSymbol phi = HarmonicSymbol::parse(a.symbol);
    const auto sums = focklab::hs_partial_sums(phi, a.ncols, FockWeight{a.alpha});
    emit(dumped({{"symbol", phi.render()},
                 {"alpha", a.alpha},
                 {"ncols", a.ncols},
                 {"partial_sums", sums},
                 {"final", sums.back()}}),
         a.output);
    return 0;
}

struct DefectArgs {
    std::string symbol;
    int nmax = 24;
    double alpha = 1.0;
    std::string output;
};

int cmd_defect(const DefectArgs& a) {
    const HarmonicSymbol phi = HarmonicSymbol::parse(a.symbol);
    const focklab::DefectSequence seq =
        focklab::defect_sequence(phi, a.nmax, FockWeight{a.alpha});
    emit(dumped(seq.to_json()), a.output);
    return 0;
}

struct BerezinArgs {
    std::string symbol;
    std::string radii = "0,1,2,3,4,5";
    double alpha = 1.0;
    bool quadrature = false;
    std::string output;
};

int cmd_berezin(const BerezinArgs& a) {
    const HarmonicSymbol phi = HarmonicSymbol::parse(a.symbol);
    const FockWeight w{a.alpha};
    const auto radii = parse_double_list(a.radii, "--radii");
    for (double r : radii)
        if (!(r >= 0.0) || !std::isfinite(r))
            throw focklab::InputError("--radii: radii must be finite and >= 0");
    const auto sampled = focklab::oracle::SampledSymbol::from_symbol(phi);
    nlohmann::json values = nlohmann::json::array();
    for (double r : radii) {
        const Complex z{r, 0.0};
        const Complex v = focklab::berezin(phi, z, w);
        nlohmann::json row{{"r", r}, {"value", {v.real(), v.imag()}}};
        if (a.quadrature) {
            const Complex q = focklab::berezin_by_quadrature(sampled, z, w);
            row["quadrature"] = {q.real(), q.imag()};
            row["gap"] = std::abs(v - q);
        }
        values.push_back(std::move(row));
    }
    emit(dumped({{"symbol", phi.render()}, {"alpha", a.alpha}, {"values", values}}),
         a.output);
    return 0;
}

struct GraphArgs {
    std::string symbol;
    std::string params;
    int n = 9;
    double alpha = 1.0;
    double eps = 1e-12;
    bool zero_offset = false;
    std::string format = "dot";
    std::string output;
};

int cmd_graph(const GraphArgs& a) {
    if (a.symbol.empty() == a.params.empty())
        throw focklab::InputError("pass exactly one of --symbol or --params");
    focklab::HGraph g;
    nlohmann::json extra;
    if (!a.symbol.empty()) {
        const HarmonicSymbol phi = HarmonicSymbol::parse(a.symbol);
        g = focklab::graph_from_symbol(phi, a.n, FockWeight{a.alpha}, a.eps);
        const focklab::SymbolParams p = focklab::symbol_to_params(phi);
        extra["caption"] = p.caption();
        extra["params"] = {{"xs", p.xs}, {"ys", p.ys}, {"zero_offset", p.zero_offset_flag}};
    } else {
        const std::size_t semi = a.params.find(';');
        if (semi == std::string::npos)
            throw focklab::InputError("--params must look like 'x1,x2;y1,y2' (either side "
                                      "may be empty)");
        const auto xs = parse_int_list(a.params.substr(0, semi), "--params xs");
        const auto ys = parse_int_list(a.params.substr(semi + 1), "--params ys");
        g = focklab::graph_from_params(a.n, xs, ys, a.zero_offset);
    }
    if (a.format == "dot") {
        emit(g.to_dot(), a.output);
    } else if (a.format == "csv") {
        emit(g.to_csv(), a.output);
    } else {
        nlohmann::json j = g.to_json();
        j["degree_report"] = focklab::degree_report(g).to_json();
        for (auto& [k, v] : extra.items()) j[k] = v;
        emit(dumped(j), a.output);
    }
    return 0;
}

struct VerifyArgs {
    std::string format = "text";
    std::string output;
};

int cmd_verify(const VerifyArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<focklab::CheckResult> results = focklab::run_verification();
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;

    if (a.format == "json") {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& r : results)
            checks.push_back({{"id", r.id},
                              {"name", r.name},
                              {"pass", r.pass},
                              {"detail", r.detail}});
        emit(dumped({{"checks", checks},
                     {"total", results.size()},
                     {"failed", failed},
                     {"exit_code", focklab::verification_exit_code(results)}}),
             a.output);
    } else {
        std::string out;
        for (const auto& r : results) {
            out += (r.pass ? "  ok  " : " FAIL ") + r.id;
            out.append(r.id.size() < 34 ? 34 - r.id.size() : 1, ' ');
            out += r.name + "\n";
            if (!r.pass) out += "       -> " + r.detail + "\n";
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "summary: %zu checks, %d failed\n", results.size(),
                      failed);
        out += buf;
        emit(out, a.output);
    }
    std::fprintf(stderr, "verification wall time: %.1f s\n", total);
    return focklab::verification_exit_code(results);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"focklab - H-Toeplitz operators on the Fock space"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "focklab 1.0.0");

    MatrixArgs ma;
    auto* m = app.add_subcommand("matrix", "assemble a truncated operator block");
    m->add_option("--symbol", ma.symbol, "harmonic polynomial, e.g. 'z^2+3conj(z)'")
        ->required();
    m->add_option("--kind", ma.kind, "operator kind")
        ->check(CLI::IsMember({"toeplitz", "hankel", "htoeplitz"}))
        ->envname("FOCKLAB_KIND");
    m->add_option("--rows", ma.rows, "row count")->envname("FOCKLAB_ROWS");
    m->add_option("--cols", ma.cols, "column count")->envname("FOCKLAB_COLS");
    m->add_option("--alpha", ma.alpha, "Fock weight")->envname("FOCKLAB_ALPHA");
    m->add_option("--format", ma.format)->check(CLI::IsMember({"csv", "json"}));
    m->add_option("--output", ma.output, "write here instead of stdout");
    m->add_option("--assembly", ma.assembly, "entry-fill strategy")
        ->check(CLI::IsMember({"serial", "parallel"}))
        ->envname("FOCKLAB_ASSEMBLY");

    ApplyArgs aa;
    auto* ap = app.add_subcommand("apply", "apply an operator to a basis vector exactly");
    ap->add_option("--symbol", aa.symbol)->required();
    ap->add_option("--kind", aa.kind)
        ->check(CLI::IsMember({"toeplitz", "hankel", "htoeplitz"}))
        ->envname("FOCKLAB_KIND");
    ap->add_option("--basis", aa.basis, "basis index n of e_n");
    ap->add_option("--alpha", aa.alpha)->envname("FOCKLAB_ALPHA");
    ap->add_option("--output", aa.output);

    CommutatorArgs ca;
    auto* cm = app.add_subcommand("commutator", "corner norm of [S_phi, S_psi]");
    cm->add_option("--phi", ca.phi)->required();
    cm->add_option("--psi", ca.psi)->required();
    cm->add_option("--block", ca.block, "corner size N0")->envname("FOCKLAB_BLOCK");
    cm->add_option("--alpha", ca.alpha)->envname("FOCKLAB_ALPHA");
    cm->add_option("--tolerance", ca.tolerance, "commuting verdict threshold")
        ->envname("FOCKLAB_TOL");
    cm->add_option("--output", ca.output);

    HsnormArgs ha;
    auto* hs = app.add_subcommand("hsnorm", "Hilbert-Schmidt partial sums of S_phi");
    hs->add_option("--symbol", ha.symbol)->required();
    hs->add_option("--ncols", ha.ncols, "number of columns summed")
        ->envname("FOCKLAB_NCOLS");
    hs->add_option("--alpha", ha.alpha)->envname("FOCKLAB_ALPHA");
    hs->add_option("--output", ha.output);

    DefectArgs da;
    auto* df = app.add_subcommand("defect", "compactness defect sequence");
    df->add_option("--symbol", da.symbol)->required();
    df->add_option("--nmax", da.nmax, "largest basis index")->envname("FOCKLAB_NMAX");
    df->add_option("--alpha", da.alpha)->envname("FOCKLAB_ALPHA");
    df->add_option("--output", da.output);

    BerezinArgs ba;
    auto* bz = app.add_subcommand("berezin", "Berezin transform along real radii");
    bz->add_option("--symbol", ba.symbol)->required();
    bz->add_option("--radii", ba.radii, "comma-separated radii");
    bz->add_option("--alpha", ba.alpha)->envname("FOCKLAB_ALPHA");
    bz->add_flag("--quadrature", ba.quadrature,
                 "also evaluate the integral representation and report the gap");
    bz->add_option("--output", ba.output);

    GraphArgs ga;
    auto* gr = app.add_subcommand("graph", "directed H-Toeplitz graph");
    gr->add_option("--symbol", ga.symbol, "derive the graph from a symbol");
    gr->add_option("--params", ga.params, "offset lists 'x1,x2;y1,y2'");
    gr->add_option("--n", ga.n, "vertex count")->envname("FOCKLAB_N");
    gr->add_option("--alpha", ga.alpha)->envname("FOCKLAB_ALPHA");
    gr->add_option("--eps", ga.eps, "relative indicator threshold")->envname("FOCKLAB_EPS");
    gr->add_flag("--zero-offset", ga.zero_offset, "include the x = 0 diagonal rule");
    gr->add_option("--format", ga.format)->check(CLI::IsMember({"dot", "csv", "json"}));
    gr->add_option("--output", ga.output);

    VerifyArgs va;
    auto* vf = app.add_subcommand("verify", "run the full identity/oracle check suite");
    vf->add_option("--format", va.format)->check(CLI::IsMember({"text", "json"}));
    vf->add_option("--output", va.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error_json("input", e.what());
        return 2;
    }

    try {
        if (m->parsed()) return cmd_matrix(ma);
        if (ap->parsed()) return cmd_apply(aa);
        if (cm->parsed()) return cmd_commutator(ca);
        if (hs->parsed()) return cmd_hsnorm(ha);
        if (df->parsed()) return cmd_defect(da);
        if (bz->parsed()) return cmd_berezin(ba);
        if (gr->parsed()) return cmd_graph(ga);
        if (vf->parsed()) return cmd_verify(va);
    } catch (const focklab::SymbolParseError& e) {
        print_error_json("input", e.what());
        return 2;
    } catch (const focklab::SizeLimitError& e) {
        print_error_json("limit", e.what());
        return 3;
    } catch (const focklab::StabilityError& e) {
        print_error_json("stability", e.what());
        return 4;
    } catch (const focklab::InputError& e) {
        print_error_json("input", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error_json("internal", e.what());
        return 2;
    }
    return 0;
}
