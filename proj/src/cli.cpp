#include "ectff/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ectff/catalog.hpp"
#include "ectff/designs.hpp"
#include "ectff/error.hpp"
#include "ectff/frames.hpp"
#include "ectff/harmonic.hpp"
#include "ectff/io.hpp"
#include "ectff/triples.hpp"

namespace ectff::cli {

using io::json;

namespace {

struct Options {
    bool json = false;
    bool pretty = false;
    std::int64_t D = 0, N = 0, R = 0;

    // orbit
    int window = 16;
    std::optional<int> kmin, kmax;
    std::string chain;
    int steps = 6;
    bool plot = false;

    // certify
    std::string field = "complex";
    std::string catalog;
    std::string batch;

    // construct / verify / complement
    std::string kind;
    std::string input;
    std::string in, in2;
    std::string bibd;
    std::vector<std::int64_t> complete;
    int r = 1;
    int d = 0, n = 0;
    std::string group, subgroup, set;
    double tol = kDefaultVerifyTol;

    // search-df
    std::int64_t k = 0, lambda = 0;
    std::size_t limit = 1;
    std::uint64_t max_nodes = 0;
};

class Emitter {
public:
    Emitter(const Options& o, std::ostream& out) : o_(o), out_(out) {}
    bool structured() const { return o_.json || o_.pretty; }
    void json_out(const json& j) const { out_ << (o_.pretty ? j.dump(2) : j.dump()) << "\n"; }
    std::ostream& text() const { return out_; }

private:
    const Options& o_;
    std::ostream& out_;
};

std::string read_all(std::istream& s) {
    std::stringstream ss;
    ss << s.rdbuf();
    return ss.str();
}

json read_json_input(const std::string& path, std::istream& in, const std::string& what) {
    if (path.empty() || path == "-") return io::parse_text(read_all(in), what + " (stdin)");
    return io::read_file(path);
}

ParamTriple query(const Options& o) { return {o.D, o.N, o.R}; }

ExistenceTables load_tables(const Options& o) {
    if (!o.catalog.empty()) return ExistenceTables::from_file(o.catalog);
    if (const char* env = std::getenv("ECTFF_CATALOG"); env && *env) return ExistenceTables::from_file(env);
    return ExistenceTables::builtin();
}

// Edge between sequence entries k and k+1.
Move edge_move(int k) {
    if (k >= 0) return (k + 1) % 2 ? Move::Naimark : Move::Spatial;
    return (-k) % 2 ? Move::Spatial : Move::Naimark;
}

std::string move_symbol(Move m) { return m == Move::Naimark ? "N" : "s"; }

void emit_sequence(const Emitter& em, const Options& o, const std::vector<ParamTriple>& seq,
                   const std::vector<Move>& moves, int first_k) {
    if (o.plot) {
        json nodes = json::array(), edges = json::array();
        for (const auto& t : seq) nodes.push_back({t.D, t.R});
        for (std::size_t i = 0; i < moves.size(); ++i) edges.push_back({i, i + 1, to_string(moves[i])});
        em.json_out({{"n", o.N}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}});
        return;
    }
    if (em.structured()) {
        json arr = json::array();
        for (const auto& t : seq) arr.push_back(io::to_json(t));
        em.json_out(arr);
        return;
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const int k = first_k + static_cast<int>(i);
        em.text() << std::setw(4) << k << "  " << to_string(seq[i]);
        if (k == 0 && first_k <= 0) em.text() << "  *";
        if (i < moves.size()) em.text() << "  -" << move_symbol(moves[i]) << "-";
        em.text() << "\n";
    }
}

int cmd_orbit(const Emitter& em, const Options& o) {
    const ParamTriple t = query(o);
    if (!o.chain.empty()) {
        if (o.chain != "naimark" && o.chain != "spatial")
            throw DomainError("--chain must be 'naimark' or 'spatial', got '" + o.chain + "'");
        if (o.steps < 0 || o.steps > OrbitOptions{}.max_steps)
            throw DomainError("--steps must lie in [0, " + std::to_string(OrbitOptions{}.max_steps) + "]");
        std::vector<ParamTriple> seq{t};
        std::vector<Move> moves;
        Move m = o.chain == "naimark" ? Move::Naimark : Move::Spatial;
        for (int i = 0; i < o.steps; ++i) {
            seq.push_back(apply(m, seq.back()));
            moves.push_back(m);
            m = m == Move::Naimark ? Move::Spatial : Move::Naimark;
        }
        emit_sequence(em, o, seq, moves, 0);
        return 0;
    }
    int lo, hi;
    if (o.kmin || o.kmax) {
        if (!(o.kmin && o.kmax)) throw DomainError("--kmin and --kmax must be given together");
        lo = *o.kmin;
        hi = *o.kmax;
        if (lo > hi) throw DomainError("--kmin must not exceed --kmax");
    } else {
        if (o.window < 0) throw DomainError("--window must be >= 0");
        lo = -(o.window / 2);
        hi = o.window - o.window / 2;
    }
    auto seq = sequence(t, lo, hi);
    std::vector<Move> moves;
    for (int k = lo; k < hi; ++k) moves.push_back(edge_move(k));
    emit_sequence(em, o, seq, moves, lo);
    return 0;
}

int cmd_classify(const Emitter& em, const Options& o) {
    const ParamTriple t = query(o);
    OrbitClass c = classify(t);
    if (em.structured()) return em.json_out(io::to_json(c, t)), 0;
    em.text() << "triple:  " << to_string(t) << "\n"
              << "f:       " << invariant(t) << "\n"
              << "class:   " << to_string(c.tag) << "\n"
              << "minimal: " << (c.minimal_point ? to_string(*c.minimal_point) : "none") << "\n";
    return 0;
}

int cmd_exists(const Emitter& em, const Options& o) {
    const ParamTriple t = query(o);
    ExistenceVerdict v = tff_exists(t);
    if (em.structured()) {
        json j = io::to_json(v);
        j["query"] = io::to_json(t);
        return em.json_out(j), 0;
    }
    em.text() << "TFF" << to_string(t) << " exists: " << (v.exists ? "yes" : "no") << "\n";
    if (v.exists) {
        em.text() << "seed:  " << to_string(*v.seed) << "\n" << "chain:";
        for (Move m : v.chain) em.text() << " " << to_string(m);
        em.text() << (v.chain.empty() ? " (none)\n" : "\n");
    }
    return 0;
}

void print_report_text(const Emitter& em, const CertificationReport& r) {
    em.text() << "query:    " << to_string(r.query) << " (" << to_string(r.field) << ")\n"
              << "f:        " << r.f_value << "\n"
              << "minimal:  " << (r.minimal ? to_string(*r.minimal) : "none") << "\n"
              << "verdict:  " << to_string(r.verdict) << "\n"
              << "catalog:  " << r.catalog_version << " " << r.catalog_hash << "\n"
              << "narrative:\n";
    for (const auto& line : r.narrative) em.text() << "  - " << line << "\n";
}

std::vector<ParamTriple> read_batch(const std::string& path, std::istream& in) {
    std::string text;
    if (path == "-") {
        text = read_all(in);
    } else {
        std::ifstream f(path);
        if (!f) throw DomainError("cannot open batch file '" + path + "'");
        text = read_all(f);
    }
    std::vector<ParamTriple> out;
    std::istringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        ParamTriple t;
        if (!(ls >> t.D)) continue;
        std::string rest;
        if (!(ls >> t.N >> t.R) || (ls >> rest))
            throw DomainError("batch line " + std::to_string(lineno) + ": expected \"D N R\"");
        out.push_back(t);
    }
    return out;
}

int cmd_certify(const Emitter& em, const Options& o, std::istream& in) {
    const Field field = parse_field(o.field);
    Catalog cat(load_tables(o));
    if (!o.batch.empty()) {
        auto triples = read_batch(o.batch, in);
        if (em.structured()) {
            json arr = json::array();
            for (const auto& t : triples) arr.push_back(io::to_json(cat.certify(t, field)));
            return em.json_out(arr), 0;
        }
        for (const auto& t : triples) {
            auto r = cat.certify(t, field);
            em.text() << t.D << " " << t.N << " " << t.R << "  " << to_string(r.verdict) << "  minimal "
                      << (r.minimal ? to_string(*r.minimal) : "none") << "\n";
        }
        return 0;
    }
    auto r = cat.certify(query(o), field);
    if (em.structured()) return em.json_out(io::to_json(r)), 0;
    print_report_text(em, r);
    return 0;
}

FusionFrame frame_input(const std::string& path, std::istream& in) {
    return io::frame_from_json(read_json_input(path, in, "frame"));
}

int cmd_construct(const Emitter& em, const Options& o, std::istream& in) {
    const std::string& k = o.kind;
    const std::string src = !o.input.empty() ? o.input : o.in;
    std::optional<FusionFrame> f;
    if (k == "trivial") {
        f = construct_trivial({o.d, o.n, o.r});
    } else if (k == "zauner") {
        Bibd b;
        if (!o.bibd.empty()) b = io::bibd_from_json(read_json_input(o.bibd, in, "bibd"));
        else if (o.complete.size() == 2) b = complete_design(o.complete[0], o.complete[1]);
        else throw DomainError("construct zauner needs --bibd FILE or --complete V K");
        f = construct_zauner(b);
    } else if (k == "c2r4r") {
        f = construct_2R_4_R(o.r, parse_field(o.field));
    } else if (k == "f0-real") {
        f = construct_f0_real(o.r);
    } else if (k == "naimark") {
        f = naimark_complement(frame_input(src, in), o.tol);
    } else if (k == "spatial") {
        f = spatial_complement(frame_input(src, in));
    } else if (k == "hoggar") {
        f = hoggar_realify(frame_input(src, in));
    } else if (k == "dsum") {
        if (o.in2.empty()) throw DomainError("construct dsum needs --in2 FILE");
        f = direct_sum(frame_input(src, in), frame_input(o.in2, in));
    } else if (k == "harmonic") {
        if (o.group.empty() || o.set.empty()) throw DomainError("construct harmonic needs --group and --set");
        AbelianGroup G = AbelianGroup::parse(o.group);
        Subgroup H = o.subgroup.empty() ? whole_group(G) : parse_subgroup(G, o.subgroup);
        json s = io::parse_text(o.set, "--set");
        if (!s.is_array()) throw DomainError("--set must be a JSON array of elements");
        std::vector<GroupElement> elems;
        for (const auto& e : s) elems.push_back(e.is_number_integer() ? GroupElement{e.get<std::int64_t>()} : e.get<GroupElement>());
        HarmonicOptions opt;
        opt.tol = o.tol;
        f = build({G, H, to_subset(G, elems)}, opt).frame;
    } else if (k == "from-df") {
        HarmonicOptions opt;
        opt.tol = o.tol;
        f = from_df(io::df_from_json(read_json_input(src, in, "df")), opt).frame;
    } else {
        throw DomainError("unknown construction '" + k +
                          "' (expected trivial, zauner, c2r4r, f0-real, naimark, spatial, hoggar, dsum, harmonic, from-df)");
    }
    em.json_out(io::to_json(*f));
    return 0;
}

int cmd_verify(const Emitter& em, const Options& o, std::istream& in) {
    const std::string src = !o.input.empty() ? o.input : o.in;
    VerificationReport r = verify(frame_input(src, in), o.tol);
    if (em.structured()) return em.json_out(io::to_json(r)), 0;
    auto b = [](bool x) { return x ? "true" : "false"; };
    std::ostream& s = em.text();
    s << "params=" << to_string(r.params) << " field=" << to_string(r.field) << "\n"
      << "tight=" << b(r.is_tight) << " residual=" << r.tight_residual << " constant=" << r.tight_constant << "\n"
      << "equichordal=" << b(r.is_equichordal) << " trace=[" << r.trace_min << ", " << r.trace_max << "] target="
      << r.trace_target.num << "/" << r.trace_target.den << "\n"
      << "equiisoclinic=" << b(r.is_equiisoclinic) << " spread=" << r.ei_spread << "\n"
      << "tol=" << r.tol << "\n";
    for (const auto& n : r.notes) s << "note: " << n << "\n";
    return 0;
}

int cmd_search(const Emitter& em, const Options& o) {
    if (o.group.empty()) throw DomainError("search-df needs --group");
    AbelianGroup G = AbelianGroup::parse(o.group);
    DfSearchOptions opt;
    opt.limit = o.limit;
    opt.max_nodes = o.max_nodes;
    DfSearchResult r = search_df(G, o.k, o.lambda, opt);
    if (em.structured()) return em.json_out(io::to_json(r)), 0;
    const char* how = !r.complete                                       ? "node budget exhausted"
                      : (opt.limit && r.families.size() >= opt.limit) ? "stopped at --limit"
                                                                      : "exhaustive";
    em.text() << r.families.size() << " famil" << (r.families.size() == 1 ? "y" : "ies") << " (" << how << ", "
              << r.nodes << " nodes)\n";
    for (const auto& f : r.families) em.text() << io::to_json(f)["blocks"].dump() << "\n";
    return 0;
}

int cmd_complement(const Emitter& em, const Options& o, std::istream& in) {
    const std::string src = o.in;
    if (o.kind == "naimark") return em.json_out(io::to_json(naimark_complement(frame_input(src, in), o.tol))), 0;
    if (o.kind == "spatial") return em.json_out(io::to_json(spatial_complement(frame_input(src, in)))), 0;
    throw DomainError("complement must be 'naimark' or 'spatial', got '" + o.kind + "'");
}

void add_triple(CLI::App* sub, Options& o) {
    sub->add_option("D", o.D, "dimension")->required();
    sub->add_option("N", o.N, "number of subspaces")->required();
    sub->add_option("R", o.R, "subspace dimension")->required();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
    Options o;
    CLI::App app{"Naimark-spatial orbits, harmonic constructions and novelty certification for tight fusion frames", "ectff"};
    app.require_subcommand(1);
    app.fallthrough();
    auto* jflag = app.add_flag("--json", o.json, "compact JSON output");
    auto* pflag = app.add_flag("--pretty", o.pretty, "indented JSON output");
    jflag->excludes(pflag);

    auto* orbit = app.add_subcommand("orbit", "entries of the Naimark-spatial sequence");
    add_triple(orbit, o);
    orbit->add_option("--window", o.window, "window width W: entries -floor(W/2)..ceil(W/2)");
    orbit->add_option("--kmin", o.kmin, "first index");
    orbit->add_option("--kmax", o.kmax, "last index");
    orbit->add_option("--chain", o.chain, "one-sided chain starting with naimark or spatial");
    orbit->add_option("--steps", o.steps, "chain length");
    orbit->add_flag("--emit-plot-data", o.plot, "dump (D,R) nodes and edges as JSON");

    auto* cls = app.add_subcommand("classify", "orbit class and minimal point");
    add_triple(cls, o);

    auto* ex = app.add_subcommand("exists", "decide whether a TFF exists");
    add_triple(ex, o);

    auto* cert = app.add_subcommand("certify", "certify an ECTFF parameter triple against the catalog");
    cert->add_option("D", o.D, "dimension");
    cert->add_option("N", o.N, "number of subspaces");
    cert->add_option("R", o.R, "subspace dimension");
    cert->add_option("--field", o.field, "real or complex");
    cert->add_option("--catalog", o.catalog, "catalog JSON (default: $ECTFF_CATALOG, then built-in)");
    cert->add_option("--batch", o.batch, "file of \"D N R\" lines, or - for stdin");

    auto* cons = app.add_subcommand("construct", "build a fusion frame and print it as JSON");
    cons->add_option("kind", o.kind, "trivial|zauner|c2r4r|f0-real|naimark|spatial|hoggar|dsum|harmonic|from-df")->required();
    cons->add_option("input", o.input, "input file (from-df, naimark, spatial, hoggar, dsum); - for stdin");
    cons->add_option("--in", o.in, "input frame or DF file");
    cons->add_option("--in2", o.in2, "second frame (dsum)");
    cons->add_option("--bibd", o.bibd, "BIBD JSON file (zauner)");
    cons->add_option("--complete", o.complete, "complete design V K (zauner)")->expected(2);
    cons->add_option("--d", o.d, "dimension (trivial)");
    cons->add_option("--n", o.n, "number of subspaces (trivial)");
    cons->add_option("--r", o.r, "subspace dimension");
    cons->add_option("--field", o.field, "real or complex (c2r4r)");
    cons->add_option("--group", o.group, "group literal, e.g. Z13xZ2 (harmonic)");
    cons->add_option("--subgroup", o.subgroup, "subgroup literal (harmonic; default whole group)");
    cons->add_option("--set", o.set, "JSON array of elements (harmonic)");
    cons->add_option("--tol", o.tol, "verification tolerance");

    auto* ver = app.add_subcommand("verify", "check tightness, equichordality and equi-isoclinicity");
    ver->add_option("input", o.input, "frame JSON file (default stdin)");
    ver->add_option("--in", o.in, "frame JSON file");
    ver->add_option("--tol", o.tol, "tolerance (scaled by the frame bound)");

    auto* sdf = app.add_subcommand("search-df", "backtracking search for difference families");
    sdf->add_option("--group", o.group, "group literal")->required();
    sdf->add_option("--k", o.k, "block size")->required();
    sdf->add_option("--lambda", o.lambda, "lambda")->required();
    sdf->add_option("--limit", o.limit, "stop after this many families");
    sdf->add_option("--max-nodes", o.max_nodes, "node budget (0 = unbounded)");

    auto* comp = app.add_subcommand("complement", "Naimark or spatial complement of a frame");
    comp->add_option("kind", o.kind, "naimark|spatial")->required();
    comp->add_option("--in", o.in, "frame JSON (default stdin)");
    comp->add_option("--tol", o.tol, "tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = e.get_exit_code();
        if (code == 0) return app.exit(e, out, err);
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    Emitter em(o, out);
    try {
        if (orbit->parsed()) return cmd_orbit(em, o);
        if (cls->parsed()) return cmd_classify(em, o);
        if (ex->parsed()) return cmd_exists(em, o);
        if (cert->parsed()) {
            if (o.batch.empty() && cert->count("D") + cert->count("N") + cert->count("R") != 3) {
                err << "usage error: certify needs D N R or --batch FILE\n";
                return 2;
            }
            return cmd_certify(em, o, in);
        }
        if (cons->parsed()) return cmd_construct(em, o, in);
        if (ver->parsed()) return cmd_verify(em, o, in);
        if (sdf->parsed()) return cmd_search(em, o);
        if (comp->parsed()) return cmd_complement(em, o, in);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace ectff::cli
