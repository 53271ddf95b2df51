#include "ectff/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ectff/error.hpp"

namespace ectff::io {

namespace {

json element_json(const AbelianGroup& G, std::size_t idx) {
    GroupElement e = G.element(idx);
    if (G.rank() == 1) return e[0];
    return e;
}

std::size_t element_from_json(const AbelianGroup& G, const json& j) {
    GroupElement e;
    if (j.is_number_integer()) {
        if (G.rank() != 1) throw DomainError("df: integer elements need a cyclic group, got " + G.to_string());
        e = {j.get<std::int64_t>()};
    } else {
        e = j.get<GroupElement>();
    }
    if (!G.contains(e)) throw DomainError("df: element " + j.dump() + " is not in " + G.to_string());
    return G.index(e);
}

std::string rational(const Rational& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

}  // namespace

json to_json(const ParamTriple& t) { return json::array({t.D, t.N, t.R}); }

ParamTriple triple_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw DomainError("expected a [D, N, R] array, got " + j.dump());
    return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>()};
}

json to_json(const FusionFrame& f) {
    json blocks = json::array();
    for (const auto& B : f.blocks()) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < B.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index k = 0; k < B.cols(); ++k) row.push_back({B(i, k).real(), B(i, k).imag()});
            rows.push_back(std::move(row));
        }
        blocks.push_back(std::move(rows));
    }
    json j = {{"schema", "ectff-frame/1"}, {"dim", f.dim()}, {"n", f.n()}, {"r", f.r()},
              {"field", to_string(f.field())}, {"blocks", std::move(blocks)}};
    if (!f.notes().empty()) j["notes"] = f.notes();
    return j;
}

FusionFrame frame_from_json(const json& j, const Tolerances& tol) {
    if (!j.is_object() || j.value("schema", "") != "ectff-frame/1")
        throw DomainError("frame: expected \"schema\": \"ectff-frame/1\"");
    try {
        const int dim = j.at("dim").get<int>(), n = j.at("n").get<int>(), r = j.at("r").get<int>();
        const Field field = parse_field(j.at("field").get<std::string>());
        const json& bl = j.at("blocks");
        if (!bl.is_array() || static_cast<int>(bl.size()) != n)
            throw DomainError("frame: \"blocks\" must hold n = " + std::to_string(n) + " blocks");
        std::vector<Matrix> blocks;
        for (const auto& b : bl) {
            if (!b.is_array() || static_cast<int>(b.size()) != dim)
                throw DomainError("frame: every block needs dim = " + std::to_string(dim) + " rows");
            Matrix M(dim, r);
            for (int i = 0; i < dim; ++i) {
                const json& row = b[static_cast<std::size_t>(i)];
                if (!row.is_array() || static_cast<int>(row.size()) != r)
                    throw DomainError("frame: every row needs r = " + std::to_string(r) + " entries");
                for (int k = 0; k < r; ++k) {
                    const json& z = row[static_cast<std::size_t>(k)];
                    if (z.is_number()) M(i, k) = Complex(z.get<double>(), 0.0);
                    else if (z.is_array() && z.size() == 2) M(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
                    else throw DomainError("frame: entries must be numbers or [re, im] pairs");
                }
            }
            blocks.push_back(std::move(M));
        }
        return FusionFrame(dim, std::move(blocks), field, tol);
    } catch (const json::exception& e) {
        throw DomainError(std::string("frame: ") + e.what());
    }
}

json to_json(const VerificationReport& r) {
    json pairs = json::array();
    for (const auto& p : r.principal_angle_table) pairs.push_back({{"i", p.i}, {"j", p.j}, {"cos2", p.cos2}});
    json rep = json::array();
    for (const auto& [a, b] : r.repeated_pairs) rep.push_back({a, b});
    return {{"schema", "ectff-report/1"},
            {"params", to_json(r.params)},
            {"field", to_string(r.field)},
            {"tol", r.tol},
            {"tight", r.is_tight},
            {"tight_residual", r.tight_residual},
            {"tight_constant", r.tight_constant},
            {"equichordal", r.is_equichordal},
            {"trace_min", r.trace_min},
            {"trace_max", r.trace_max},
            {"trace_spread", r.trace_spread},
            {"trace_target", rational(r.trace_target)},
            {"equiisoclinic", r.is_equiisoclinic},
            {"ei_spread", r.ei_spread},
            {"ei_cos2_target", rational(r.ei_cos2_target)},
            {"block_coherence", r.block_coherence},
            {"min_chordal_sq", r.min_chordal_sq},
            {"principal_angles", std::move(pairs)},
            {"repeated_pairs", std::move(rep)},
            {"notes", r.notes}};
}

json to_json(const DifferenceFamily& df) {
    json blocks = json::array();
    for (const auto& b : df.blocks) {
        json jb = json::array();
        for (auto x : b) jb.push_back(element_json(df.group, x));
        blocks.push_back(std::move(jb));
    }
    json j = {{"schema", "ectff-df/1"}, {"group", df.group.to_string()}, {"v", df.V()},
              {"k", df.K()}, {"lambda", df.lambda}, {"blocks", std::move(blocks)}};
    if (df.within) {
        json w = json::array();
        for (auto x : df.within->elements) w.push_back(element_json(df.group, x));
        j["within"] = std::move(w);
    }
    return j;
}

DifferenceFamily df_from_json(const json& in) {
    const json* p = &in;
    if (in.is_object() && in.contains("families")) {
        if (!in["families"].is_array() || in["families"].empty()) throw DomainError("df: \"families\" is empty");
        p = &in["families"][0];
    }
    const json& j = *p;
    if (!j.is_object() || j.value("schema", "") != "ectff-df/1") throw DomainError("df: expected \"schema\": \"ectff-df/1\"");
    try {
        AbelianGroup G = AbelianGroup::parse(j.at("group").get<std::string>());
        std::vector<Subset> blocks;
        for (const auto& b : j.at("blocks")) {
            Subset s;
            for (const auto& e : b) s.push_back(element_from_json(G, e));
            std::sort(s.begin(), s.end());
            blocks.push_back(std::move(s));
        }
        std::optional<DifferenceFamily> df;
        if (j.contains("within")) {
            Subset w;
            for (const auto& e : j["within"]) w.push_back(element_from_json(G, e));
            Subgroup H = subgroup_from_elements(G, std::move(w));
            auto lam = df_lambda_within(H, blocks);
            if (lam) df = DifferenceFamily{G, blocks, *lam, H};
        } else {
            df = verify_df(G, blocks);
        }
        if (!df) throw DomainError("df: the blocks do not form a difference family");
        if (j.contains("lambda") && j["lambda"].get<std::int64_t>() != df->lambda)
            throw DomainError("df: stated lambda " + j["lambda"].dump() + " but the blocks give " + std::to_string(df->lambda));
        return *df;
    } catch (const json::exception& e) {
        throw DomainError(std::string("df: ") + e.what());
    }
}

json to_json(const DfSearchResult& r) {
    json fams = json::array();
    for (const auto& f : r.families) fams.push_back(to_json(f));
    return {{"families", std::move(fams)}, {"complete", r.complete}, {"nodes", r.nodes}};
}

json to_json(const Bibd& b) { return {{"v", b.v}, {"blocks", b.blocks}}; }

Bibd bibd_from_json(const json& j) {
    try {
        Bibd b;
        b.v = j.at("v").get<std::int64_t>();
        b.blocks = j.at("blocks").get<std::vector<std::vector<std::int64_t>>>();
        return b;
    } catch (const json::exception& e) {
        throw DomainError(std::string("bibd: expected {\"v\": V, \"blocks\": [...]}: ") + e.what());
    }
}

json to_json(const ExistenceVerdict& v) {
    json chain = json::array();
    for (Move m : v.chain) chain.push_back(to_string(m));
    json j = {{"exists", v.exists}, {"chain", std::move(chain)}};
    j["seed"] = v.seed ? to_json(*v.seed) : json(nullptr);
    return j;
}

json to_json(const OrbitClass& c, const ParamTriple& query) {
    json sample = json::array();
    for (const auto& t : c.orbit_sample) sample.push_back(to_json(t));
    json j = {{"query", to_json(query)}, {"class", to_string(c.tag)}, {"f", invariant(query)}, {"sample", std::move(sample)}};
    j["minimal_point"] = c.minimal_point ? to_json(*c.minimal_point) : json(nullptr);
    return j;
}

json to_json(const RuleEvaluation& e) {
    return {{"id", e.id}, {"kind", to_string(e.kind)}, {"outcome", to_string(e.outcome)},
            {"evidence", e.evidence}, {"provenance", e.provenance},
            {"counted", e.role == RuleRole::PriorArt}};
}

json to_json(const CertificationReport& r) {
    json rules = json::array(), cons = json::array();
    for (const auto& e : r.matched_rules) rules.push_back(to_json(e));
    for (const auto& e : r.constructions) cons.push_back(to_json(e));
    json j = {{"schema", "ectff-certification/1"},
              {"query", to_json(r.query)},
              {"field", to_string(r.field)},
              {"f", r.f_value},
              {"orbit_class", to_string(r.orbit_tag)},
              {"verdict", to_string(r.verdict)},
              {"rules", std::move(rules)},
              {"constructions", std::move(cons)},
              {"narrative", r.narrative},
              {"catalog", {{"version", r.catalog_version}, {"hash", r.catalog_hash}}}};
    j["minimal"] = r.minimal ? to_json(*r.minimal) : json(nullptr);
    if (r.tff) j["tff"] = to_json(*r.tff);
    return j;
}

json parse_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(what + ": malformed JSON: " + e.what());
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

}  // namespace ectff::io
