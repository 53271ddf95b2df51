#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ectff/common.hpp"
#include "ectff/triples.hpp"

namespace ectff {

enum class FrameKind { EITFF, ECTFF };
std::string to_string(FrameKind k);

// PriorArt rules decide coverage. Construction rules describe the constructions this
// library certifies; they are evaluated and reported but never count toward coverage.
enum class RuleRole { PriorArt, Construction };

struct CatalogRule {
    std::string id;
    FrameKind kind = FrameKind::ECTFF;
    RuleRole role = RuleRole::PriorArt;
    std::string provenance;
    std::string summary;
};

struct RuleEvaluation {
    std::string id;
    FrameKind kind = FrameKind::ECTFF;
    RuleRole role = RuleRole::PriorArt;
    TriState outcome = TriState::No;
    std::string evidence;
    std::string provenance;
};

enum class Verdict { CoveredByCatalog, Novel, Indeterminate, SettledNegative, SettledByFNeg };
std::string to_string(Verdict v);

struct CertificationReport {
    ParamTriple query;
    Field field = Field::Complex;
    std::int64_t f_value = 0;
    OrbitTag orbit_tag = OrbitTag::FPos;
    std::optional<ParamTriple> minimal;
    Verdict verdict = Verdict::Indeterminate;
    std::vector<RuleEvaluation> matched_rules;   // prior-art rules, EITFF sub-catalog first
    std::vector<RuleEvaluation> constructions;   // construction rules (not part of the verdict)
    std::optional<ExistenceVerdict> tff;         // set when f < 0
    std::vector<std::string> narrative;
    std::string catalog_version;
    std::string catalog_hash;
};

// A table answer with a short reason.
struct Lookup {
    TriState value = TriState::Unknown;
    std::string reason;
};

struct CatalogLimits {
    int recursion_depth = 8;
    std::int64_t df_search_max_v = 16;
    std::uint64_t df_search_nodes = 50000;
};

// Existence tables. Anything not listed and not settled by a necessary condition or a
// classical family is Unknown, so adding entries only moves Unknown to Yes or No.
class ExistenceTables {
public:
    static ExistenceTables from_json(const std::string& text);
    static ExistenceTables from_file(const std::string& path);
    static const ExistenceTables& builtin();

    Lookup etf(std::int64_t D, std::int64_t N, Field field) const;
    Lookup quaternionic_etf(std::int64_t D, std::int64_t N) const;
    Lookup bibd(std::int64_t V, std::int64_t K, std::int64_t lambda) const;
    Lookup hadamard(std::int64_t n) const;

    bool eitff_sporadic(const ParamTriple& minimal) const;
    // Source of an explicit or numerically certified sporadic ECTFF.
    std::optional<std::string> sporadic_ectff(const ParamTriple& minimal) const;

    const CatalogLimits& limits() const { return limits_; }
    const std::string& version() const { return version_; }
    const std::string& hash() const { return hash_; }  // FNV-1a 64 of the canonical JSON
    const std::string& canonical_json() const { return canonical_; }

private:
    using Pair = std::pair<std::int64_t, std::int64_t>;
    using TripleKey = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

    Lookup bibd_impl(std::int64_t V, std::int64_t K, std::int64_t lambda, bool allow_complement) const;

    std::set<Pair> etf_yes_[2], etf_no_[2];  // index by Field
    std::set<Pair> quat_;
    std::set<TripleKey> bibd_yes_, bibd_no_;
    std::set<std::int64_t> plane_orders_;
    std::set<std::int64_t> hadamard_;
    std::int64_t hadamard_bound_ = 1000;
    std::int64_t hadamard_all_upto_ = 0;
    std::set<ParamTriple> eitff_sporadic_, ectff_explicit_, ectff_numerical_;
    CatalogLimits limits_;
    std::string version_, hash_, canonical_;
};

// (p, k) with n = p^k, k >= 1.
std::optional<std::pair<std::int64_t, int>> is_prime_power(std::int64_t n);
bool is_prime(std::int64_t n);

TriState hadamard_known(std::int64_t n, const ExistenceTables& tables = ExistenceTables::builtin());

// (2R,4,R): real EITFF iff R even, complex always. Other shapes give nullopt.
std::optional<TriState> eitff_parity_rule(const ParamTriple& t, Field field);

class Catalog {
public:
    Catalog();
    explicit Catalog(ExistenceTables tables);

    static const std::vector<CatalogRule>& rules();

    // Throws DomainError for an unknown id or a triple with D, R < 1 or N < 2.
    RuleEvaluation evaluate_rule(const std::string& id, const ParamTriple& minimal,
                                 Field field = Field::Complex) const;

    // Whether the prior-art catalog of `kind` covers the minimal triple.
    Lookup covered(FrameKind kind, const ParamTriple& minimal, Field field) const;

    CertificationReport certify(const ParamTriple& t, Field field = Field::Complex) const;

    const ExistenceTables& tables() const { return tables_; }

private:
    struct State;
    Lookup cover(FrameKind kind, const ParamTriple& t, Field field, int depth) const;
    Lookup qcover(const ParamTriple& t) const;
    RuleEvaluation eval(const CatalogRule& rule, const ParamTriple& t, Field field, int depth) const;

    ExistenceTables tables_;
    std::shared_ptr<State> state_;
};

}  // namespace ectff
