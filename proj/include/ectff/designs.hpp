#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ectff/groups.hpp"

namespace ectff {

// Blocks whose summed autocorrelation is lambda off the identity. When `within`
// is set the family lives in that subgroup of `group` (differences are still
// taken in `group`); otherwise it is a family for the whole group.
struct DifferenceFamily {
    AbelianGroup group;
    std::vector<Subset> blocks;
    std::int64_t lambda = 0;
    std::optional<Subgroup> within;

    std::size_t V() const { return within ? within->order() : group.order(); }
    std::size_t K() const { return blocks.empty() ? 0 : blocks.front().size(); }
    std::size_t R() const { return blocks.size(); }
};

struct DivisibleDifferenceSet {
    AbelianGroup group;
    Subgroup subgroup;
    Subset set;
    std::int64_t lambda1 = 0;
    std::int64_t lambda2 = 0;
    bool semiregular = false;
    bool relative = false;
};

struct CosetPartition {
    std::vector<std::size_t> representatives;  // least element of each coset of H
    std::vector<Subset> parts;                 // D_g = H intersect (D - g), as elements of H
    bool constant_cardinality = true;
};

std::optional<DifferenceFamily> verify_df(const AbelianGroup& group, const std::vector<Subset>& blocks);

// Summed autocorrelation restricted to H minus the identity, if constant. Blocks must lie in H;
// any positive block size is allowed (singletons give lambda 0).
std::optional<std::int64_t> df_lambda_within(const Subgroup& H, const std::vector<Subset>& blocks);

// Autocorrelation restricted to H minus the identity, if constant.
std::optional<std::int64_t> ds_lambda_within(const Subgroup& H, const Subset& block);

std::optional<DivisibleDifferenceSet> verify_dds(const AbelianGroup& group, const Subgroup& H, const Subset& set);

struct DfSearchOptions {
    std::size_t limit = 1;
    std::int64_t max_v = 64;
    std::uint64_t max_nodes = 0;  // 0 = unbounded
};

struct DfSearchResult {
    std::vector<DifferenceFamily> families;
    bool complete = true;  // false if the node budget ran out
    std::uint64_t nodes = 0;
};

// Exhaustive canonical backtracking; families come out in lexicographic order of
// their (sorted, translation-canonical) block lists.
DfSearchResult search_df(const AbelianGroup& group, std::int64_t K, std::int64_t lambda, const DfSearchOptions& opt = {});

// Least translate (lexicographically) among the translates of `block` that contain 0.
Subset canonical_block(const AbelianGroup& group, const Subset& block);

CosetPartition partition_by_cosets(const AbelianGroup& group, const Subgroup& H, const Subset& set);

// {V minus D_r}; lambda' = lambda + R(V - 2K).
DifferenceFamily complement_family(const DifferenceFamily& df);

// A design on points 0..v-1.
struct Bibd {
    std::int64_t v = 0;
    std::vector<std::vector<std::int64_t>> blocks;
};

struct BibdParams {
    std::int64_t v = 0, b = 0, r = 0, k = 0, lambda = 0;
};

std::optional<BibdParams> verify_bibd(const Bibd& design);

// All k-subsets of v points.
Bibd complete_design(std::int64_t v, std::int64_t k);

}  // namespace ectff
