#include <doctest.h>

#include <algorithm>
#include <map>

#include "ectff/designs.hpp"
#include "ectff/error.hpp"

using namespace ectff;

namespace {

// Counts each nonzero difference over all blocks; returns lambda if constant.
std::optional<std::int64_t> df_oracle(const AbelianGroup& G, const std::vector<Subset>& blocks) {
    std::map<std::size_t, std::int64_t> c;
    for (const auto& b : blocks)
        for (auto x : b)
            for (auto y : b)
                if (x != y) ++c[G.sub(x, y)];
    std::optional<std::int64_t> lam;
    for (std::size_t g = 1; g < G.order(); ++g) {
        std::int64_t v = c.count(g) ? c[g] : 0;
        if (lam && *lam != v) return std::nullopt;
        lam = v;
    }
    return lam;
}

}  // namespace

TEST_CASE("the DF(13,3,1)") {
    AbelianGroup G({13});
    auto df = verify_df(G, {{1, 3, 9}, {2, 5, 6}});
    REQUIRE(df);
    CHECK(df->lambda == 1);
    CHECK(df->V() == 13);
    CHECK(df->K() == 3);
    CHECK(df->R() == 2);
    CHECK_FALSE(verify_df(G, {{1, 3, 9}, {2, 5, 7}}));
    CHECK_THROWS_AS(verify_df(G, {{1, 3, 9}, {2, 5}}), DomainError);
    CHECK_THROWS_AS(verify_df(G, {{1, 1, 9}}), DomainError);
    CHECK_THROWS_AS(verify_df(G, {{1, 30, 9}}), DomainError);
}

TEST_CASE("DF search finds verified families") {
    for (auto [v, k, l] : std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>>{
             {13, 3, 1}, {19, 3, 1}, {7, 3, 1}, {11, 5, 2}, {9, 4, 3}, {16, 6, 2}}) {
        for (const auto& G : abelian_groups_of_order(v)) {
            DfSearchOptions opt;
            opt.limit = 3;
            auto r = search_df(G, k, l, opt);
            for (const auto& f : r.families) {
                CHECK(df_oracle(G, f.blocks) == l);
                for (const auto& b : f.blocks) CHECK(canonical_block(G, b) == b);
            }
            if (v != 16) CHECK_FALSE(r.families.empty());
        }
    }
}

TEST_CASE("no cyclic (16,6,2) difference set") {
    auto r = search_df(AbelianGroup({16}), 6, 2);
    CHECK(r.complete);
    CHECK(r.families.empty());
    auto e = search_df(AbelianGroup({2, 2, 2, 2}), 6, 2);
    CHECK_FALSE(e.families.empty());
}

TEST_CASE("DF search argument checks and budgets") {
    CHECK_THROWS_AS(search_df(AbelianGroup({9}), 3, 1), DomainError);  // 6 does not divide 8
    DfSearchOptions opt;
    opt.max_v = 10;
    CHECK_THROWS_AS(search_df(AbelianGroup({13}), 3, 1, opt), DomainError);
    DfSearchOptions tiny;
    tiny.max_nodes = 1;
    tiny.limit = 100;
    auto r = search_df(AbelianGroup({31}), 3, 1, tiny);
    CHECK_FALSE(r.complete);
}

TEST_CASE("search is deterministic and exhaustive counts are stable") {
    DfSearchOptions opt;
    opt.limit = 1000;
    auto a = search_df(AbelianGroup({13}), 3, 1, opt);
    auto b = search_df(AbelianGroup({13}), 3, 1, opt);
    REQUIRE(a.families.size() == b.families.size());
    CHECK(a.complete);
    for (std::size_t i = 0; i < a.families.size(); ++i) CHECK(a.families[i].blocks == b.families[i].blocks);
    CHECK(std::is_sorted(a.families.begin(), a.families.end(),
                         [](const auto& x, const auto& y) { return x.blocks < y.blocks; }));
}

TEST_CASE("complement families") {
    AbelianGroup G({13});
    auto df = *verify_df(G, {{1, 3, 9}, {2, 5, 6}});
    auto c = complement_family(df);
    CHECK(c.lambda == 1 + 2 * (13 - 6));
    CHECK(df_oracle(G, c.blocks) == c.lambda);
}

TEST_CASE("coset partitions") {
    AbelianGroup G({13, 2});
    Subgroup H = subgroup_generated(G, {{1, 0}});
    Subset D = to_subset(G, {{1, 0}, {3, 0}, {9, 0}, {2, 1}, {6, 1}, {5, 1}});
    auto p = partition_by_cosets(G, H, D);
    CHECK(p.constant_cardinality);
    CHECK(p.parts.size() == 2);
    CHECK(df_lambda_within(H, p.parts) == 1);
}

TEST_CASE("divisible difference sets") {
    // {0,1} in Z4 relative to {0,2}: differences 1 and 3 once, 2 never.
    AbelianGroup G({4});
    Subgroup H = subgroup_from_elements(G, {0, 2});
    auto d = verify_dds(G, H, {0, 1});
    REQUIRE(d);
    CHECK(d->lambda1 == 0);
    CHECK(d->lambda2 == 1);
    CHECK(d->relative);
    CHECK(d->semiregular);
    // A difference set is a DDS for the trivial subgroup with lambda1 = lambda2.
    AbelianGroup Z7({7});
    auto f = verify_dds(Z7, trivial_subgroup(Z7), {1, 2, 4});
    REQUIRE(f);
    CHECK(f->lambda1 == f->lambda2);
    CHECK_FALSE(verify_dds(Z7, trivial_subgroup(Z7), {1, 2, 3}));
}

TEST_CASE("BIBDs") {
    auto p = verify_bibd(complete_design(4, 2));
    REQUIRE(p);
    CHECK(p->v == 4);
    CHECK(p->b == 6);
    CHECK(p->r == 3);
    CHECK(p->k == 2);
    CHECK(p->lambda == 1);
    Bibd fano{7, {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2}}};
    auto q = verify_bibd(fano);
    REQUIRE(q);
    CHECK(q->lambda == 1);
    Bibd bad{4, {{0, 1}, {2, 3}}};
    CHECK_FALSE(verify_bibd(bad));
}
