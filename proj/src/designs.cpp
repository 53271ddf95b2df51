#include "ectff/designs.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ectff/error.hpp"

namespace ectff {

namespace {

void check_block(const AbelianGroup& G, const Subset& b) {
    for (std::size_t x : b)
        if (x >= G.order()) throw DomainError("block element out of range for " + G.to_string());
    Subset s = b;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError("block contains a repeated element");
}

std::vector<std::int64_t> summed_autocorrelation(const AbelianGroup& G, const std::vector<Subset>& blocks) {
    std::vector<std::int64_t> acc(G.order(), 0);
    for (const Subset& b : blocks)
        for (std::size_t x : b)
            for (std::size_t y : b) ++acc[G.sub(x, y)];
    return acc;
}

}  // namespace

std::optional<DifferenceFamily> verify_df(const AbelianGroup& group, const std::vector<Subset>& blocks) {
    if (blocks.empty()) throw DomainError("verify_df needs at least one block");
    const std::size_t K = blocks.front().size();
    for (const Subset& b : blocks) {
        if (b.size() != K) throw DomainError("verify_df: blocks have unequal sizes");
        check_block(group, b);
    }
    if (K < 2) throw DomainError("verify_df: block size K must be at least 2");
    const auto acc = summed_autocorrelation(group, blocks);
    for (std::size_t g = 2; g < group.order(); ++g)
        if (acc[g] != acc[1]) return std::nullopt;
    DifferenceFamily df{group, {}, group.order() > 1 ? acc[1] : 0, std::nullopt};
    for (const Subset& b : blocks) {
        Subset s = b;
        std::sort(s.begin(), s.end());
        df.blocks.push_back(std::move(s));
    }
    return df;
}

std::optional<std::int64_t> df_lambda_within(const Subgroup& H, const std::vector<Subset>& blocks) {
    const AbelianGroup& G = H.parent;
    for (const Subset& b : blocks) {
        check_block(G, b);
        for (std::size_t x : b)
            if (!H.contains(x)) throw DomainError("block element lies outside the subgroup");
    }
    const auto acc = summed_autocorrelation(G, blocks);
    std::optional<std::int64_t> lambda;
    for (std::size_t h : H.elements) {
        if (h == 0) continue;
        if (!lambda) lambda = acc[h];
        else if (*lambda != acc[h]) return std::nullopt;
    }
    return lambda.value_or(0);
}

std::optional<std::int64_t> ds_lambda_within(const Subgroup& H, const Subset& block) {
    return df_lambda_within(H, std::vector<Subset>{block});
}

std::optional<DivisibleDifferenceSet> verify_dds(const AbelianGroup& group, const Subgroup& H, const Subset& set) {
    if (!(H.parent == group)) throw DomainError("verify_dds: subgroup belongs to a different group");
    if (set.empty()) throw DomainError("verify_dds: set must be nonempty");
    check_block(group, set);
    const auto ac = autocorrelation(group, set);
    std::optional<std::int64_t> l1, l2;
    for (std::size_t g = 1; g < group.order(); ++g) {
        auto& slot = H.contains(g) ? l1 : l2;
        if (!slot) slot = ac[g];
        else if (*slot != ac[g]) return std::nullopt;
    }
    // A vacuous parameter (H trivial, or H the whole group) takes the other's value.
    if (!l1) l1 = l2;
    if (!l2) l2 = l1;
    DivisibleDifferenceSet d{group, H, normalize_subset(group, set), l1.value_or(0), l2.value_or(0), false, false};
    const auto D = static_cast<std::int64_t>(set.size());
    const auto Gn = static_cast<std::int64_t>(group.order());
    d.semiregular = D * D == Gn * d.lambda2 && D != d.lambda1;
    d.relative = d.lambda1 == 0;
    return d;
}

Subset canonical_block(const AbelianGroup& group, const Subset& block) {
    if (block.empty()) return {};
    Subset best;
    for (std::size_t x : block) {
        Subset t;
        for (std::size_t y : block) t.push_back(group.sub(y, x));
        std::sort(t.begin(), t.end());
        if (best.empty() || t < best) best = std::move(t);
    }
    return best;
}

DfSearchResult search_df(const AbelianGroup& group, std::int64_t K, std::int64_t lambda, const DfSearchOptions& opt) {
    const auto V = static_cast<std::int64_t>(group.order());
    if (V > opt.max_v) throw DomainError("search_df: group order " + std::to_string(V) + " exceeds the cap " + std::to_string(opt.max_v));
    if (K < 2 || K > V) throw DomainError("search_df: need 2 <= K <= V");
    if (lambda < 1) throw DomainError("search_df: need lambda >= 1");
    const std::int64_t num = lambda * (V - 1), den = K * (K - 1);
    if (num % den != 0)
        throw DomainError("search_df: block count lambda(V-1)/(K(K-1)) = " + std::to_string(num) + "/" + std::to_string(den) +
                          " is not an integer");
    const std::int64_t R = num / den;

    DfSearchResult res;
    // Canonical blocks: K-subsets containing 0 that equal their own canonical translate.
    std::vector<Subset> blocks;
    std::vector<std::vector<std::size_t>> diffs;
    {
        Subset cur{0};
        std::function<void(std::size_t)> rec = [&](std::size_t next) {
            if (!res.complete) return;
            if (static_cast<std::int64_t>(cur.size()) == K) {
                if (++res.nodes > opt.max_nodes && opt.max_nodes) {
                    res.complete = false;
                    return;
                }
                if (canonical_block(group, cur) != cur) return;
                std::vector<std::size_t> d;
                std::vector<std::int64_t> cnt(group.order(), 0);
                for (std::size_t x : cur)
                    for (std::size_t y : cur)
                        if (x != y) {
                            const std::size_t g = group.sub(x, y);
                            if (++cnt[g] > lambda) return;
                            d.push_back(g);
                        }
                blocks.push_back(cur);
                diffs.push_back(std::move(d));
                return;
            }
            for (std::size_t x = next; x < group.order(); ++x) {
                cur.push_back(x);
                rec(x + 1);
                cur.pop_back();
            }
        };
        rec(1);
    }
    // Highest block index containing each difference, for the "must still be coverable" prune.
    std::vector<std::ptrdiff_t> last_cover(group.order(), -1);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t g : diffs[i]) last_cover[g] = static_cast<std::ptrdiff_t>(i);

    if (!res.complete) return res;
    std::vector<std::int64_t> count(group.order(), 0);
    std::vector<std::size_t> chosen;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (stop) return;
        if (opt.max_nodes && res.nodes >= opt.max_nodes) {
            res.complete = false;
            stop = true;
            return;
        }
        ++res.nodes;
        if (static_cast<std::int64_t>(chosen.size()) == R) {
            for (std::size_t g = 1; g < group.order(); ++g)
                if (count[g] != lambda) return;
            DifferenceFamily df{group, {}, lambda, std::nullopt};
            for (std::size_t i : chosen) df.blocks.push_back(blocks[i]);
            res.families.push_back(std::move(df));
            if (opt.limit && res.families.size() >= opt.limit) stop = true;
            return;
        }
        std::size_t need = 0;
        for (std::size_t g = 1; g < group.order(); ++g)
            if (count[g] < lambda) {
                need = g;
                break;
            }
        if (need && last_cover[need] < static_cast<std::ptrdiff_t>(from)) return;
        for (std::size_t i = from; i < blocks.size() && !stop; ++i) {
            bool ok = true;
            std::size_t applied = 0;
            for (; applied < diffs[i].size(); ++applied) {
                if (++count[diffs[i][applied]] > lambda) {
                    ok = false;
                    ++applied;
                    break;
                }
            }
            if (ok) {
                chosen.push_back(i);
                rec(i);
                chosen.pop_back();
            }
            for (std::size_t a = 0; a < applied; ++a) --count[diffs[i][a]];
        }
    };
    rec(0);
    return res;
}

CosetPartition partition_by_cosets(const AbelianGroup& group, const Subgroup& H, const Subset& set) {
    if (!(H.parent == group)) throw DomainError("partition_by_cosets: subgroup belongs to a different group");
    check_block(group, set);
    std::vector<char> in(group.order(), 0);
    for (std::size_t d : set) in[d] = 1;
    CosetPartition p;
    for (const Subset& c : cosets(H)) {
        const std::size_t g = c.front();
        Subset part;
        for (std::size_t h : H.elements)
            if (in[group.add(g, h)]) part.push_back(h);
        p.representatives.push_back(g);
        p.parts.push_back(std::move(part));
    }
    for (const Subset& part : p.parts)
        if (part.size() != p.parts.front().size()) p.constant_cardinality = false;
    return p;
}

DifferenceFamily complement_family(const DifferenceFamily& df) {
    const Subset universe = df.within ? df.within->elements : whole_group(df.group).elements;
    DifferenceFamily out{df.group, {}, 0, df.within};
    for (const Subset& b : df.blocks) {
        Subset c;
        std::set_difference(universe.begin(), universe.end(), b.begin(), b.end(), std::back_inserter(c));
        out.blocks.push_back(std::move(c));
    }
    const auto V = static_cast<std::int64_t>(df.V());
    const auto K = static_cast<std::int64_t>(df.K());
    const auto R = static_cast<std::int64_t>(df.R());
    out.lambda = df.lambda + R * (V - 2 * K);
    return out;
}

std::optional<BibdParams> verify_bibd(const Bibd& design) {
    if (design.v < 2) throw DomainError("verify_bibd: need at least two points");
    if (design.blocks.empty()) throw DomainError("verify_bibd: need at least one block");
    const std::size_t k = design.blocks.front().size();
    const auto v = static_cast<std::size_t>(design.v);
    std::vector<std::int64_t> rep(v, 0);
    std::vector<std::int64_t> pair(v * v, 0);
    for (const auto& b : design.blocks) {
        if (b.size() != k) throw DomainError("verify_bibd: blocks have unequal sizes");
        std::set<std::int64_t> s(b.begin(), b.end());
        if (s.size() != b.size()) throw DomainError("verify_bibd: block contains a repeated point");
        for (std::int64_t x : b)
            if (x < 0 || x >= design.v) throw DomainError("verify_bibd: point out of range");
        for (std::int64_t x : b) {
            ++rep[static_cast<std::size_t>(x)];
            for (std::int64_t y : b)
                if (x < y) ++pair[static_cast<std::size_t>(x) * v + static_cast<std::size_t>(y)];
        }
    }
    if (k < 2) return std::nullopt;
    for (std::size_t x = 0; x < v; ++x) {
        if (rep[x] != rep[0]) return std::nullopt;
        for (std::size_t y = x + 1; y < v; ++y)
            if (pair[x * v + y] != pair[1]) return std::nullopt;
    }
    return BibdParams{design.v, static_cast<std::int64_t>(design.blocks.size()), rep[0], static_cast<std::int64_t>(k), pair[1]};
}

Bibd complete_design(std::int64_t v, std::int64_t k) {
    if (k < 2 || k > v) throw DomainError("complete_design: need 2 <= k <= v");
    Bibd d{v, {}};
    std::vector<std::int64_t> cur;
    std::function<void(std::int64_t)> rec = [&](std::int64_t next) {
        if (static_cast<std::int64_t>(cur.size()) == k) {
            d.blocks.push_back(cur);
            return;
        }
        for (std::int64_t x = next; x < v; ++x) {
            cur.push_back(x);
            rec(x + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return d;
}

}  // namespace ectff
