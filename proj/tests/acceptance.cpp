// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits non-zero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "ectff/catalog.hpp"
#include "ectff/designs.hpp"
#include "ectff/error.hpp"
#include "ectff/frames.hpp"
#include "ectff/groups.hpp"
#include "ectff/harmonic.hpp"
#include "ectff/triples.hpp"

using namespace ectff;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

int failures = 0;

void run(int n, const std::string& name, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << "exception: " << e.what();
    }
    std::printf("[%s] AC%d %s%s%s\n", o.ok ? "PASS" : "FAIL", n, name.c_str(), o.detail.str().empty() ? "" : " :: ",
                o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.ok;
}

std::int64_t f_oracle(const ParamTriple& t) { return t.D * t.N * t.R - t.D * t.D - t.N * t.R * t.R; }

bool small_n_oracle(std::int64_t D, std::int64_t N, std::int64_t R) {
    if (N == 2) return 2 * R == D || R == D;
    return 3 * R == D || 2 * R == D || 3 * R == 2 * D || R == D;
}

// Differences x - y with x, y in the same part, landing in H; lambda if constant on H \ {0}.
std::optional<std::int64_t> lambda_oracle(const AbelianGroup& G, const Subgroup& H,
                                          const std::vector<Subset>& parts) {
    std::map<std::size_t, std::int64_t> c;
    for (const auto& p : parts)
        for (auto x : p)
            for (auto y : p)
                if (x != y) ++c[G.sub(x, y)];
    std::optional<std::int64_t> lam;
    for (auto h : H.elements) {
        if (h == 0) continue;
        std::int64_t v = c.count(h) ? c[h] : 0;
        if (lam && *lam != v) return std::nullopt;
        lam = v;
    }
    return lam ? lam : std::optional<std::int64_t>(0);
}

std::vector<double> sin2_padded(std::vector<double> cos2, std::size_t len) {
    std::vector<double> s;
    for (double c : cos2) s.push_back(std::max(0.0, 1.0 - c));
    s.resize(std::max(len, s.size()), 0.0);
    std::sort(s.rbegin(), s.rend());
    return s;
}

HarmonicSpec spec_6_13_2() {
    AbelianGroup G({13, 2});
    return {G, subgroup_generated(G, {{1, 0}}), to_subset(G, {{1, 0}, {3, 0}, {9, 0}, {2, 1}, {6, 1}, {5, 1}})};
}

}  // namespace

int main() {
    run(1, "orbit regressions", [](Outcome& o) {
        const std::vector<ParamTriple> a = {{11, 7, 9}, {11, 7, 2}, {3, 7, 2}, {3, 7, 1}, {4, 7, 1}, {4, 7, 3}, {17, 7, 3}};
        const std::vector<ParamTriple> b = {{1, 4, 1}, {3, 4, 1}, {3, 4, 2}, {5, 4, 2}, {5, 4, 3}, {7, 4, 3}, {7, 4, 4}};
        const std::vector<ParamTriple> c = {{4, 4, 1}, {4, 4, 3}, {8, 4, 3}, {8, 4, 5}, {12, 4, 5}, {12, 4, 7}, {16, 4, 7}};
        o.require(sequence({3, 7, 1}, -3, 3) == a, "(3,7,1) orbit");
        o.require(sequence({1, 4, 1}, 0, 6) == b, "(1,4,1) chain");
        auto cc = sequence({4, 4, 1}, -6, 0);
        std::reverse(cc.begin(), cc.end());
        o.require(cc == c, "(4,4,1) chain");
        const int reps = 1000;
        auto t0 = Clock::now();
        std::size_t sink = 0;
        for (int i = 0; i < reps; ++i) {
            sink += sequence({3, 7, 1}, -3, 3).size();
            sink += sequence({1, 4, 1}, 0, 6).size() + sequence({4, 4, 1}, -6, 0).size();
        }
        const double per = seconds_since(t0) / reps;
        o.require(sink == 21u * reps, "sink");
        o.require(per < 1e-3, "runtime");
        o.detail << "three orbits in " << per * 1e6 << " us";
    });

    run(2, "invariant laws on 1e5 random triples", [](Outcome& o) {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<std::int64_t> de(-1000000, 1000000), dn(2, 1000);
        int bad = 0;
        for (int i = 0; i < 100000; ++i) {
            ParamTriple t{de(rng), dn(rng), de(rng)};
            const std::int64_t f = invariant(t);
            bad += f != f_oracle(t);
            bad += invariant(naimark(t)) != f || invariant(spatial(t)) != f;
            bad += naimark(naimark(t)) != t || spatial(spatial(t)) != t;
        }
        o.require(bad == 0, "law violated");
        o.detail << bad << " violations";
    });

    run(3, "unique minimal point with entrywise minima (1e4 triples, f > 0)", [](Outcome& o) {
        std::mt19937_64 rng(33);
        std::uniform_int_distribution<std::int64_t> dn(5, 200), dd(1, 5000);
        int done = 0, bad = 0, max_walk = 0;
        while (done < 10000) {
            const std::int64_t N = dn(rng), D = dd(rng);
            std::uniform_int_distribution<std::int64_t> dr(1, D);
            ParamTriple t{D, N, dr(rng)};
            if (f_oracle(t) <= 0) continue;
            ++done;
            // walk length by a direct descent, independent of classify()
            int len = 0;
            ParamTriple x = t;
            while (true) {
                if (x.D > x.N * x.R - x.D) x = naimark(x);
                else if (x.R > x.D - x.R) x = spatial(x);
                else break;
                ++len;
            }
            max_walk = std::max(max_walk, len);
            const int W = len + 2;
            std::set<ParamTriple> win;
            for (const auto& y : sequence(t, -W, W)) win.insert(y);
            std::vector<ParamTriple> mins;
            for (const auto& y : win) {
                if (y.D <= y.N * y.R - y.D && y.R <= y.D - y.R) mins.push_back(y);
            }
            bool ok = mins.size() == 1;
            if (ok)
                for (const auto& y : win) ok = ok && mins[0].D <= y.D && mins[0].R <= y.R;
            ok = ok && classify(t).minimal_point == mins[0];
            bad += !ok;
        }
        o.require(bad == 0, "minimal point law");
        o.detail << done << " triples, " << bad << " failures, longest walk " << max_walk;
    });

    run(4, "existence oracle agreement", [](Outcome& o) {
        o.require(!tff_exists({7, 4, 2}).exists, "(7,4,2)");
        o.require(!tff_exists({5, 4, 4}).exists, "(5,4,4)");
        o.require(tff_exists({5, 4, 2}).exists, "(5,4,2)");
        for (std::int64_t R = 1; R <= 200; ++R) o.require(tff_exists({2 * R, 4, R}).exists, "(2R,4,R)");
        int checked = 0;
        for (std::int64_t N : {2, 3})
            for (std::int64_t D = 1; D <= 60; ++D)
                for (std::int64_t R = 1; R <= D; ++R, ++checked)
                    o.require(tff_exists({D, N, R}).exists == small_n_oracle(D, N, R), "N = 2, 3 closed form");
        o.detail << checked << " small-N cases";
    });

    run(5, "harmonic ECTFF(6,13,2)", [](Outcome& o) {
        auto t0 = Clock::now();
        AbelianGroup Z13({13});
        auto df = verify_df(Z13, {{1, 3, 9}, {2, 5, 6}});
        o.require(df && df->lambda == 1, "DF(13,3,1)");
        auto res = from_df(*df);
        auto r = verify(res.frame, 1e-9);
        const double dt = seconds_since(t0);
        o.require(res.frame.params() == ParamTriple{6, 13, 2}, "params");
        o.require(r.is_tight && r.tight_residual < 1e-10, "tight");
        // chordal Welch value: Tr(P1 P2) = R(NR - D)/(D(N-1)) = 2*20/(6*12) = 5/9
        const double target = 2.0 * (13 * 2 - 6) / (6.0 * 12);
        o.require(r.is_equichordal, "equichordal");
        o.require(std::abs(r.trace_min - target) < 1e-10 && std::abs(r.trace_max - target) < 1e-10, "Tr = 5/9");
        o.require(!r.is_equiisoclinic, "not equi-isoclinic");
        o.require(dt < 1.0, "runtime");
        o.detail << "residual " << r.tight_residual << ", Tr in [" << r.trace_min << ", " << r.trace_max << "], "
                 << dt * 1e3 << " ms";
    });

    run(6, "harmonic ECTFF(9,19,3) and its certification", [](Outcome& o) {
        auto t0 = Clock::now();
        auto s = search_df(AbelianGroup({19}), 3, 1);
        const double dt = seconds_since(t0);
        o.require(!s.families.empty(), "DF(19,3,1) found");
        o.require(dt < 60.0, "search runtime");
        if (s.families.empty()) return;
        const auto& df = s.families.front();
        auto r = verify(from_df(df).frame, 1e-9);
        o.require(r.params == ParamTriple{9, 19, 3}, "params");
        o.require(r.is_tight && r.is_equichordal, "tight and equichordal");
        o.require(invariant({9, 19, 3}) == 261, "f = 261");
        auto c = Catalog().certify({9, 19, 3});
        o.require(c.verdict == Verdict::Novel, "Novel");
        std::string trail;
        for (const auto& line : c.narrative) trail += line + "\n";
        for (const char* key : {"Gerzon", "Hoggar", "Fisher", "81/57"})
            o.require(trail.find(key) != std::string::npos, std::string("evidence mentions ") + key);
        o.detail << "search " << dt * 1e3 << " ms (" << s.nodes << " nodes), verdict " << to_string(c.verdict);
    });

    run(7, "combinatorial flags equal numerical flags (G <= 32, index <= 8)", [](Outcome& o) {
        constexpr std::uint64_t kExhaustive = 4096;  // per (G, H) pair; larger spaces are sampled
        constexpr int kSamples = 256;
        std::mt19937_64 rng(77);
        std::uint64_t tested = 0, disagree = 0, pairs = 0, exhaustive_pairs = 0;
        HarmonicOptions opt;
        opt.cross_check = false;
        auto check = [&](const AbelianGroup& G, const Subgroup& H, const Subset& S) {
            HarmonicSpec spec{G, H, S};
            auto res = build(spec, opt);
            if (res.frame.n() < 2) return;
            auto rep = verify(res.frame, 1e-9);
            auto part = partition_by_cosets(G, H, S);
            const bool df_o = lambda_oracle(G, H, part.parts).has_value();
            bool ds_o = true;
            for (const auto& p : part.parts) ds_o = ds_o && lambda_oracle(G, H, {p}).has_value();
            ++tested;
            disagree += res.flags.is_df != rep.is_equichordal || res.flags.is_ds_each != rep.is_equiisoclinic ||
                        res.flags.is_df != df_o || res.flags.is_ds_each != ds_o;
        };
        for (std::int64_t n = 2; n <= 32; ++n) {
            for (const auto& G : abelian_groups_of_order(n)) {
                for (const auto& H : all_subgroups(G)) {
                    const std::size_t m = G.order() / H.order();
                    if (m > 8 || H.order() < 2) continue;
                    ++pairs;
                    auto cs = cosets(H);
                    const std::size_t h = H.order();
                    // number of subsets with s points in every coset, 1 <= s <= h
                    std::uint64_t total = 0;
                    for (std::size_t sz = 1; sz <= h && total <= kExhaustive; ++sz) {
                        double b = 1;
                        for (std::size_t i = 0; i < sz; ++i) b = b * static_cast<double>(h - i) / static_cast<double>(i + 1);
                        total += static_cast<std::uint64_t>(std::min(1e18, std::pow(std::round(b), static_cast<double>(m))));
                    }
                    if (total <= kExhaustive) {
                        ++exhaustive_pairs;
                        for (std::size_t sz = 1; sz <= h; ++sz) {
                            // odometer over sz-subsets of each coset
                            std::vector<Subset> choices;
                            for (std::uint64_t mask = 0; mask < (1ull << h); ++mask)
                                if (static_cast<std::size_t>(__builtin_popcountll(mask)) == sz) {
                                    Subset c;
                                    for (std::size_t i = 0; i < h; ++i)
                                        if (mask >> i & 1) c.push_back(i);
                                    choices.push_back(c);
                                }
                            std::vector<std::size_t> idx(m, 0);
                            while (true) {
                                Subset S;
                                for (std::size_t j = 0; j < m; ++j)
                                    for (auto i : choices[idx[j]]) S.push_back(cs[j][i]);
                                check(G, H, normalize_subset(G, S));
                                std::size_t j = 0;
                                while (j < m && ++idx[j] == choices.size()) idx[j++] = 0;
                                if (j == m) break;
                            }
                        }
                    } else {
                        std::uniform_int_distribution<std::size_t> dsz(1, h);
                        for (int k = 0; k < kSamples; ++k) {
                            const std::size_t sz = dsz(rng);
                            Subset S;
                            for (std::size_t j = 0; j < m; ++j) {
                                Subset c = cs[j];
                                std::shuffle(c.begin(), c.end(), rng);
                                S.insert(S.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(sz));
                            }
                            check(G, H, normalize_subset(G, S));
                        }
                    }
                }
            }
        }
        // Known difference families must also be in the tested set with agreeing flags.
        for (auto [v, k, l] : std::vector<std::tuple<int, int, int>>{{13, 3, 1}, {7, 3, 1}, {16, 6, 2}, {11, 5, 2}}) {
            for (const auto& G : abelian_groups_of_order(v)) {
                DfSearchOptions so;
                so.limit = 4;
                for (const auto& f : search_df(G, k, l, so).families) {
                    auto spec = spec_from_df(f);
                    check(spec.group, spec.subgroup, spec.subset);
                }
            }
        }
        o.require(disagree == 0, "flag disagreement");
        o.detail << tested << " subsets over " << pairs << " (G,H) pairs (" << exhaustive_pairs
                 << " exhaustive, rest " << kSamples << " samples each), " << disagree << " disagreements";
    });

    run(8, "complements of ECTFF(6,13,2)", [](Outcome& o) {
        auto f = build(spec_6_13_2()).frame;
        auto nf = naimark_complement(f);
        auto sf = spatial_complement(f);
        auto rn = verify(nf, 1e-9), rs = verify(sf, 1e-9);
        o.require(rn.params == ParamTriple{20, 13, 2} && rn.is_tight && rn.is_equichordal, "Naimark is ECTFF(20,13,2)");
        o.require(rs.params == ParamTriple{6, 13, 4} && rs.is_tight && rs.is_equichordal, "spatial is ECTFF(6,13,4)");
        double worst = 0;
        for (int i = 0; i < f.n(); ++i)
            for (int j = i + 1; j < f.n(); ++j) {
                auto a = sin2_padded(cos2_spectrum(f.block(i), f.block(j)), 4);
                auto b = sin2_padded(cos2_spectrum(sf.block(i), sf.block(j)), 4);
                for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
            }
        o.require(worst < 1e-8, "padding relation");
        o.detail << "max padded sin^2 gap " << worst;
    });

    run(9, "EITFF(2R,4,R)", [](Outcome& o) {
        auto all_third = [](const FusionFrame& f) {
            double w = 0;
            for (int i = 0; i < f.n(); ++i)
                for (int j = i + 1; j < f.n(); ++j)
                    for (double c : cos2_spectrum(f.block(i), f.block(j))) w = std::max(w, std::abs(c - 1.0 / 3));
            return w;
        };
        double worst = 0;
        for (int R = 1; R <= 6; ++R) {
            auto f = construct_2R_4_R(R, Field::Complex);
            auto r = verify(f, 1e-9);
            o.require(r.is_tight && r.is_equiisoclinic, "complex EI");
            worst = std::max(worst, all_third(f));
        }
        for (int R : {2, 4, 6}) {
            auto f = construct_2R_4_R(R, Field::Real);
            o.require(f.field() == Field::Real, "real field");
            for (const auto& B : f.blocks()) o.require(B.imag().cwiseAbs().maxCoeff() == 0.0, "real entries");
            o.require(verify(f, 1e-9).is_equiisoclinic, "real EI");
            worst = std::max(worst, all_third(f));
        }
        o.require(worst < 1e-10, "cos^2 = 1/3");
        for (int R : {1, 3, 5}) {
            try {
                construct_2R_4_R(R, Field::Real);
                o.require(false, "odd R rejected");
            } catch (const DomainError& e) {
                o.require(std::string(e.what()).find("if and only if R is even") != std::string::npos, "rejection message");
            }
        }
        o.detail << "max |cos^2 - 1/3| " << worst;
    });

    run(10, "Zauner ECTFF(6,4,3) from BIBD(4,2,1)", [](Outcome& o) {
        auto f = construct_zauner(complete_design(4, 2));
        auto r = verify(f, 1e-9);
        o.require(f.params() == ParamTriple{6, 4, 3}, "params");
        o.require(r.is_tight && std::abs(r.tight_constant - 2.0) < 1e-10, "tight with constant 2");
        o.require(r.is_equichordal && std::abs(r.trace_min - 1) < 1e-10 && std::abs(r.trace_max - 1) < 1e-10, "Tr = 1");
        for (int i = 0; i < f.n(); ++i)
            for (int j = i + 1; j < f.n(); ++j) {
                auto c = cos2_spectrum(f.block(i), f.block(j));
                o.require(c.size() == 3 && std::abs(c[0] - 1) < 1e-10 && std::abs(c[1]) < 1e-10 && std::abs(c[2]) < 1e-10,
                          "cos^2 multiset {1,0,0}");
            }
    });

    run(11, "Fourier identities for all abelian groups of order <= 64", [](Outcome& o) {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> nd;
        std::size_t groups = 0, subgroups = 0;
        double orth = 0, psf = 0, conv = 0, gram = 0;
        for (std::int64_t n = 1; n <= 64; ++n) {
            for (const auto& G : abelian_groups_of_order(n)) {
                ++groups;
                const std::size_t M = G.order();
                std::vector<Complex> table(M * M);
                for (std::size_t a = 0; a < M; ++a)
                    for (std::size_t g = 0; g < M; ++g) table[a * M + g] = character_value(G, a, g);
                for (std::size_t a = 0; a < M; ++a)
                    for (std::size_t b = 0; b < M; ++b) {
                        Complex s = 0;
                        for (std::size_t g = 0; g < M; ++g) s += table[a * M + g] * std::conj(table[b * M + g]);
                        orth = std::max(orth, std::abs(s - (a == b ? Complex(double(M)) : Complex(0))));
                    }
                auto subs = all_subgroups(G);
                for (const auto& H : subs) {
                    ++subgroups;
                    auto F = dft(G, indicator(G, H.elements));
                    auto want = indicator(G, annihilator(H).elements);
                    for (std::size_t a = 0; a < M; ++a) psf = std::max(psf, std::abs(F[a] - double(H.order()) * want[a]));
                }
                std::vector<Complex> y1(M), y2(M);
                for (auto& v : y1) v = {nd(rng), nd(rng)};
                for (auto& v : y2) v = {nd(rng), nd(rng)};
                auto lhs = dft(G, convolve(G, y1, y2));
                auto f1 = dft(G, y1), f2 = dft(G, y2);
                double scale = 1;
                for (std::size_t a = 0; a < M; ++a) scale = std::max(scale, std::abs(f1[a] * f2[a]));
                for (std::size_t a = 0; a < M; ++a) conv = std::max(conv, std::abs(lhs[a] - f1[a] * f2[a]) / scale);
                // harmonic Gram identity on one constant-cardinality subset for a proper subgroup
                if (M >= 4) {
                    const Subgroup& H = subs[subs.size() > 2 ? 1 : 0];
                    auto cs = cosets(H);
                    std::uniform_int_distribution<std::size_t> dsz(1, H.order());
                    const std::size_t sz = dsz(rng);
                    Subset S;
                    for (auto c : cs) {
                        std::shuffle(c.begin(), c.end(), rng);
                        S.insert(S.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(sz));
                    }
                    HarmonicSpec spec{G, H, normalize_subset(G, S)};
                    auto blocks = harmonic_blocks(spec);
                    std::vector<std::size_t> chars;
                    for (const auto& c : cosets(annihilator(H))) chars.insert(chars.end(), c.begin(), c.end());
                    Matrix all(blocks[0].rows(), static_cast<Eigen::Index>(chars.size()));
                    Eigen::Index col = 0;
                    for (const auto& B : blocks)
                        for (Eigen::Index j = 0; j < B.cols(); ++j) all.col(col++) = B.col(j);
                    Matrix Gm = all.adjoint() * all;
                    // oracle: characters averaged over S directly from the table
                    for (std::size_t i = 0; i < chars.size(); ++i)
                        for (std::size_t j = 0; j < chars.size(); ++j) {
                            Complex s = 0;
                            for (auto d : spec.subset) s += std::conj(table[chars[i] * M + d]) * table[chars[j] * M + d];
                            s /= double(spec.subset.size());
                            gram = std::max(gram, std::abs(Gm(Eigen::Index(i), Eigen::Index(j)) - s));
                        }
                }
            }
        }
        o.require(orth < 1e-9, "orthogonality");
        o.require(psf < 1e-12, "PSF");
        o.require(conv < 1e-12 * 64, "convolution theorem");
        o.require(gram < 1e-12, "harmonic Gram identity");
        o.detail << groups << " groups, " << subgroups << " subgroups; max errors orth " << orth << ", psf " << psf
                 << ", conv " << conv << ", gram " << gram;
    });

    run(12, "certification regressions and batch throughput", [](Outcome& o) {
        Catalog c;
        auto a = c.certify({6, 13, 2});
        bool quat = false;
        for (const auto& e : a.matched_rules)
            quat = quat || (e.outcome == TriState::Yes && e.evidence.find("quaternionic") != std::string::npos);
        o.require(a.verdict == Verdict::CoveredByCatalog && quat, "(6,13,2) covered by quaternionic halving");
        auto b = c.certify({6, 4, 3});
        bool bibd = false;
        for (const auto& e : b.matched_rules)
            bibd = bibd || (e.outcome == TriState::Yes && e.evidence.find("BIBD") != std::string::npos);
        o.require(b.verdict == Verdict::CoveredByCatalog && bibd, "(6,4,3) covered by a BIBD rule");
        const std::int64_t Q = 19;
        o.require(c.certify({(Q - 1) / 2, Q, 3}).verdict == Verdict::Novel, "((Q-1)/2,Q,3) Novel for Q = 19");

        Catalog fresh;
        std::mt19937_64 rng(1000);
        std::uniform_int_distribution<std::int64_t> dd(1, 300), dn(2, 120);
        std::vector<ParamTriple> batch;
        while (batch.size() < 1000) {
            std::int64_t D = dd(rng);
            std::uniform_int_distribution<std::int64_t> dr(1, D);
            batch.push_back({D, dn(rng), dr(rng)});
        }
        std::map<Verdict, int> hist;
        auto t0 = Clock::now();
        for (const auto& t : batch) ++hist[fresh.certify(t).verdict];
        const double dt = seconds_since(t0);
        o.require(dt < 10.0, "batch runtime");
        o.detail << "1000 triples in " << dt << " s (";
        for (auto [v, k] : hist) o.detail << to_string(v) << " " << k << " ";
        o.detail << ")";
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
