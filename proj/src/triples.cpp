#include "ectff/triples.hpp"

#include <algorithm>
#include <cstdlib>

#include "checked.hpp"
#include "ectff/error.hpp"

namespace ectff {

using detail::add;
using detail::mul;
using detail::sub;

std::string to_string(const ParamTriple& t) {
    return "(" + std::to_string(t.D) + "," + std::to_string(t.N) + "," + std::to_string(t.R) + ")";
}

std::string to_string(Move m) { return m == Move::Naimark ? "naimark" : "spatial"; }

std::string to_string(OrbitTag t) {
    switch (t) {
        case OrbitTag::SmallN2: return "small-n2";
        case OrbitTag::SmallN3: return "small-n3";
        case OrbitTag::FZero: return "f-zero";
        case OrbitTag::FNegTrivialSeed: return "f-neg-trivial-seed";
        case OrbitTag::FNegNoTFF: return "f-neg-no-tff";
        default: return "f-pos";
    }
}

std::int64_t invariant(const ParamTriple& t) {
    const std::int64_t dnr = mul(mul(t.D, t.N), t.R);
    const std::int64_t d2 = mul(t.D, t.D);
    const std::int64_t nr2 = mul(t.N, mul(t.R, t.R));
    return sub(sub(dnr, d2), nr2);
}

ParamTriple naimark(const ParamTriple& t) { return {sub(mul(t.N, t.R), t.D), t.N, t.R}; }

ParamTriple spatial(const ParamTriple& t) { return {t.D, t.N, sub(t.D, t.R)}; }

ParamTriple apply(Move m, const ParamTriple& t) {
    return m == Move::Naimark ? naimark(t) : spatial(t);
}

std::vector<ParamTriple> sequence(const ParamTriple& t, int kmin, int kmax, const OrbitOptions& opt) {
    if (kmin > 0 || kmax < 0) throw DomainError("sequence window must satisfy kmin <= 0 <= kmax");
    if (-kmin > opt.max_steps || kmax > opt.max_steps)
        throw DomainError("sequence window exceeds the cap |K| <= " + std::to_string(opt.max_steps));
    std::vector<ParamTriple> below;
    ParamTriple x = t;
    for (int k = -1; k >= kmin; --k) {
        // odd negative index: spatial; even: Naimark
        x = ((-k) % 2 == 1) ? spatial(x) : naimark(x);
        below.push_back(x);
    }
    std::vector<ParamTriple> out(below.rbegin(), below.rend());
    out.push_back(t);
    x = t;
    for (int k = 1; k <= kmax; ++k) {
        x = (k % 2 == 1) ? naimark(x) : spatial(x);
        out.push_back(x);
    }
    return out;
}

bool is_minimal(const ParamTriple& t) {
    return t.D > 0 && t.D <= sub(mul(t.N, t.R), t.D) && t.R > 0 && t.R <= t.D - t.R;
}

bool is_trivial_seed(const ParamTriple& t) {
    return t.R > 0 && (t.D == t.R || t.D == mul(t.N, t.R));
}

namespace {

void require_query(const ParamTriple& t) {
    if (t.N < 2) throw DomainError("query requires N >= 2, got " + to_string(t));
    if (t.D < 1 || t.R < 1) throw DomainError("query requires D >= 1 and R >= 1, got " + to_string(t));
}

struct Walk {
    ParamTriple end;
    std::vector<ParamTriple> path;  // query first
    std::vector<Move> moves;        // query -> end
};

// Repeatedly applies whichever complement strictly decreases an entry. Stops at a
// minimal point, or (when the next step would leave the positive octant) at the
// last all-positive triple.
// For N >= 5 the entries shrink geometrically and the walk ends well before the cap.
// For N = 4 (f = -(D-2R)^2) they shrink only by |D-2R| per step, so the cap is raised
// to D + R, which bounds any strictly decreasing walk.
Walk walk_down(const ParamTriple& t, const OrbitOptions& opt) {
    std::int64_t cap = opt.max_steps;
    if (t.N == 4) {
        constexpr std::int64_t kLinearLimit = std::int64_t{1} << 20;
        cap = std::max<std::int64_t>(cap, add(t.D, t.R));
        if (cap > kLinearLimit)
            throw DomainError("N = 4 orbit walk from " + to_string(t) + " needs up to " + std::to_string(cap) +
                              " steps (limit " + std::to_string(kLinearLimit) + ")");
    }
    Walk w{t, {t}, {}};
    ParamTriple x = t;
    for (std::int64_t step = 0; step <= cap; ++step) {
        Move m;
        if (x.D > sub(mul(x.N, x.R), x.D))
            m = Move::Naimark;
        else if (x.R > x.D - x.R)
            m = Move::Spatial;
        else {
            w.end = x;
            return w;
        }
        ParamTriple y = apply(m, x);
        if (y.D <= 0 || y.R <= 0) {
            w.end = x;
            return w;
        }
        x = y;
        w.path.push_back(x);
        w.moves.push_back(m);
    }
    throw InternalError("orbit walk from " + to_string(t) + " exceeded the cap of " +
                        std::to_string(cap) + " steps");
}

int small_period(std::int64_t N) { return N == 2 ? 8 : 12; }

// Nearest trivial seed on the finite N=2,3 cycle; moves are query -> seed with no-ops dropped.
std::optional<Walk> small_n_seed(const ParamTriple& t) {
    const int period = small_period(t.N);
    std::optional<Walk> best;
    for (Move first : {Move::Naimark, Move::Spatial}) {
        Walk w{t, {t}, {}};
        ParamTriple x = t;
        Move m = first;
        bool found = is_trivial_seed(x);
        for (int step = 0; step < period && !found; ++step) {
            ParamTriple y = apply(m, x);
            if (y != x) {
                w.moves.push_back(m);
                w.path.push_back(y);
            }
            x = y;
            m = (m == Move::Naimark) ? Move::Spatial : Move::Naimark;
            found = is_trivial_seed(x);
        }
        if (!found) continue;
        w.end = x;
        if (!best || w.moves.size() < best->moves.size()) best = w;
    }
    return best;
}

}  // namespace

OrbitClass classify(const ParamTriple& t, const OrbitOptions& opt) {
    require_query(t);
    OrbitClass c;
    if (t.N <= 3) {
        c.tag = t.N == 2 ? OrbitTag::SmallN2 : OrbitTag::SmallN3;
        c.orbit_sample = sequence(t, 0, small_period(t.N) - 1, opt);
        if (auto w = small_n_seed(t)) c.minimal_point = w->end;
        return c;
    }
    const std::int64_t f = invariant(t);
    if (f == 0) {
        c.tag = OrbitTag::FZero;
        c.minimal_point = t;
        c.orbit_sample = {t};
        return c;
    }
    Walk w = walk_down(t, opt);
    c.minimal_point = w.end;
    c.orbit_sample = w.path;
    if (f > 0) {
        if (!is_minimal(w.end)) throw InternalError("walk from " + to_string(t) + " ended off the minimal point");
        c.tag = OrbitTag::FPos;
    } else {
        c.tag = is_trivial_seed(w.end) ? OrbitTag::FNegTrivialSeed : OrbitTag::FNegNoTFF;
    }
    return c;
}

ExistenceVerdict tff_exists(const ParamTriple& t, const OrbitOptions& opt) {
    require_query(t);
    ExistenceVerdict v;
    std::optional<Walk> w;
    if (t.N <= 3) {
        w = small_n_seed(t);
    } else {
        Walk down = walk_down(t, opt);
        if (invariant(t) >= 0 || is_trivial_seed(down.end)) w = down;
    }
    if (!w) return v;
    v.exists = true;
    v.seed = w->end;
    v.chain.assign(w->moves.rbegin(), w->moves.rend());
    return v;
}

bool eitff_feasible(const ParamTriple& t, const OrbitOptions& opt) {
    ExistenceVerdict v = tff_exists(t, opt);
    if (!v.exists) return false;
    const ParamTriple& s = *v.seed;
    if (t.R != s.R) return false;
    if (t.D != s.D && t.D != sub(mul(s.N, s.R), s.D)) return false;
    return !(t.R < t.D && t.D < 2 * t.R);
}

std::int64_t gerzon_max(std::int64_t D, Field field) {
    if (D < 1) throw DomainError("gerzon_max requires D >= 1");
    return field == Field::Real ? mul(D, add(D, 1)) / 2 : mul(D, D);
}

}  // namespace ectff
