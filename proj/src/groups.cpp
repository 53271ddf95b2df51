#include "ectff/groups.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "ectff/error.hpp"

namespace ectff {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::int64_t parse_int(const std::string& s, const std::string& context) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (...) {
        throw DomainError("expected an integer in " + context + ", got '" + s + "'");
    }
    if (pos != s.size()) throw DomainError("expected an integer in " + context + ", got '" + s + "'");
    return v;
}

// Splits on the separator character outside of (), {} nesting.
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '{' || c == '<') ++depth;
        if (c == ')' || c == '}' || c == '>') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<std::int64_t> moduli, std::int64_t cap) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) moduli_.push_back(1);
    std::int64_t order = 1;
    for (std::int64_t n : moduli_) {
        if (n < 1) throw DomainError("group moduli must be >= 1");
        if (__builtin_mul_overflow(order, n, &order) || order > cap)
            throw DomainError("group order exceeds the cap of " + std::to_string(cap));
        exponent_ = std::lcm(exponent_, n);
    }
    order_ = static_cast<std::size_t>(order);
    stride_.assign(moduli_.size(), 1);
    for (std::size_t j = moduli_.size(); j-- > 1;) stride_[j - 1] = stride_[j] * static_cast<std::size_t>(moduli_[j]);
    for (std::int64_t n : moduli_) scale_.push_back(exponent_ / n);
}

AbelianGroup AbelianGroup::parse(std::string_view literal, std::int64_t cap) {
    std::string s = trim(literal);
    std::replace(s.begin(), s.end(), '*', 'x');
    std::vector<std::int64_t> moduli;
    for (const std::string& tok : split_top(s, 'x')) {
        std::string t = tok;
        if (t.size() < 2 || (t[0] != 'Z' && t[0] != 'z'))
            throw DomainError("group literal factors look like 'Z13', got '" + tok + "' in '" + s + "'");
        std::string digits = t.substr(1);
        if (!digits.empty() && digits[0] == '_') digits = digits.substr(1);
        moduli.push_back(parse_int(digits, "group literal '" + s + "'"));
    }
    return AbelianGroup(std::move(moduli), cap);
}

std::string AbelianGroup::to_string() const {
    std::string out;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        if (j) out += "x";
        out += "Z" + std::to_string(moduli_[j]);
    }
    return out;
}

std::size_t AbelianGroup::index(const GroupElement& g) const {
    if (!contains(g)) throw DomainError("element is not a member of " + to_string());
    std::size_t idx = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) idx += static_cast<std::size_t>(g[j]) * stride_[j];
    return idx;
}

GroupElement AbelianGroup::element(std::size_t idx) const {
    if (idx >= order_) throw DomainError("element index out of range for " + to_string());
    GroupElement g(moduli_.size());
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        g[j] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(moduli_[j]));
        idx /= static_cast<std::size_t>(moduli_[j]);
    }
    return g;
}

bool AbelianGroup::contains(const GroupElement& g) const {
    if (g.size() != moduli_.size()) return false;
    for (std::size_t j = 0; j < g.size(); ++j)
        if (g[j] < 0 || g[j] >= moduli_[j]) return false;
    return true;
}

std::size_t AbelianGroup::add(std::size_t a, std::size_t b) const {
    std::size_t out = 0;
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        const std::size_t n = static_cast<std::size_t>(moduli_[j]);
        std::size_t d = a % n + b % n;
        if (d >= n) d -= n;
        out += d * stride_[j];
        a /= n;
        b /= n;
    }
    return out;
}

std::size_t AbelianGroup::neg(std::size_t a) const {
    std::size_t out = 0;
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        const std::size_t n = static_cast<std::size_t>(moduli_[j]);
        const std::size_t d = a % n;
        out += (d == 0 ? 0 : n - d) * stride_[j];
        a /= n;
    }
    return out;
}

std::size_t AbelianGroup::sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

std::int64_t AbelianGroup::pairing(std::size_t a, std::size_t g) const {
    std::int64_t k = 0;
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        const std::size_t n = static_cast<std::size_t>(moduli_[j]);
        k += static_cast<std::int64_t>((a % n) * (g % n)) % moduli_[j] * scale_[j];
        a /= n;
        g /= n;
    }
    return k % exponent_;
}

namespace {

Complex root_of_unity(std::int64_t k, std::int64_t L) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(L);
    return {std::cos(theta), std::sin(theta)};
}

std::vector<Complex> roots_table(const AbelianGroup& G) {
    std::vector<Complex> roots(static_cast<std::size_t>(G.exponent()));
    for (std::int64_t k = 0; k < G.exponent(); ++k) roots[static_cast<std::size_t>(k)] = root_of_unity(k, G.exponent());
    return roots;
}

void require_length(const AbelianGroup& G, std::size_t n, const char* what) {
    if (n != G.order())
        throw DomainError(std::string(what) + ": vector length " + std::to_string(n) + " does not match group order " +
                          std::to_string(G.order()));
}

}  // namespace

Complex character_value(const AbelianGroup& G, const GroupElement& a, const GroupElement& g) {
    if (!G.contains(a) || !G.contains(g)) throw DomainError("character_value: elements must belong to " + G.to_string());
    return character_value(G, G.index(a), G.index(g));
}

Complex character_value(const AbelianGroup& G, std::size_t a, std::size_t g) {
    return root_of_unity(G.pairing(a, g), G.exponent());
}

bool Subgroup::contains(std::size_t g) const { return std::binary_search(elements.begin(), elements.end(), g); }

Subgroup subgroup_generated_idx(const AbelianGroup& G, const Subset& generators) {
    std::vector<char> in(G.order(), 0);
    Subset elems{0};
    in[0] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t gen : generators) {
            if (gen >= G.order()) throw DomainError("generator index out of range");
            const std::size_t s = G.add(elems[i], gen);
            if (!in[s]) {
                in[s] = 1;
                elems.push_back(s);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return Subgroup{G, std::move(elems)};
}

Subgroup subgroup_generated(const AbelianGroup& G, const std::vector<GroupElement>& generators) {
    Subset idx;
    for (const auto& g : generators) idx.push_back(G.index(g));
    return subgroup_generated_idx(G, idx);
}

Subgroup subgroup_from_elements(const AbelianGroup& G, Subset elements) {
    elements = normalize_subset(G, std::move(elements));
    if (elements.empty() || elements.front() != 0) throw DomainError("subgroup must contain the identity");
    Subgroup H{G, elements};
    for (std::size_t a : elements)
        for (std::size_t b : elements)
            if (!H.contains(G.add(a, b))) throw DomainError("element list is not closed under addition in " + G.to_string());
    return H;
}

Subgroup trivial_subgroup(const AbelianGroup& G) { return Subgroup{G, {0}}; }

Subgroup whole_group(const AbelianGroup& G) {
    Subset all(G.order());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return Subgroup{G, std::move(all)};
}

std::vector<Subgroup> all_subgroups(const AbelianGroup& G) {
    std::set<Subset> seen;
    std::vector<Subgroup> out{trivial_subgroup(G)};
    seen.insert(out.front().elements);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Subset base = out[i].elements;
        std::vector<char> in(G.order(), 0);
        for (std::size_t e : base) in[e] = 1;
        for (std::size_t g = 1; g < G.order(); ++g) {
            if (in[g]) continue;
            Subset gens = base;
            gens.push_back(g);
            Subgroup K = subgroup_generated_idx(G, gens);
            if (seen.insert(K.elements).second) out.push_back(std::move(K));
        }
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements < b.elements;
    });
    return out;
}

Subgroup parse_subgroup(const AbelianGroup& G, std::string_view literal) {
    const std::string s = trim(literal);
    if (s.empty()) throw DomainError("empty subgroup literal");
    if (s.front() == '<') {
        if (s.back() != '>') throw DomainError("generator form must look like <(1,0),(0,2)>");
        std::vector<GroupElement> gens;
        const std::string body = trim(s.substr(1, s.size() - 2));
        if (!body.empty()) {
            for (const std::string& tok : split_top(body, ',')) {
                GroupElement g;
                if (!tok.empty() && tok.front() == '(') {
                    if (tok.back() != ')') throw DomainError("malformed generator '" + tok + "'");
                    for (const std::string& c : split_top(tok.substr(1, tok.size() - 2), ','))
                        g.push_back(parse_int(c, "generator '" + tok + "'"));
                } else {
                    g.push_back(parse_int(tok, "generator '" + tok + "'"));
                }
                if (g.size() != G.rank()) throw DomainError("generator '" + tok + "' has the wrong number of coordinates");
                for (std::size_t j = 0; j < g.size(); ++j) g[j] = mod(g[j], G.moduli()[j]);
                gens.push_back(g);
            }
        }
        return subgroup_generated(G, gens);
    }
    std::string t = s;
    std::replace(t.begin(), t.end(), '*', 'x');
    const std::vector<std::string> factors = split_top(t, 'x');
    if (factors.size() != G.rank())
        throw DomainError("subgroup literal '" + s + "' needs one factor per cyclic component of " + G.to_string());
    std::vector<std::vector<std::int64_t>> values(G.rank());
    for (std::size_t j = 0; j < G.rank(); ++j) {
        const std::string& f = factors[j];
        const std::int64_t n = G.moduli()[j];
        if (!f.empty() && (f[0] == 'Z' || f[0] == 'z')) {
            if (parse_int(f.substr(1), "subgroup literal '" + s + "'") != n)
                throw DomainError("factor '" + f + "' does not match modulus " + std::to_string(n));
            for (std::int64_t v = 0; v < n; ++v) values[j].push_back(v);
        } else if (!f.empty() && f.front() == '{' && f.back() == '}') {
            std::set<std::int64_t> vs;
            const std::string body = trim(f.substr(1, f.size() - 2));
            if (!body.empty())
                for (const std::string& c : split_top(body, ',')) vs.insert(mod(parse_int(c, "factor '" + f + "'"), n));
            values[j].assign(vs.begin(), vs.end());
        } else {
            values[j].push_back(mod(parse_int(f, "subgroup literal '" + s + "'"), n));
        }
        if (values[j].empty()) throw DomainError("factor '" + f + "' is empty");
    }
    std::vector<GroupElement> prefixes{{}};
    for (std::size_t j = 0; j < G.rank(); ++j) {
        std::vector<GroupElement> next;
        for (const auto& pre : prefixes) {
            for (std::int64_t v : values[j]) {
                GroupElement g = pre;
                g.push_back(v);
                next.push_back(std::move(g));
            }
        }
        prefixes = std::move(next);
    }
    Subset elems;
    for (const auto& g : prefixes) elems.push_back(G.index(g));
    return subgroup_from_elements(G, std::move(elems));
}

Subgroup annihilator(const Subgroup& H) {
    const AbelianGroup& G = H.parent;
    Subset out;
    for (std::size_t a = 0; a < G.order(); ++a) {
        bool ok = true;
        for (std::size_t h : H.elements) {
            if (G.pairing(a, h) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(a);
    }
    return Subgroup{G, std::move(out)};
}

std::vector<Subset> cosets(const Subgroup& H) {
    const AbelianGroup& G = H.parent;
    std::vector<char> seen(G.order(), 0);
    std::vector<Subset> out;
    for (std::size_t g = 0; g < G.order(); ++g) {
        if (seen[g]) continue;
        Subset c;
        for (std::size_t h : H.elements) {
            const std::size_t x = G.add(g, h);
            seen[x] = 1;
            c.push_back(x);
        }
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Complex> dft(const AbelianGroup& G, const std::vector<Complex>& y) {
    require_length(G, y.size(), "dft");
    const auto roots = roots_table(G);
    std::vector<Complex> out(G.order());
    for (std::size_t a = 0; a < G.order(); ++a) {
        Complex acc = 0.0;
        for (std::size_t g = 0; g < G.order(); ++g) {
            if (y[g] == 0.0) continue;
            acc += std::conj(roots[static_cast<std::size_t>(G.pairing(a, g))]) * y[g];
        }
        out[a] = acc;
    }
    return out;
}

std::vector<Complex> inverse_dft(const AbelianGroup& G, const std::vector<Complex>& Y) {
    require_length(G, Y.size(), "inverse_dft");
    const auto roots = roots_table(G);
    const double inv = 1.0 / static_cast<double>(G.order());
    std::vector<Complex> out(G.order());
    for (std::size_t g = 0; g < G.order(); ++g) {
        Complex acc = 0.0;
        for (std::size_t a = 0; a < G.order(); ++a) acc += roots[static_cast<std::size_t>(G.pairing(a, g))] * Y[a];
        out[g] = acc * inv;
    }
    return out;
}

std::vector<Complex> convolve(const AbelianGroup& G, const std::vector<Complex>& y1, const std::vector<Complex>& y2) {
    require_length(G, y1.size(), "convolve");
    require_length(G, y2.size(), "convolve");
    std::vector<Complex> out(G.order());
    for (std::size_t g = 0; g < G.order(); ++g) {
        Complex acc = 0.0;
        for (std::size_t h = 0; h < G.order(); ++h) acc += y1[G.sub(g, h)] * y2[h];
        out[g] = acc;
    }
    return out;
}

std::vector<Complex> involution(const AbelianGroup& G, const std::vector<Complex>& y) {
    require_length(G, y.size(), "involution");
    std::vector<Complex> out(G.order());
    for (std::size_t g = 0; g < G.order(); ++g) out[g] = std::conj(y[G.neg(g)]);
    return out;
}

std::vector<std::int64_t> autocorrelation(const AbelianGroup& G, const Subset& S) {
    std::vector<std::int64_t> out(G.order(), 0);
    for (std::size_t a : S) {
        if (a >= G.order()) throw DomainError("subset element out of range for " + G.to_string());
        for (std::size_t b : S) ++out[G.sub(a, b)];
    }
    return out;
}

std::vector<Complex> indicator(const AbelianGroup& G, const Subset& S) {
    std::vector<Complex> out(G.order(), 0.0);
    for (std::size_t s : S) {
        if (s >= G.order()) throw DomainError("subset element out of range for " + G.to_string());
        out[s] = 1.0;
    }
    return out;
}

Subset normalize_subset(const AbelianGroup& G, Subset S) {
    for (std::size_t s : S)
        if (s >= G.order()) throw DomainError("subset element out of range for " + G.to_string());
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    return S;
}

Subset to_subset(const AbelianGroup& G, const std::vector<GroupElement>& elems) {
    Subset out;
    for (const auto& e : elems) out.push_back(G.index(e));
    return normalize_subset(G, std::move(out));
}

namespace {

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<AbelianGroup> abelian_groups_of_order(std::int64_t n) {
    if (n < 1) throw DomainError("group order must be >= 1");
    std::vector<std::pair<std::int64_t, int>> primes;
    std::int64_t m = n;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e) primes.emplace_back(p, e);
    }
    if (m > 1) primes.emplace_back(m, 1);
    std::vector<std::vector<std::int64_t>> acc{{}};
    for (auto [p, e] : primes) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions(e, e, cur, parts);
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& base : acc) {
            for (const auto& part : parts) {
                auto v = base;
                for (int k : part) {
                    std::int64_t q = 1;
                    for (int i = 0; i < k; ++i) q *= p;
                    v.push_back(q);
                }
                next.push_back(v);
            }
        }
        acc = std::move(next);
    }
    std::vector<AbelianGroup> out;
    for (auto& mods : acc) out.emplace_back(mods.empty() ? std::vector<std::int64_t>{1} : mods);
    return out;
}

}  // namespace ectff
