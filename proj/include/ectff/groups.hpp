#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ectff {

using Complex = std::complex<double>;
using GroupElement = std::vector<std::int64_t>;

// Elements are addressed by their mixed-radix rank ("index"): the first
// coordinate is the most significant, so index order is lexicographic order.
// Subsets are sorted vectors of indices.
using Subset = std::vector<std::size_t>;

inline constexpr std::int64_t kDefaultGroupCap = 4096;

class AbelianGroup {
public:
    AbelianGroup() : AbelianGroup(std::vector<std::int64_t>{1}) {}
    explicit AbelianGroup(std::vector<std::int64_t> moduli, std::int64_t cap = kDefaultGroupCap);

    // "Z13", "Z3xZ3", "Z4xZ2" (also accepts '*' and ' x ').
    static AbelianGroup parse(std::string_view literal, std::int64_t cap = kDefaultGroupCap);

    const std::vector<std::int64_t>& moduli() const { return moduli_; }
    std::size_t order() const { return order_; }
    std::size_t rank() const { return moduli_.size(); }
    std::string to_string() const;

    std::size_t index(const GroupElement& g) const;
    GroupElement element(std::size_t idx) const;
    bool contains(const GroupElement& g) const;

    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t sub(std::size_t a, std::size_t b) const;
    std::size_t neg(std::size_t a) const;

    // Exponent of exp(2 pi i k / exponent()) for the character pairing <a, g>.
    std::int64_t exponent() const { return exponent_; }
    std::int64_t pairing(std::size_t a, std::size_t g) const;

    friend bool operator==(const AbelianGroup& x, const AbelianGroup& y) { return x.moduli_ == y.moduli_; }

private:
    std::vector<std::int64_t> moduli_;
    std::vector<std::size_t> stride_;
    std::vector<std::int64_t> scale_;  // exponent / modulus
    std::size_t order_ = 1;
    std::int64_t exponent_ = 1;
};

// exp(2 pi i sum_j a_j g_j / n_j); a ranges over the whole dual via self-duality.
Complex character_value(const AbelianGroup& G, const GroupElement& a, const GroupElement& g);
Complex character_value(const AbelianGroup& G, std::size_t a, std::size_t g);

struct Subgroup {
    AbelianGroup parent;
    Subset elements;  // sorted, contains 0

    std::size_t order() const { return elements.size(); }
    bool contains(std::size_t g) const;
};

Subgroup subgroup_generated(const AbelianGroup& G, const std::vector<GroupElement>& generators);
Subgroup subgroup_generated_idx(const AbelianGroup& G, const Subset& generators);
// Validates closure; throws DomainError otherwise.
Subgroup subgroup_from_elements(const AbelianGroup& G, Subset elements);
Subgroup trivial_subgroup(const AbelianGroup& G);
Subgroup whole_group(const AbelianGroup& G);
std::vector<Subgroup> all_subgroups(const AbelianGroup& G);

// Product form "Z13x{0}", "{0,2}xZ4" (one factor per cyclic component), or
// generator form "<(1,0),(0,2)>"; a bare integer is accepted for rank-1 groups.
Subgroup parse_subgroup(const AbelianGroup& G, std::string_view literal);

// {a : gamma_a(h) = 1 for all h in H}
Subgroup annihilator(const Subgroup& H);

// Cosets of H, each sorted, ordered by their least element (the canonical representative).
std::vector<Subset> cosets(const Subgroup& H);

// (dft y)(a) = sum_g conj(gamma_a(g)) y(g); inverse carries the 1/G.
std::vector<Complex> dft(const AbelianGroup& G, const std::vector<Complex>& y);
std::vector<Complex> inverse_dft(const AbelianGroup& G, const std::vector<Complex>& Y);

// (y1 * y2)(g) = sum_h y1(g - h) y2(h)
std::vector<Complex> convolve(const AbelianGroup& G, const std::vector<Complex>& y1,
                              const std::vector<Complex>& y2);
// y~(g) = conj(y(-g))
std::vector<Complex> involution(const AbelianGroup& G, const std::vector<Complex>& y);

// #{(d1, d2) in S x S : d1 - d2 = g}, indexed by g.
std::vector<std::int64_t> autocorrelation(const AbelianGroup& G, const Subset& S);

std::vector<Complex> indicator(const AbelianGroup& G, const Subset& S);

// Sorted, deduplicated, range-checked.
Subset normalize_subset(const AbelianGroup& G, Subset S);
Subset to_subset(const AbelianGroup& G, const std::vector<GroupElement>& elems);

// Every abelian group of order n in primary-decomposition form, e.g. n=12 gives Z4xZ3, Z2xZ2xZ3.
std::vector<AbelianGroup> abelian_groups_of_order(std::int64_t n);

}  // namespace ectff
