#include "ectff/harmonic.hpp"

#include <cmath>

#include "ectff/error.hpp"

namespace ectff {

namespace {

std::string elem_str(const AbelianGroup& G, std::size_t idx) {
    const GroupElement g = G.element(idx);
    std::string s = "(";
    for (std::size_t j = 0; j < g.size(); ++j) s += (j ? "," : "") + std::to_string(g[j]);
    return s + ")";
}

void check_spec(const HarmonicSpec& spec) {
    if (!(spec.subgroup.parent == spec.group)) throw DomainError("harmonic spec: subgroup belongs to a different group");
    if (spec.subset.empty()) throw DomainError("harmonic spec: subset must be nonempty");
    for (std::size_t d : spec.subset)
        if (d >= spec.group.order()) throw DomainError("harmonic spec: subset element out of range");
}

Subset sorted_subset(const HarmonicSpec& spec) { return normalize_subset(spec.group, spec.subset); }

}  // namespace

std::vector<Matrix> harmonic_blocks(const HarmonicSpec& spec) {
    check_spec(spec);
    const AbelianGroup& G = spec.group;
    const Subset D = sorted_subset(spec);
    const double c = 1.0 / std::sqrt(static_cast<double>(D.size()));
    std::vector<Matrix> out;
    for (const Subset& coset : cosets(annihilator(spec.subgroup))) {
        Matrix B(static_cast<Eigen::Index>(D.size()), static_cast<Eigen::Index>(coset.size()));
        for (std::size_t col = 0; col < coset.size(); ++col)
            for (std::size_t row = 0; row < D.size(); ++row)
                B(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = c * character_value(G, coset[col], D[row]);
        out.push_back(std::move(B));
    }
    return out;
}

HarmonicResult build(const HarmonicSpec& spec, const HarmonicOptions& opt) {
    check_spec(spec);
    const AbelianGroup& G = spec.group;
    const Subgroup& H = spec.subgroup;
    const Subset D = sorted_subset(spec);
    CosetPartition part = partition_by_cosets(G, H, D);
    if (!part.constant_cardinality) {
        for (std::size_t i = 1; i < part.parts.size(); ++i) {
            if (part.parts[i].size() != part.parts[0].size())
                throw DomainError("harmonic build needs |D_g| independent of g: coset " + elem_str(G, part.representatives[0]) +
                                  "+H has " + std::to_string(part.parts[0].size()) + " elements of D but coset " +
                                  elem_str(G, part.representatives[i]) + "+H has " + std::to_string(part.parts[i].size()));
        }
    }
    HarmonicFlags flags;
    flags.constant_card = true;
    const auto lambda = df_lambda_within(H, part.parts);
    flags.is_df = lambda.has_value();
    flags.is_ds_each = true;
    for (const Subset& p : part.parts)
        if (!ds_lambda_within(H, p)) flags.is_ds_each = false;

    Subgroup ann = annihilator(H);
    std::vector<std::size_t> reps;
    for (const Subset& c : cosets(ann)) reps.push_back(c.front());
    HarmonicSpec sorted_spec{G, H, D};
    FusionFrame frame(static_cast<int>(D.size()), harmonic_blocks(sorted_spec), Field::Complex);
    HarmonicResult res{std::move(frame), flags, std::nullopt, std::move(part), std::move(ann), std::move(reps), false,
                       std::nullopt, std::nullopt};
    if (flags.is_df) res.df = DifferenceFamily{G, res.partition.parts, *lambda, H};
    const std::int64_t Dn = res.frame.dim(), N = res.frame.n(), R = res.frame.r();
    res.trivial = (R == Dn) || (Dn == N * R);
    if (opt.cross_check && N >= 2) {
        res.report = verify(res.frame, opt.tol);
        if (res.report->is_equichordal != flags.is_df || res.report->is_equiisoclinic != flags.is_ds_each)
            throw InternalError("harmonic frame: combinatorial flags disagree with numerical verification");
    }
    return res;
}

Complex harmonic_inner(const HarmonicSpec& spec, std::size_t gamma1, std::size_t gamma2) {
    check_spec(spec);
    Complex acc = 0.0;
    for (std::size_t d : sorted_subset(spec))
        acc += std::conj(character_value(spec.group, gamma1, d)) * character_value(spec.group, gamma2, d);
    return acc / static_cast<double>(spec.subset.size());
}

std::vector<Complex> cross_gram_spectrum(const HarmonicSpec& spec, std::size_t gamma1, std::size_t gamma2) {
    check_spec(spec);
    const AbelianGroup& G = spec.group;
    const Subset D = sorted_subset(spec);
    const CosetPartition part = partition_by_cosets(G, spec.subgroup, D);
    const std::size_t diff = G.sub(gamma2, gamma1);
    const double scale = static_cast<double>(G.order()) / (static_cast<double>(D.size()) * static_cast<double>(spec.subgroup.order()));
    std::vector<Complex> out;
    for (std::size_t c = 0; c < part.parts.size(); ++c) {
        Complex acc = 0.0;
        for (std::size_t h : part.parts[c]) acc += character_value(G, diff, G.add(part.representatives[c], h));
        out.push_back(scale * acc);
    }
    return out;
}

HarmonicSpec spec_from_df(const DifferenceFamily& df) {
    if (df.within) throw DomainError("from_df needs a family for a whole group");
    if (df.blocks.empty()) throw DomainError("from_df needs at least one block");
    const auto R = static_cast<std::int64_t>(df.R());
    std::vector<std::int64_t> moduli = df.group.moduli();
    moduli.push_back(R);
    AbelianGroup G(moduli);
    Subset H, D;
    for (std::size_t v = 0; v < df.group.order(); ++v) H.push_back(v * static_cast<std::size_t>(R));
    for (std::size_t r = 0; r < df.blocks.size(); ++r)
        for (std::size_t v : df.blocks[r]) D.push_back(v * static_cast<std::size_t>(R) + r);
    Subgroup Hs = subgroup_from_elements(G, std::move(H));
    return HarmonicSpec{G, std::move(Hs), normalize_subset(G, std::move(D))};
}

HarmonicResult from_df(const DifferenceFamily& df, const HarmonicOptions& opt) {
    if (!verify_df(df.group, df.blocks)) throw DomainError("from_df: blocks do not form a difference family");
    return build(spec_from_df(df), opt);
}

HarmonicResult dds_to_ectff(const DivisibleDifferenceSet& dds, const HarmonicOptions& opt) {
    if (!dds.semiregular) throw DomainError("dds_to_ectff needs a semiregular DDS");
    HarmonicSpec spec{dds.group, dds.subgroup, dds.set};
    HarmonicResult res = build(spec, opt);
    if (!res.flags.is_df) throw InternalError("semiregular DDS did not partition into a difference family");
    const auto G = static_cast<double>(dds.group.order());
    const auto H = static_cast<double>(dds.subgroup.order());
    const auto D = static_cast<double>(dds.set.size());
    if (H > 1) {
        const double target = H * (G - D) / (D * G * (H - 1));
        const auto& reps = res.block_representatives;
        const Subgroup& ann = res.annihilator;
        double worst = 0;
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                for (std::size_t eta : ann.elements)
                    worst = std::max(worst, std::abs(std::norm(harmonic_inner(spec, reps[i], dds.group.add(reps[j], eta))) - target));
        if (worst > opt.tol) throw InternalError("cross-coset inner products are not of constant modulus");
        res.cross_coset_modulus_sq = target;
    }
    return res;
}

}  // namespace ectff
