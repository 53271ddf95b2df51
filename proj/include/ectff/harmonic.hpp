#pragma once

#include <optional>
#include <vector>

#include "ectff/designs.hpp"
#include "ectff/frames.hpp"
#include "ectff/groups.hpp"

namespace ectff {

struct HarmonicSpec {
    AbelianGroup group;
    Subgroup subgroup;
    Subset subset;
};

struct HarmonicFlags {
    bool constant_card = false;
    bool is_df = false;       // {D_g} is a DF for H
    bool is_ds_each = false;  // every D_g is a difference set for H
};

struct HarmonicOptions {
    double tol = kDefaultVerifyTol;
    bool cross_check = true;  // run verify() and compare it with the flags
};

struct HarmonicResult {
    FusionFrame frame;
    HarmonicFlags flags;
    std::optional<DifferenceFamily> df;  // the D_g, when they form a DF for H
    CosetPartition partition;
    Subgroup annihilator;
    std::vector<std::size_t> block_representatives;  // least character of each coset of the annihilator
    bool trivial = false;                            // R = D or D = NR
    std::optional<VerificationReport> report;
    std::optional<double> cross_coset_modulus_sq;    // set by dds_to_ectff
};

// Raw blocks phi_gamma(d) = D^{-1/2} gamma(d), one per coset of the annihilator; no orthonormality check.
std::vector<Matrix> harmonic_blocks(const HarmonicSpec& spec);

HarmonicResult build(const HarmonicSpec& spec, const HarmonicOptions& opt = {});

// <phi_{gamma1}, phi_{gamma2}>
Complex harmonic_inner(const HarmonicSpec& spec, std::size_t gamma1, std::size_t gamma2);

// Eigenvalues of the cross-Gram of the blocks through gamma1 and gamma2, one per coset of H
// (in canonical coset order); their moduli are the cross-Gram's singular values.
std::vector<Complex> cross_gram_spectrum(const HarmonicSpec& spec, std::size_t gamma1, std::size_t gamma2);

// G = V x Z_R, H = V x {0}, D = union of D_r x {r}: an ECTFF(KR, V, R).
HarmonicSpec spec_from_df(const DifferenceFamily& df);
HarmonicResult from_df(const DifferenceFamily& df, const HarmonicOptions& opt = {});

HarmonicResult dds_to_ectff(const DivisibleDifferenceSet& dds, const HarmonicOptions& opt = {});

}  // namespace ectff
