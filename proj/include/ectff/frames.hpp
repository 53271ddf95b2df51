#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ectff/common.hpp"
#include "ectff/designs.hpp"
#include "ectff/triples.hpp"

namespace ectff {

using Matrix = Eigen::MatrixXcd;

struct Tolerances {
    double orth = 1e-10;
    double real = 1e-10;
};

inline constexpr double kDefaultVerifyTol = 1e-9;

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// N synthesis blocks, each dim x R with orthonormal columns.
class FusionFrame {
public:
    FusionFrame(int dim, std::vector<Matrix> blocks, Field field, const Tolerances& tol = {});

    int dim() const { return dim_; }
    int n() const { return static_cast<int>(blocks_.size()); }
    int r() const { return r_; }
    Field field() const { return field_; }
    ParamTriple params() const { return {dim_, n(), r_}; }
    const std::vector<Matrix>& blocks() const { return blocks_; }
    const Matrix& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& notes() const { return notes_; }

    Matrix synthesis() const;  // dim x NR
    Matrix projection(int i) const;

private:
    int dim_;
    int r_;
    std::vector<Matrix> blocks_;
    Field field_;
    std::vector<std::string> notes_;
};

struct PairAngles {
    int i = 0, j = 0;
    std::vector<double> cos2;  // descending
};

struct VerificationReport {
    ParamTriple params;
    Field field = Field::Complex;
    double tol = kDefaultVerifyTol;  // after scaling
    bool is_tight = false;
    double tight_residual = 0;
    double tight_constant = 0;
    bool is_equichordal = false;
    double trace_min = 0, trace_max = 0, trace_spread = 0;
    bool is_equiisoclinic = false;
    double ei_spread = 0;  // max |cos^2 - ei target| over pairs and singular values
    double block_coherence = 0;
    double min_chordal_sq = 0;
    Rational trace_target;
    Rational ei_cos2_target;
    std::vector<PairAngles> principal_angle_table;
    std::vector<std::pair<int, int>> repeated_pairs;
    std::vector<std::string> notes;
};

VerificationReport verify(const FusionFrame& f, double tol = kDefaultVerifyTol);

double chordal_distance(const Matrix& P1, const Matrix& P2);
double spectral_distance(const Matrix& P1, const Matrix& P2);
// Ascending angles in [0, pi/2] between the spans of two orthonormal bases.
std::vector<double> principal_angles(const Matrix& B1, const Matrix& B2);
// Descending squared singular values of B1* B2, clamped to [0, 1].
std::vector<double> cos2_spectrum(const Matrix& B1, const Matrix& B2);

// Gram matrix Phi* Phi of the concatenated synthesis operator.
Matrix fusion_gram(const FusionFrame& f);

FusionFrame naimark_complement(const FusionFrame& f, double tol = kDefaultVerifyTol);
FusionFrame spatial_complement(const FusionFrame& f);
FusionFrame direct_sum(const FusionFrame& a, const FusionFrame& b);
FusionFrame hoggar_realify(const FusionFrame& f);

FusionFrame construct_trivial(const ParamTriple& t);
FusionFrame construct_2R_4_R(int R, Field field);
// Real TFF(2R,4,R) with U1 = U2 on the odd axes and U3 = U4 on the even axes.
FusionFrame construct_f0_real(int R);
FusionFrame construct_zauner(const Bibd& design);

}  // namespace ectff
