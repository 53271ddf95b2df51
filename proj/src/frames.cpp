#include "ectff/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ectff/error.hpp"

namespace ectff {

namespace {

using RealMatrix = Eigen::MatrixXd;

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return g ? Rational{num / g, den / g} : Rational{num, den};
}

std::string pstr(const ParamTriple& t) { return to_string(t); }

double orthonormality_error(const Matrix& B) {
    const Matrix g = B.adjoint() * B;
    return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

// Multiplies each column by the unit scalar making its first non-negligible entry real positive.
void normalize_phases(Matrix& V) {
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
        for (Eigen::Index r = 0; r < V.rows(); ++r) {
            const double m = std::abs(V(r, c));
            if (m > 1e-10) {
                V.col(c) *= std::conj(V(r, c)) / m;
                V(r, c) = m;
                break;
            }
        }
    }
}

}  // namespace

FusionFrame::FusionFrame(int dim, std::vector<Matrix> blocks, Field field, const Tolerances& tol)
    : dim_(dim), r_(0), blocks_(std::move(blocks)), field_(field) {
    if (dim_ < 1) throw DomainError("frame dimension must be >= 1");
    if (blocks_.empty()) throw DomainError("frame needs at least one block");
    r_ = static_cast<int>(blocks_.front().cols());
    if (r_ < 1) throw DomainError("frame blocks need at least one column");
    bool zeroed = false;
    for (std::size_t n = 0; n < blocks_.size(); ++n) {
        Matrix& B = blocks_[n];
        if (B.rows() != dim_ || B.cols() != r_)
            throw DomainError("block " + std::to_string(n) + " has shape " + std::to_string(B.rows()) + "x" +
                              std::to_string(B.cols()) + ", expected " + std::to_string(dim_) + "x" + std::to_string(r_));
        if (field_ == Field::Real) {
            const double im = B.imag().cwiseAbs().maxCoeff();
            if (im > tol.real)
                throw DomainError("block " + std::to_string(n) + " is tagged real but has imaginary part " + std::to_string(im));
            if (im > 0) zeroed = true;
            B = B.real().cast<Complex>();
        }
        const double err = orthonormality_error(B);
        if (err > tol.orth)
            throw DomainError("block " + std::to_string(n) + " columns are not orthonormal (error " + std::to_string(err) + ")");
    }
    if (zeroed) notes_.push_back("imaginary parts below tol_real were set to zero");
}

Matrix FusionFrame::synthesis() const {
    Matrix phi(dim_, static_cast<Eigen::Index>(r_) * n());
    for (int i = 0; i < n(); ++i) phi.middleCols(static_cast<Eigen::Index>(i) * r_, r_) = blocks_[static_cast<std::size_t>(i)];
    return phi;
}

Matrix FusionFrame::projection(int i) const {
    const Matrix& B = block(i);
    return B * B.adjoint();
}

Matrix fusion_gram(const FusionFrame& f) {
    const Matrix phi = f.synthesis();
    return phi.adjoint() * phi;
}

std::vector<double> cos2_spectrum(const Matrix& B1, const Matrix& B2) {
    if (B1.rows() != B2.rows()) throw DomainError("cos2_spectrum: bases live in different dimensions");
    const Matrix C = B1.adjoint() * B2;
    Eigen::JacobiSVD<Matrix> svd(C);
    std::vector<double> out;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        const double s = std::clamp(svd.singularValues()(k), 0.0, 1.0);
        out.push_back(s * s);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

VerificationReport verify(const FusionFrame& f, double tol) {
    if (f.n() < 2) throw DomainError("verify needs N >= 2 subspaces");
    const std::int64_t D = f.dim(), N = f.n(), R = f.r();
    VerificationReport rep;
    rep.params = f.params();
    rep.field = f.field();
    rep.notes = f.notes();
    rep.trace_target = make_rational(R * (N * R - D), D * (N - 1));
    rep.ei_cos2_target = make_rational(N * R - D, D * (N - 1));
    rep.tight_constant = static_cast<double>(N * R) / static_cast<double>(D);

    const Matrix phi = f.synthesis();
    const Matrix S = phi * phi.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
    const double norm2 = es.eigenvalues().maxCoeff();
    rep.tol = tol * std::max(1.0, norm2);
    rep.tight_residual = (S - rep.tight_constant * Matrix::Identity(D, D)).norm();
    rep.is_tight = rep.tight_residual <= rep.tol * std::sqrt(static_cast<double>(D));

    const Matrix gram = phi.adjoint() * phi;
    const double ei_target = rep.ei_cos2_target.value();
    rep.trace_min = INFINITY;
    rep.trace_max = -INFINITY;
    rep.min_chordal_sq = INFINITY;
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            const Matrix C = gram.block(static_cast<Eigen::Index>(i) * R, static_cast<Eigen::Index>(j) * R, R, R);
            const double tr = C.squaredNorm();
            rep.trace_min = std::min(rep.trace_min, tr);
            rep.trace_max = std::max(rep.trace_max, tr);
            rep.min_chordal_sq = std::min(rep.min_chordal_sq, static_cast<double>(R) - tr);
            Eigen::JacobiSVD<Matrix> svd(C);
            PairAngles pa{i, j, {}};
            for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
                const double s = std::clamp(svd.singularValues()(k), 0.0, 1.0);
                pa.cos2.push_back(s * s);
            }
            std::sort(pa.cos2.begin(), pa.cos2.end(), std::greater<>());
            for (double c : pa.cos2) rep.ei_spread = std::max(rep.ei_spread, std::abs(c - ei_target));
            rep.block_coherence = std::max(rep.block_coherence, std::sqrt(pa.cos2.front()));
            if (pa.cos2.back() >= 1.0 - rep.tol) rep.repeated_pairs.emplace_back(i, j);
            rep.principal_angle_table.push_back(std::move(pa));
        }
    }
    rep.trace_spread = rep.trace_max - rep.trace_min;
    rep.is_equichordal = rep.is_tight && rep.trace_spread <= rep.tol;
    rep.is_equiisoclinic = rep.is_equichordal && rep.ei_spread <= rep.tol;
    if (!rep.repeated_pairs.empty()) rep.notes.push_back("frame contains repeated subspaces");
    return rep;
}

namespace {

Eigen::Index projection_rank(const Matrix& P) {
    return static_cast<Eigen::Index>(std::llround(P.trace().real()));
}

void require_pair(const Matrix& P1, const Matrix& P2) {
    if (P1.rows() != P1.cols() || P2.rows() != P2.cols() || P1.rows() != P2.rows())
        throw DomainError("projections must be square with equal dimensions");
    if (projection_rank(P1) != projection_rank(P2)) throw DomainError("distance needs projections of equal rank");
}

}  // namespace

double chordal_distance(const Matrix& P1, const Matrix& P2) {
    require_pair(P1, P2);
    return (P1 - P2).norm() / std::sqrt(2.0);
}

double spectral_distance(const Matrix& P1, const Matrix& P2) {
    require_pair(P1, P2);
    Eigen::JacobiSVD<Matrix> svd(P1 * P2);
    const double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    return std::sqrt(std::max(0.0, 1.0 - s * s));
}

std::vector<double> principal_angles(const Matrix& B1, const Matrix& B2) {
    std::vector<double> out;
    for (double c2 : cos2_spectrum(B1, B2)) out.push_back(std::acos(std::sqrt(c2)));
    return out;
}

FusionFrame naimark_complement(const FusionFrame& f, double tol) {
    const std::int64_t D = f.dim(), N = f.n(), R = f.r();
    const std::int64_t NR = N * R;
    if (D == NR) throw DomainError("Naimark complement needs D < NR, got " + pstr(f.params()));
    if (D > NR) throw DomainError("Naimark complement needs D < NR, got " + pstr(f.params()));
    const Matrix phi = f.synthesis();
    const Matrix S = phi * phi.adjoint();
    const double A = static_cast<double>(NR) / static_cast<double>(D);
    const double resid = (S - A * Matrix::Identity(D, D)).norm();
    if (resid > tol * std::max(1.0, A) * std::sqrt(static_cast<double>(D)))
        throw DomainError("Naimark complement needs a tight input (residual " + std::to_string(resid) + ")");

    const Eigen::Index M = NR - D;
    const double scale = std::sqrt(static_cast<double>(NR) / static_cast<double>(M));
    Matrix Q = Matrix::Identity(NR, NR) - (1.0 / A) * (phi.adjoint() * phi);
    Matrix V(NR, M);
    if (f.field() == Field::Real) {
        const RealMatrix Qr = Q.real();
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(Qr);
        for (Eigen::Index c = 0; c < M; ++c) V.col(c) = es.eigenvectors().col(NR - 1 - c).cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> es(Q);
        for (Eigen::Index c = 0; c < M; ++c) V.col(c) = es.eigenvectors().col(NR - 1 - c);
    }
    normalize_phases(V);
    const Matrix psi = scale * V.adjoint();
    std::vector<Matrix> blocks;
    for (std::int64_t n = 0; n < N; ++n) blocks.push_back(psi.middleCols(n * R, R));
    return FusionFrame(static_cast<int>(M), std::move(blocks), f.field());
}

FusionFrame spatial_complement(const FusionFrame& f) {
    const int D = f.dim(), R = f.r();
    if (R >= D) throw DomainError("spatial complement needs R < D, got " + pstr(f.params()));
    std::vector<Matrix> blocks;
    for (const Matrix& B : f.blocks()) {
        if (f.field() == Field::Real) {
            Eigen::HouseholderQR<RealMatrix> qr(B.real());
            const RealMatrix Qm = qr.householderQ();
            blocks.push_back(Qm.rightCols(D - R).cast<Complex>());
        } else {
            Eigen::HouseholderQR<Matrix> qr(B);
            const Matrix Qm = qr.householderQ();
            blocks.push_back(Qm.rightCols(D - R));
        }
    }
    return FusionFrame(D, std::move(blocks), f.field());
}

FusionFrame direct_sum(const FusionFrame& a, const FusionFrame& b) {
    if (a.n() != b.n()) throw DomainError("direct sum needs equal N");
    if (static_cast<std::int64_t>(a.r()) * b.dim() != static_cast<std::int64_t>(b.r()) * a.dim())
        throw DomainError("direct sum needs equal ratios R/D, got " + pstr(a.params()) + " and " + pstr(b.params()));
    const int D = a.dim() + b.dim(), R = a.r() + b.r();
    std::vector<Matrix> blocks;
    for (int n = 0; n < a.n(); ++n) {
        Matrix B = Matrix::Zero(D, R);
        B.topLeftCorner(a.dim(), a.r()) = a.block(n);
        B.bottomRightCorner(b.dim(), b.r()) = b.block(n);
        blocks.push_back(std::move(B));
    }
    const Field fld = (a.field() == Field::Real && b.field() == Field::Real) ? Field::Real : Field::Complex;
    return FusionFrame(D, std::move(blocks), fld);
}

FusionFrame hoggar_realify(const FusionFrame& f) {
    const int D = f.dim(), R = f.r();
    std::vector<Matrix> blocks;
    for (const Matrix& B : f.blocks()) {
        Matrix O = Matrix::Zero(2 * D, 2 * R);
        for (int p = 0; p < D; ++p) {
            for (int q = 0; q < R; ++q) {
                const double a = B(p, q).real(), b = B(p, q).imag();
                O(2 * p, 2 * q) = a;
                O(2 * p, 2 * q + 1) = -b;
                O(2 * p + 1, 2 * q) = b;
                O(2 * p + 1, 2 * q + 1) = a;
            }
        }
        blocks.push_back(std::move(O));
    }
    return FusionFrame(2 * D, std::move(blocks), Field::Real);
}

FusionFrame construct_trivial(const ParamTriple& t) {
    if (t.N < 1 || t.D < 1 || t.R < 1) throw DomainError("trivial construction needs positive D, N, R");
    std::vector<Matrix> blocks;
    if (t.D == t.R) {
        for (std::int64_t n = 0; n < t.N; ++n) blocks.push_back(Matrix::Identity(t.D, t.D));
    } else if (t.D == t.N * t.R) {
        const Matrix I = Matrix::Identity(t.D, t.D);
        for (std::int64_t n = 0; n < t.N; ++n) blocks.push_back(I.middleCols(n * t.R, t.R));
    } else {
        throw DomainError("trivial construction needs R = D or D = NR, got " + pstr(t));
    }
    return FusionFrame(static_cast<int>(t.D), std::move(blocks), Field::Real);
}

FusionFrame construct_2R_4_R(int R, Field field) {
    if (R < 1) throw DomainError("EITFF(2R,4,R) needs R >= 1");
    if (field == Field::Real && R % 2 != 0)
        throw DomainError("a real EITFF(2R,4,R) exists if and only if R is even; got R = " + std::to_string(R));
    Matrix U = Matrix::Zero(R, R);
    if (field == Field::Complex) {
        const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
        U = omega * Matrix::Identity(R, R);
    } else {
        const double c = -0.5, s = std::sqrt(3.0) / 2.0;  // rotation by 2 pi / 3
        for (int k = 0; k < R; k += 2) {
            U(k, k) = c;
            U(k, k + 1) = -s;
            U(k + 1, k) = s;
            U(k + 1, k + 1) = c;
        }
    }
    const Matrix I = Matrix::Identity(R, R);
    const double a = 1.0 / std::sqrt(3.0), b = std::sqrt(2.0 / 3.0);
    auto stack = [&](const Matrix& top, const Matrix& bottom) {
        Matrix B(2 * R, R);
        B.topRows(R) = top;
        B.bottomRows(R) = bottom;
        return B;
    };
    std::vector<Matrix> blocks{stack(I, Matrix::Zero(R, R)), stack(a * I, b * I), stack(a * I, b * U),
                               stack(a * I, -b * (I + U))};
    return FusionFrame(2 * R, std::move(blocks), field);
}

FusionFrame construct_f0_real(int R) {
    if (R < 1) throw DomainError("TFF(2R,4,R) needs R >= 1");
    const int D = 2 * R;
    Matrix odd = Matrix::Zero(D, R), even = Matrix::Zero(D, R);
    for (int k = 0; k < R; ++k) {
        odd(2 * k, k) = 1.0;       // axes 1, 3, 5, ... in one-based numbering
        even(2 * k + 1, k) = 1.0;  // axes 2, 4, 6, ...
    }
    return FusionFrame(D, {odd, odd, even, even}, Field::Real);
}

FusionFrame construct_zauner(const Bibd& design) {
    const auto params = verify_bibd(design);
    if (!params) throw DomainError("Zauner construction needs a BIBD; the given blocks are not balanced");
    const auto B = static_cast<int>(params->b);
    const auto R = static_cast<int>(params->r);
    std::vector<Matrix> blocks;
    for (std::int64_t v = 0; v < design.v; ++v) {
        Matrix M = Matrix::Zero(B, R);
        int col = 0;
        for (int b = 0; b < B; ++b) {
            const auto& blk = design.blocks[static_cast<std::size_t>(b)];
            if (std::find(blk.begin(), blk.end(), v) != blk.end()) M(b, col++) = 1.0;
        }
        blocks.push_back(std::move(M));
    }
    return FusionFrame(B, std::move(blocks), Field::Real);
}

}  // namespace ectff
