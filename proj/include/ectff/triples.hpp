#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ectff/common.hpp"

namespace ectff {

// (D, N, R): ambient dimension, number of subspaces, subspace dimension.
// Entries may be zero or negative; orbits pass through such points.
struct ParamTriple {
    std::int64_t D = 0;
    std::int64_t N = 0;
    std::int64_t R = 0;

    friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
    friend auto operator<=>(const ParamTriple&, const ParamTriple&) = default;
};

std::string to_string(const ParamTriple& t);

enum class Move { Naimark, Spatial };
std::string to_string(Move m);

enum class OrbitTag { SmallN2, SmallN3, FZero, FNegTrivialSeed, FNegNoTFF, FPos };
std::string to_string(OrbitTag t);

struct OrbitClass {
    OrbitTag tag = OrbitTag::FPos;
    std::optional<ParamTriple> minimal_point;
    std::vector<ParamTriple> orbit_sample;
};

struct ExistenceVerdict {
    bool exists = false;
    std::optional<ParamTriple> seed;
    std::vector<Move> chain;  // applied in order, seed -> query
};

struct OrbitOptions {
    int max_steps = 64;  // cap on |K| for any walk or window
};

// D*N*R - D^2 - N*R^2, overflow-checked.
std::int64_t invariant(const ParamTriple& t);

ParamTriple naimark(const ParamTriple& t);
ParamTriple spatial(const ParamTriple& t);
ParamTriple apply(Move m, const ParamTriple& t);

// Entry K of the Naimark-spatial sequence: x(0)=t, x(1)=nu(t), x(2)=sigma(nu(t)), ...
// and x(-1)=sigma(t), x(-2)=nu(sigma(t)), ...  Returns entries kmin..kmax in order.
std::vector<ParamTriple> sequence(const ParamTriple& t, int kmin, int kmax,
                                  const OrbitOptions& opt = {});

// 0 < D <= NR - D and 0 < R <= D - R.
bool is_minimal(const ParamTriple& t);

// R in {D/N, D} with R > 0.
bool is_trivial_seed(const ParamTriple& t);

OrbitClass classify(const ParamTriple& t, const OrbitOptions& opt = {});

ExistenceVerdict tff_exists(const ParamTriple& t, const OrbitOptions& opt = {});

// Necessary condition for an EITFF: R = R0, D in {D0, NR0 - D0}, and not R < D < 2R.
bool eitff_feasible(const ParamTriple& t, const OrbitOptions& opt = {});

std::int64_t gerzon_max(std::int64_t D, Field field);

}  // namespace ectff
