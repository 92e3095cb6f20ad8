#pragma once

// Cross-verification sweeps over direction pairs and offsets for the
// triangle, rhombus and kite. Used by the CLI and the acceptance suite.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "billiards/fence.hpp"
#include "billiards/orbit.hpp"

namespace billiards {

/// (0, 1), (1, 1) and every coprime x < y with x + y <= max_sum, ordered by (x + y, x).
std::vector<DirectionPair> obtuse_pairs(std::int64_t max_sum);

/// Least T > 0 with T, (y/x) T integral and T + (y/x) T even, by direct search.
std::int64_t brute_force_alignment(std::int64_t x, std::int64_t y);

/// Corollary-style termination check: on a tessellation with horizontal
/// edges the last crossing is horizontal; otherwise the end point lies on a
/// horizontal incline of the triangle tessellation.
bool terminates_on_horizontal(const Tessellation& tess, const DirectionPair& d, const Rational& a,
                              const OrbitResult& unfolded);

struct SweepOptions {
    ShapeId shape = ShapeId::Triangle120;
    std::int64_t max_sum = 10;
    std::size_t offsets = 8;         // non-singular offsets per pair
    std::size_t random_offsets = 20; // offsets for the closed-form barrier count check
    std::uint64_t seed = 1;
    int jobs = 1;
};

struct ProbeRow {
    std::int64_t x = 0;
    std::int64_t y = 0;
    Rational a;
    OrbitStatus status = OrbitStatus::Singular;
    std::int64_t period = 0;
    std::optional<std::int64_t> T;
    std::optional<std::int64_t> N2x;
    Branch branch;
};

struct Mismatch {
    std::string check;
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::optional<Rational> a;
    std::string detail;
    bool engine_disagreement = false;
};

std::string to_string(const Mismatch& m);

struct SweepReport {
    ShapeId shape = ShapeId::Triangle120;
    std::int64_t pairs = 0;
    std::int64_t probes = 0;
    std::int64_t periodic = 0;
    std::int64_t singular = 0;
    std::int64_t biperiodic_pairs = 0;
    std::int64_t both_realized = 0;
    std::vector<ProbeRow> rows;
    std::vector<Mismatch> mismatches;
    std::map<std::string, std::int64_t> checks;  // check name -> number of passing evaluations

    bool engine_disagreement() const;
};

SweepReport run_sweep(const SweepOptions& options, const std::function<void(std::int64_t, std::int64_t)>& progress = {});

}  // namespace billiards
