#pragma once

// Fence calculus: contact points of an unfolding on R/2Z, barrier counts,
// the N_{2x} tables and the closed-form periods for the triangle, rhombus
// and kite.

#include <cstdint>
#include <string>
#include <vector>

#include "billiards/orbit.hpp"
#include "billiards/tessellation.hpp"

namespace billiards {

/// f(alpha, beta) = (alpha + beta) mod 2, in [0, 2).
Rational fence_coordinate(const Rational& alpha, const Rational& beta);

struct ContactPoint {
    Rational value;  // in [0, 2)
    int multiplicity = 0;
    bool on_barrier = false;
};

struct ContactProfile {
    std::vector<Rational> sequence;    // c_i in order of increasing i
    std::vector<ContactPoint> points;  // distinct values, ascending
    Rational rise;                     // vertical extent (y/x) T
    int m = 0;                         // common multiplicity (0 when not uniform)
    Rational spacing;                  // common gap between neighbours (0 when not uniform)
    std::int64_t b = 0;                // distinct points on the barrier
    std::int64_t barrier_hits = 0;     // contacts on the barrier, with multiplicity
    std::int64_t N = 0;                // edges_per_strip * rise + barrier_hits

    bool uniform() const { return m > 0; }
};

/// Contact points c_i = f(i, (y/x)(i - a)) for every integer i with 0 < i - a <= T.
/// Requires x >= 1 and an integral rise (y/x) T.
ContactProfile contact_points(const Tessellation& tess, const Rational& a, const DirectionPair& d, const Rational& T);

/// True when c_i = c_{i+T} for every i (T a positive integer).
bool contacts_periodic(const DirectionPair& d, const Rational& a, std::int64_t T);

struct MultiplicitySpacing {
    int m = 0;
    Rational s;
};

/// m = 2, s = 2/x when x = y (mod 2); m = 1, s = 1/x otherwise. Requires x >= 1.
MultiplicitySpacing multiplicity_and_spacing(std::int64_t x, std::int64_t y);

/// Possible numbers of distinct contact points on the shape's barrier over 0 < t <= 2x.
std::vector<std::int64_t> barrier_count_range(ShapeId shape, std::int64_t x, std::int64_t y);
std::vector<std::int64_t> barrier_count_range(std::int64_t x, std::int64_t y);

/// Closed-form count of distinct contact points on the barrier for the offset a.
std::int64_t barrier_count_at(ShapeId shape, const Rational& a, std::int64_t x, std::int64_t y);
std::int64_t barrier_count_at(const Rational& a, std::int64_t x, std::int64_t y);

/// Congruence class of a pair: i = x mod 3, j = 0 when x = y (mod 2) else 1.
struct Branch {
    int i = 0;
    int j = 0;
    friend bool operator==(const Branch&, const Branch&) = default;
    friend auto operator<=>(const Branch&, const Branch&) = default;
};

Branch branch_of(std::int64_t x, std::int64_t y);
std::string to_string(const Branch& b);

/// cy * y + (cx * x + c) / 3.
struct LinearExpr {
    std::int64_t cy = 0;
    std::int64_t cx = 0;
    std::int64_t c = 0;

    std::int64_t operator()(std::int64_t x, std::int64_t y) const;
    friend bool operator==(const LinearExpr&, const LinearExpr&) = default;
};

std::string to_string(const LinearExpr& e);

struct EdgeCount {
    std::int64_t N = 0;
    int mod4 = 0;
};

/// The stored N_{2x} rows for a shape and branch.
const std::vector<LinearExpr>& edge_count_table(ShapeId shape, const Branch& b);
/// The stored period rows for a shape and branch.
const std::vector<LinearExpr>& period_table(ShapeId shape, const Branch& b);

/// N_{2x} options from the stored table; recomputed as strip_weight * y + m * b
/// over barrier_count_range and checked against it (std::logic_error on drift).
std::vector<EdgeCount> edge_count_options(ShapeId shape, std::int64_t x, std::int64_t y);

/// Period for N = N_{2x} by the parity case analysis.
std::int64_t period_from_edge_count(std::int64_t x, std::int64_t y, std::int64_t N);

struct PeriodPrediction {
    Branch branch;
    std::vector<std::int64_t> edge_counts;
    std::vector<std::int64_t> candidates;  // ascending
    bool mono = true;

    bool admits(std::int64_t p) const;
};

/// Candidate periods, derived from edge_count_options and cross-checked
/// against the stored period rows. Hexagon is rejected.
PeriodPrediction period_formula(ShapeId shape, std::int64_t x, std::int64_t y);

/// p2 = 2 p1 + 2 or p2 = 2 p1 - 2 for a two-candidate prediction; true otherwise.
bool doubling_relation_holds(const PeriodPrediction& p);

}  // namespace billiards
