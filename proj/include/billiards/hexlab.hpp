#pragma once

// Experiments on the regular hexagon: periods from the folding oracle,
// matching against the conjectured twelve-row period table, the linear
// modulus search and the (27y - 7x, 11y - 3x) closure check.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "billiards/fence.hpp"
#include "billiards/orbit.hpp"

namespace billiards {

/// Conjectured expressions for a class; a_side selects the A_{i,j} row.
const std::vector<LinearExpr>& conjecture_row(const Branch& b, bool a_side);

/// Period on the hexagon by folding only. Truncated runs are retried with a
/// larger strike budget (up to 64 times the default) before giving up.
OrbitResult hexagon_period(const Rational& a, std::int64_t x, std::int64_t y);

/// Coprime pairs with x/3 < y < x and x + y <= max_sum, ordered by (x + y, x).
std::vector<DirectionPair> hexagon_pairs(std::int64_t max_sum);

struct HexProbe {
    std::int64_t x = 0;
    std::int64_t y = 0;
    Rational a;
    OrbitStatus status = OrbitStatus::Truncated;
    std::int64_t period = 0;
};

std::vector<HexProbe> probe_pair(const DirectionPair& d, std::size_t offsets, std::uint64_t seed);
std::vector<HexProbe> probe_hexagon(const std::vector<DirectionPair>& pairs, std::size_t offsets,
                                    std::uint64_t seed, int jobs);

struct BranchRecord {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t period = 0;
    Branch branch;
    std::string matched_formula;  // expression text, or "neither"
    bool in_a = false;            // period occurs in the A row
    bool in_ac = false;           // period occurs in the A^c row

    friend bool operator==(const BranchRecord&, const BranchRecord&) = default;
};

BranchRecord classify_period(std::int64_t x, std::int64_t y, std::int64_t period);

/// One record per distinct periodic (x, y, period), sorted by (x + y, x, period).
std::vector<BranchRecord> records_from_probes(const std::vector<HexProbe>& probes);

std::vector<BranchRecord> build_dataset(std::int64_t max_sum, std::size_t offsets_per_pair, std::uint64_t seed = 1,
                                        int jobs = 1);

enum class Side { A, Ac, Ambiguous, Neither };

std::string_view name(Side s);

struct PairSummary {
    std::int64_t x = 0;
    std::int64_t y = 0;
    Branch branch;
    std::vector<std::int64_t> periods;
    Side side = Side::Neither;
};

Side side_of(const Branch& b, const std::vector<std::int64_t>& periods, std::int64_t x, std::int64_t y);

std::vector<PairSummary> summarize(const std::vector<BranchRecord>& records);

struct ModulusCondition {
    int c1 = 0;
    int c2 = 0;
    int c3 = 2;
    friend bool operator==(const ModulusCondition&, const ModulusCondition&) = default;
};

struct GridRange {
    int c_min = -36;
    int c_max = 36;
    int m_min = 2;
    int m_max = 36;
};

/// Conditions under which, in every congruence class, the A / A^c label is a
/// function of (c1 x + c2 y) mod c3. Only pairs labelled A or A^c take part,
/// and at least one class must carry both labels (std::invalid_argument otherwise).
std::vector<ModulusCondition> modulus_grid_search(const std::vector<PairSummary>& pairs, const GridRange& range = {});

/// Synthetic control: pairs from hexagon_pairs(max_sum) placed in one class and
/// labelled by (x + y) mod 2.
std::vector<PairSummary> planted_parity_dataset(std::int64_t max_sum);

struct ClosureEntry {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t image_x = 0;
    std::int64_t image_y = 0;
    bool in_range = false;
    std::int64_t gcd = 1;
    Branch source_branch;
    Side source_side = Side::Neither;
    std::optional<PairSummary> image;  // of the primitive image pair
};

struct ClosureReport {
    std::vector<ClosureEntry> entries;
    // (source class, source side) -> (image class, image side) -> count
    std::map<std::string, std::map<std::string, int>> transitions;
    int out_of_range = 0;
    int non_primitive = 0;
    int a_to_non_a = 0;  // sources on the A side whose image is not on the A side
};

std::pair<std::int64_t, std::int64_t> closure_image(std::int64_t x, std::int64_t y);

ClosureReport closure_map_check(const std::vector<PairSummary>& pairs, std::size_t offsets, std::uint64_t seed,
                                int jobs);

}  // namespace billiards
