#include "billiards/hexlab.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "billiards/parallel.hpp"

namespace billiards {

namespace {

struct ConjectureRows {
    std::vector<LinearExpr> a;
    std::vector<LinearExpr> ac;
};

// Index 2i + j; entries as (cy, cx, c) for cy * y + (cx * x + c) / 3.
const std::array<ConjectureRows, 6>& conjecture_table() {
    static const std::array<ConjectureRows, 6> table{{
        {{{3, 3, 0}}, {{1, 1, 0}}},
        {{{6, 6, 0}}, {{2, 2, 0}}},
        {{{2, 2, -2}, {3, 3, 6}}, {{1, 1, 2}, {2, 2, -2}}},
        {{{4, 4, 2}, {6, 6, -6}}, {{2, 2, -2}, {4, 4, 2}}},
        {{{2, 2, 2}, {3, 3, -6}}, {{1, 1, -2}, {2, 2, 2}}},
        {{{4, 4, -2}, {6, 6, 6}}, {{2, 2, 2}, {4, 4, -2}}},
    }};
    return table;
}

std::vector<std::int64_t> row_values(const std::vector<LinearExpr>& row, std::int64_t x, std::int64_t y) {
    std::vector<std::int64_t> out;
    for (const auto& e : row) out.push_back(e(x, y));
    std::sort(out.begin(), out.end());
    return out;
}

bool contains(const std::vector<std::int64_t>& v, std::int64_t p) { return std::find(v.begin(), v.end(), p) != v.end(); }

bool pair_order(std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2) {
    if (x1 + y1 != x2 + y2) return x1 + y1 < x2 + y2;
    return x1 < x2;
}

}  // namespace

const std::vector<LinearExpr>& conjecture_row(const Branch& b, bool a_side) {
    const auto& rows = conjecture_table()[static_cast<std::size_t>(2 * b.i + b.j)];
    return a_side ? rows.a : rows.ac;
}

OrbitResult hexagon_period(const Rational& a, std::int64_t x, std::int64_t y) {
    const DirectionPair d = make_direction_pair(x, y);
    if (!in_hexagon_range(d))
        throw std::invalid_argument("hexagon pairs need x/3 < y < x, got (" + std::to_string(x) + ", " +
                                    std::to_string(y) + ")");
    checked_offset(a);
    const Tessellation& hex = tessellation(ShapeId::Hexagon);
    const std::int64_t budget = default_max_bounces(d);
    OrbitResult r;
    for (std::int64_t factor = 1; factor <= 64; factor *= 4) {
        r = fold(hex, {a, 0}, {x, y}, budget * factor);
        if (r.status != OrbitStatus::Truncated) break;
    }
    return r;
}

std::vector<DirectionPair> hexagon_pairs(std::int64_t max_sum) {
    std::vector<DirectionPair> out;
    for (std::int64_t s = 2; s <= max_sum; ++s)
        for (std::int64_t x = 1; x < s; ++x) {
            const std::int64_t y = s - x;
            if (std::gcd(x, y) == 1 && in_hexagon_range({x, y})) out.push_back({x, y});
        }
    return out;
}

std::vector<HexProbe> probe_pair(const DirectionPair& d, std::size_t offsets, std::uint64_t seed) {
    std::vector<HexProbe> out;
    for (const Rational& a : sample_offsets(d, offsets, seed)) {
        const OrbitResult r = hexagon_period(a, d.x, d.y);
        out.push_back({d.x, d.y, a, r.status, r.status == OrbitStatus::Periodic ? r.period : 0});
    }
    return out;
}

std::vector<HexProbe> probe_hexagon(const std::vector<DirectionPair>& pairs, std::size_t offsets,
                                    std::uint64_t seed, int jobs) {
    std::vector<std::vector<HexProbe>> parts(pairs.size());
    parallel_for(pairs.size(), jobs, [&](std::size_t i) { parts[i] = probe_pair(pairs[i], offsets, seed); });
    std::vector<HexProbe> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

BranchRecord classify_period(std::int64_t x, std::int64_t y, std::int64_t period) {
    BranchRecord r;
    r.x = x;
    r.y = y;
    r.period = period;
    r.branch = branch_of(x, y);
    r.matched_formula = "neither";
    for (bool side : {true, false}) {
        for (const LinearExpr& e : conjecture_row(r.branch, side)) {
            if (e(x, y) != period) continue;
            if (r.matched_formula == "neither") r.matched_formula = to_string(e);
            (side ? r.in_a : r.in_ac) = true;
        }
    }
    return r;
}

std::vector<BranchRecord> records_from_probes(const std::vector<HexProbe>& probes) {
    std::set<std::array<std::int64_t, 3>> seen;
    for (const HexProbe& p : probes)
        if (p.status == OrbitStatus::Periodic) seen.insert({p.x, p.y, p.period});
    std::vector<BranchRecord> out;
    for (const auto& [x, y, period] : seen) out.push_back(classify_period(x, y, period));
    std::sort(out.begin(), out.end(), [](const BranchRecord& l, const BranchRecord& r) {
        if (l.x != r.x || l.y != r.y) return pair_order(l.x, l.y, r.x, r.y);
        return l.period < r.period;
    });
    return out;
}

std::vector<BranchRecord> build_dataset(std::int64_t max_sum, std::size_t offsets_per_pair, std::uint64_t seed,
                                        int jobs) {
    return records_from_probes(probe_hexagon(hexagon_pairs(max_sum), offsets_per_pair, seed, jobs));
}

std::string_view name(Side s) {
    switch (s) {
        case Side::A: return "A";
        case Side::Ac: return "Ac";
        case Side::Ambiguous: return "ambiguous";
        case Side::Neither: return "neither";
    }
    return "?";
}

Side side_of(const Branch& b, const std::vector<std::int64_t>& periods, std::int64_t x, std::int64_t y) {
    const auto a = row_values(conjecture_row(b, true), x, y);
    const auto ac = row_values(conjecture_row(b, false), x, y);
    const bool in_a = std::all_of(periods.begin(), periods.end(), [&](std::int64_t p) { return contains(a, p); });
    const bool in_ac = std::all_of(periods.begin(), periods.end(), [&](std::int64_t p) { return contains(ac, p); });
    if (periods.empty() || (!in_a && !in_ac)) return Side::Neither;
    if (in_a && in_ac) return Side::Ambiguous;
    return in_a ? Side::A : Side::Ac;
}

std::vector<PairSummary> summarize(const std::vector<BranchRecord>& records) {
    std::vector<PairSummary> out;
    for (const BranchRecord& r : records) {
        if (out.empty() || out.back().x != r.x || out.back().y != r.y) out.push_back({r.x, r.y, r.branch, {}, Side::Neither});
        out.back().periods.push_back(r.period);
    }
    for (PairSummary& s : out) {
        std::sort(s.periods.begin(), s.periods.end());
        s.side = side_of(s.branch, s.periods, s.x, s.y);
    }
    return out;
}

std::vector<ModulusCondition> modulus_grid_search(const std::vector<PairSummary>& pairs, const GridRange& range) {
    struct Labelled {
        std::int64_t x, y;
        bool a;
    };
    std::map<Branch, std::vector<Labelled>> classes;
    for (const PairSummary& p : pairs)
        if (p.side == Side::A || p.side == Side::Ac) classes[p.branch].push_back({p.x, p.y, p.side == Side::A});

    std::vector<std::vector<Labelled>> mixed;
    for (auto& [b, members] : classes) {
        const bool has_a = std::any_of(members.begin(), members.end(), [](const Labelled& l) { return l.a; });
        const bool has_ac = std::any_of(members.begin(), members.end(), [](const Labelled& l) { return !l.a; });
        if (has_a && has_ac) mixed.push_back(std::move(members));
    }
    if (mixed.empty()) throw std::invalid_argument("modulus search needs a class carrying both labels");

    std::vector<ModulusCondition> out;
    std::vector<signed char> label;
    for (int c3 = range.m_min; c3 <= range.m_max; ++c3) {
        label.assign(static_cast<std::size_t>(c3), 0);
        for (int c1 = range.c_min; c1 <= range.c_max; ++c1)
            for (int c2 = range.c_min; c2 <= range.c_max; ++c2) {
                bool separates = true;
                for (const auto& members : mixed) {
                    std::fill(label.begin(), label.end(), 0);
                    for (const Labelled& l : members) {
                        const std::int64_t r = ((c1 * l.x + c2 * l.y) % c3 + c3) % c3;
                        signed char& slot = label[static_cast<std::size_t>(r)];
                        const signed char want = l.a ? 1 : -1;
                        if (slot == 0) {
                            slot = want;
                        } else if (slot != want) {
                            separates = false;
                            break;
                        }
                    }
                    if (!separates) break;
                }
                if (separates) out.push_back({c1, c2, c3});
            }
    }
    return out;
}

std::vector<PairSummary> planted_parity_dataset(std::int64_t max_sum) {
    std::vector<PairSummary> out;
    for (const DirectionPair& d : hexagon_pairs(max_sum))
        out.push_back({d.x, d.y, Branch{0, 0}, {}, (d.x + d.y) % 2 == 0 ? Side::A : Side::Ac});
    return out;
}

std::pair<std::int64_t, std::int64_t> closure_image(std::int64_t x, std::int64_t y) {
    return {27 * y - 7 * x, 11 * y - 3 * x};
}

ClosureReport closure_map_check(const std::vector<PairSummary>& pairs, std::size_t offsets, std::uint64_t seed,
                                int jobs) {
    ClosureReport report;
    for (const PairSummary& p : pairs) {
        if (p.x % 3 != 0) continue;
        ClosureEntry e;
        e.x = p.x;
        e.y = p.y;
        std::tie(e.image_x, e.image_y) = closure_image(p.x, p.y);
        e.source_branch = p.branch;
        e.source_side = p.side;
        e.in_range = e.image_x > 0 && e.image_y > 0 && in_hexagon_range({e.image_x, e.image_y});
        if (e.in_range) e.gcd = std::gcd(e.image_x, e.image_y);
        report.entries.push_back(e);
    }

    parallel_for(report.entries.size(), jobs, [&](std::size_t i) {
        ClosureEntry& e = report.entries[i];
        if (!e.in_range) return;
        const DirectionPair d{e.image_x / e.gcd, e.image_y / e.gcd};
        if (!in_hexagon_range(d)) return;
        const auto records = records_from_probes(probe_pair(d, offsets, seed));
        if (records.empty()) return;
        e.image = summarize(records).front();
    });

    for (const ClosureEntry& e : report.entries) {
        if (!e.in_range) {
            ++report.out_of_range;
            continue;
        }
        if (e.gcd != 1) ++report.non_primitive;
        const std::string from = to_string(e.source_branch) + " " + std::string(name(e.source_side));
        const std::string to =
            e.image ? to_string(e.image->branch) + " " + std::string(name(e.image->side)) : std::string("unresolved");
        ++report.transitions[from][to];
        if (e.source_side == Side::A && (!e.image || (e.image->side != Side::A && e.image->side != Side::Ambiguous)))
            ++report.a_to_non_a;
    }
    return report;
}

}  // namespace billiards
