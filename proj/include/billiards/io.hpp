#pragma once

// Atlas files: one row per (shape, x, y, a) probe, as CSV or JSON.
// Rationals are written as exact "p/q" strings.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "billiards/hexlab.hpp"
#include "billiards/sweep.hpp"

namespace billiards {

inline constexpr const char* kAtlasSchemaLine = "# billiards-atlas v1";

struct AtlasRow {
    std::string shape;
    std::int64_t x = 0;
    std::int64_t y = 0;
    Rational a;
    std::string theta_degrees;  // display only, fixed six decimals
    std::string status;
    std::optional<std::int64_t> period;
    std::optional<std::int64_t> T;
    std::optional<std::int64_t> N;  // N_{2x}
    std::string branch;             // "i-j"
    std::string formula;            // matched expression (hexagon) or empty

    friend bool operator==(const AtlasRow&, const AtlasRow&) = default;
};

enum class AtlasFormat { Csv, Json };

std::string format_theta(std::int64_t x, std::int64_t y);

/// Rows sorted by (x + y, x, a).
std::vector<AtlasRow> atlas_rows(const SweepReport& report);
std::vector<AtlasRow> atlas_rows(const std::vector<HexProbe>& probes);

void write_csv(std::ostream& out, const std::vector<AtlasRow>& rows);
std::vector<AtlasRow> read_csv(std::istream& in);

std::string to_json_text(const std::vector<AtlasRow>& rows);
std::vector<AtlasRow> from_json_text(const std::string& text);

/// Writes through a temporary file and renames it into place; the partial
/// file is removed on failure. Throws std::runtime_error naming the path.
void write_atlas_file(const std::string& path, const std::vector<AtlasRow>& rows, AtlasFormat format);
/// Format detected from content (JSON arrays start with '[').
std::vector<AtlasRow> read_atlas_file(const std::string& path);

/// Hexagon probes recovered from atlas rows (other shapes are ignored).
std::vector<HexProbe> hex_probes_from_rows(const std::vector<AtlasRow>& rows);

}  // namespace billiards
