#include "billiards/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace billiards {

namespace {

const std::vector<std::string> kColumns = {"shape", "x",      "y",      "a",       "theta_degrees", "status",
                                           "period", "T",     "N",      "branch", "formula"};

std::string optional_text(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); }

std::optional<std::int64_t> parse_optional(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stoll(s);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void sort_rows(std::vector<AtlasRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const AtlasRow& l, const AtlasRow& r) {
        if (l.x + l.y != r.x + r.y) return l.x + l.y < r.x + r.y;
        if (l.x != r.x) return l.x < r.x;
        return l.a < r.a;
    });
}

OrbitStatus status_from_name(const std::string& s) {
    for (OrbitStatus st : {OrbitStatus::Periodic, OrbitStatus::Singular, OrbitStatus::Truncated})
        if (name(st) == s) return st;
    throw std::invalid_argument("unknown orbit status '" + s + "'");
}

}  // namespace

std::string format_theta(std::int64_t x, std::int64_t y) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", angle_of(x, y));
    return buf;
}

std::vector<AtlasRow> atlas_rows(const SweepReport& report) {
    std::vector<AtlasRow> rows;
    for (const ProbeRow& p : report.rows) {
        AtlasRow r;
        r.shape = std::string(name(report.shape));
        r.x = p.x;
        r.y = p.y;
        r.a = p.a;
        r.theta_degrees = format_theta(p.x, p.y);
        r.status = std::string(name(p.status));
        if (p.status == OrbitStatus::Periodic) r.period = p.period;
        r.T = p.T;
        r.N = p.N2x;
        r.branch = to_string(p.branch);
        rows.push_back(std::move(r));
    }
    sort_rows(rows);
    return rows;
}

std::vector<AtlasRow> atlas_rows(const std::vector<HexProbe>& probes) {
    std::vector<AtlasRow> rows;
    for (const HexProbe& p : probes) {
        AtlasRow r;
        r.shape = std::string(name(ShapeId::Hexagon));
        r.x = p.x;
        r.y = p.y;
        r.a = p.a;
        r.theta_degrees = format_theta(p.x, p.y);
        r.status = std::string(name(p.status));
        r.branch = to_string(branch_of(p.x, p.y));
        if (p.status == OrbitStatus::Periodic) {
            r.period = p.period;
            r.formula = classify_period(p.x, p.y, p.period).matched_formula;
        }
        rows.push_back(std::move(r));
    }
    sort_rows(rows);
    return rows;
}

void write_csv(std::ostream& out, const std::vector<AtlasRow>& rows) {
    out << kAtlasSchemaLine << '\n';
    for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
    out << '\n';
    for (const AtlasRow& r : rows) {
        out << r.shape << ',' << r.x << ',' << r.y << ',' << r.a.to_fraction_string() << ',' << r.theta_degrees << ','
            << r.status << ',' << optional_text(r.period) << ',' << optional_text(r.T) << ',' << optional_text(r.N)
            << ',' << r.branch << ',' << r.formula << '\n';
    }
}

std::vector<AtlasRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kAtlasSchemaLine)
        throw std::runtime_error("atlas CSV: missing '" + std::string(kAtlasSchemaLine) + "' header");
    if (!std::getline(in, line)) throw std::runtime_error("atlas CSV: missing column header");
    if (split(line) != kColumns) throw std::runtime_error("atlas CSV: unexpected columns '" + line + "'");
    std::vector<AtlasRow> rows;
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != kColumns.size())
            throw std::runtime_error("atlas CSV line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(kColumns.size()) + " fields");
        AtlasRow r;
        r.shape = cells[0];
        r.x = std::stoll(cells[1]);
        r.y = std::stoll(cells[2]);
        r.a = Rational::parse(cells[3]);
        r.theta_degrees = cells[4];
        r.status = cells[5];
        r.period = parse_optional(cells[6]);
        r.T = parse_optional(cells[7]);
        r.N = parse_optional(cells[8]);
        r.branch = cells[9];
        r.formula = cells[10];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string to_json_text(const std::vector<AtlasRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const AtlasRow& r : rows) {
        nlohmann::ordered_json o;
        o["shape"] = r.shape;
        o["x"] = r.x;
        o["y"] = r.y;
        o["a"] = r.a.to_fraction_string();
        o["theta_degrees"] = r.theta_degrees;
        o["status"] = r.status;
        o["period"] = r.period ? nlohmann::ordered_json(*r.period) : nlohmann::ordered_json(nullptr);
        o["T"] = r.T ? nlohmann::ordered_json(*r.T) : nlohmann::ordered_json(nullptr);
        o["N"] = r.N ? nlohmann::ordered_json(*r.N) : nlohmann::ordered_json(nullptr);
        o["branch"] = r.branch;
        o["formula"] = r.formula;
        arr.push_back(std::move(o));
    }
    return arr.dump(1) + "\n";
}

std::vector<AtlasRow> from_json_text(const std::string& text) {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw std::runtime_error("atlas JSON: expected an array");
    auto opt = [](const nlohmann::json& v) -> std::optional<std::int64_t> {
        if (v.is_null()) return std::nullopt;
        return v.get<std::int64_t>();
    };
    std::vector<AtlasRow> rows;
    for (const auto& o : arr) {
        AtlasRow r;
        r.shape = o.at("shape").get<std::string>();
        r.x = o.at("x").get<std::int64_t>();
        r.y = o.at("y").get<std::int64_t>();
        r.a = Rational::parse(o.at("a").get<std::string>());
        r.theta_degrees = o.at("theta_degrees").get<std::string>();
        r.status = o.at("status").get<std::string>();
        r.period = opt(o.at("period"));
        r.T = opt(o.at("T"));
        r.N = opt(o.at("N"));
        r.branch = o.at("branch").get<std::string>();
        r.formula = o.at("formula").get<std::string>();
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_atlas_file(const std::string& path, const std::vector<AtlasRow>& rows, AtlasFormat format) {
    const std::string tmp = path + ".partial";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot open for writing");
            if (format == AtlasFormat::Csv)
                write_csv(out, rows);
            else
                out << to_json_text(rows);
            out.flush();
            if (!out) throw std::runtime_error("write failed");
        }
        std::filesystem::rename(tmp, path);
    } catch (const std::exception& e) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::vector<AtlasRow> read_atlas_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && text[first] == '[') return from_json_text(text);
        std::istringstream s(text);
        return read_csv(s);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::vector<HexProbe> hex_probes_from_rows(const std::vector<AtlasRow>& rows) {
    std::vector<HexProbe> out;
    for (const AtlasRow& r : rows) {
        if (r.shape != name(ShapeId::Hexagon)) continue;
        out.push_back({r.x, r.y, r.a, status_from_name(r.status), r.period.value_or(0)});
    }
    return out;
}

}  // namespace billiards
