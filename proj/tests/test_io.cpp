#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "billiards/io.hpp"

using namespace billiards;

namespace {

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "billiards_io_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::vector<AtlasRow> triangle_rows() {
    SweepOptions opt;
    opt.max_sum = 10;
    opt.offsets = 3;
    return atlas_rows(run_sweep(opt));
}

}  // namespace

TEST_CASE("CSV round trip keeps rationals exact") {
    const auto rows = triangle_rows();
    REQUIRE_FALSE(rows.empty());
    std::ostringstream out;
    write_csv(out, rows);
    const std::string text = out.str();
    CHECK(text.rfind(std::string(kAtlasSchemaLine) + "\nshape,x,y,a,theta_degrees,status,period,T,N,branch,formula\n", 0) ==
          0);
    std::istringstream in(text);
    CHECK(read_csv(in) == rows);
    for (const AtlasRow& r : rows) {
        if (r.status != "periodic") continue;
        CHECK(period_formula(ShapeId::Triangle120, r.x, r.y).admits(*r.period));
    }
}

TEST_CASE("JSON round trip and identical bytes on repeat") {
    const auto rows = triangle_rows();
    const std::string json = to_json_text(rows);
    CHECK(from_json_text(json) == rows);
    CHECK(to_json_text(triangle_rows()) == json);
    std::ostringstream a, b;
    write_csv(a, rows);
    write_csv(b, triangle_rows());
    CHECK(a.str() == b.str());
}

TEST_CASE("rows are ordered by x + y, x, a") {
    const auto rows = triangle_rows();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& p = rows[i - 1];
        const auto& q = rows[i];
        const auto key = [](const AtlasRow& r) { return std::make_tuple(r.x + r.y, r.x, r.a); };
        CHECK(key(p) <= key(q));
    }
}

TEST_CASE("empty sweep writes a header-only file") {
    const auto path = (scratch_dir() / "empty.csv").string();
    write_atlas_file(path, {}, AtlasFormat::Csv);
    CHECK(read_atlas_file(path).empty());
    std::ifstream in(path);
    std::string first, second, third;
    std::getline(in, first);
    std::getline(in, second);
    CHECK(first == kAtlasSchemaLine);
    CHECK_FALSE(second.empty());
    CHECK_FALSE(std::getline(in, third));
}

TEST_CASE("files round trip and hexagon datasets are reproduced") {
    const auto probes = probe_hexagon(hexagon_pairs(16), 6, 3, 2);
    const auto rows = atlas_rows(probes);
    for (AtlasFormat f : {AtlasFormat::Csv, AtlasFormat::Json}) {
        const auto path = (scratch_dir() / (f == AtlasFormat::Csv ? "hex.csv" : "hex.json")).string();
        write_atlas_file(path, rows, f);
        CHECK_FALSE(std::filesystem::exists(path + ".partial"));
        const auto back = read_atlas_file(path);
        CHECK(back == rows);
        CHECK(records_from_probes(hex_probes_from_rows(back)) == records_from_probes(probes));
    }
}

TEST_CASE("I/O errors name the path and leave no partial file") {
    const std::string bad = (scratch_dir() / "no_such_dir" / "out.csv").string();
    try {
        write_atlas_file(bad, {}, AtlasFormat::Csv);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find(bad) != std::string::npos);
    }
    CHECK_FALSE(std::filesystem::exists(bad + ".partial"));
    CHECK_THROWS_AS(read_atlas_file((scratch_dir() / "missing.csv").string()), std::runtime_error);
    std::istringstream wrong("shape,x\n");
    CHECK_THROWS_AS(read_csv(wrong), std::runtime_error);
}
