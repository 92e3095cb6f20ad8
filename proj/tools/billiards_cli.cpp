#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "billiards/fence.hpp"
#include "billiards/hexlab.hpp"
#include "billiards/io.hpp"
#include "billiards/orbit.hpp"
#include "billiards/render.hpp"
#include "billiards/sweep.hpp"

using namespace billiards;
using json = nlohmann::ordered_json;

namespace {

enum Exit : int { kOk = 0, kMismatch = 1, kBadInput = 2, kDisagree = 3, kCounterexample = 4 };

struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 1;
    int jobs = 0;
    bool quiet = false;
};

ShapeId parse_shape(const std::string& s) {
    auto shape = shape_from_name(s);
    if (!shape) throw BadInput("unknown shape '" + s + "' (triangle, rhombus, kite, hexagon)");
    return *shape;
}

DirectionPair parse_pair(std::int64_t x, std::int64_t y) {
    try {
        if (y == 0) throw std::invalid_argument("y must be positive");
        return make_direction_pair(x, y);
    } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
    }
}

Rational parse_offset(const std::string& s) {
    try {
        return checked_offset(Rational::parse(s));
    } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
    }
}

template <class Range>
json int_array(const Range& r) {
    json a = json::array();
    for (auto v : r) a.push_back(v);
    return a;
}

template <class Range>
std::string join(const Range& r) {
    std::string s = "[";
    for (auto v : r) s += (s.size() > 1 ? ", " : "") + std::to_string(v);
    return s + "]";
}

// Progress on stderr, safe to call from worker threads.
std::function<void(std::int64_t, std::int64_t)> progress_printer(const Globals& g, const std::string& label) {
    if (g.quiet) return {};
    auto mutex = std::make_shared<std::mutex>();
    return [mutex, label](std::int64_t done, std::int64_t total) {
        if (done % 25 != 0 && done != total) return;
        std::lock_guard<std::mutex> lock(*mutex);
        std::cerr << "\r" << label << " " << done << "/" << total << (done == total ? "\n" : "") << std::flush;
    };
}

// -- period -------------------------------------------------------------------

struct PeriodArgs {
    std::string shape;
    std::int64_t x = 0;
    std::int64_t y = 1;
    std::string offset;
    bool as_json = false;
};

int run_period_hexagon(const PeriodArgs& args, const DirectionPair& d) {
    if (!in_hexagon_range(d)) throw BadInput("hexagon pairs need x/3 < y < x");
    const Branch b = branch_of(d.x, d.y);
    json out;
    out["shape"] = "hexagon";
    out["x"] = d.x;
    out["y"] = d.y;
    out["branch"] = to_string(b);
    std::vector<std::int64_t> a_vals, ac_vals;
    for (const auto& e : conjecture_row(b, true)) a_vals.push_back(e(d.x, d.y));
    for (const auto& e : conjecture_row(b, false)) ac_vals.push_back(e(d.x, d.y));
    out["conjecture_A"] = int_array(a_vals);
    out["conjecture_Ac"] = int_array(ac_vals);
    int code = kOk;
    if (!args.offset.empty()) {
        const Rational a = parse_offset(args.offset);
        const OrbitResult r = hexagon_period(a, d.x, d.y);
        out["offset"] = a.to_fraction_string();
        out["status"] = std::string(name(r.status));
        if (r.status == OrbitStatus::Periodic) {
            const BranchRecord rec = classify_period(d.x, d.y, r.period);
            out["period"] = r.period;
            out["matched_formula"] = rec.matched_formula;
            if (rec.matched_formula == "neither") code = kCounterexample;
        }
    }
    if (args.as_json) {
        std::cout << out.dump(2) << "\n";
        return code;
    }
    std::cout << "hexagon (" << d.x << ", " << d.y << ") theta " << format_theta(d.x, d.y) << " class " << to_string(b)
              << "\n  conjectured A row: " << join(a_vals) << "\n  conjectured Ac row: " << join(ac_vals) << "\n";
    if (out.contains("status")) {
        std::cout << "  offset " << out["offset"].get<std::string>() << ": " << out["status"].get<std::string>();
        if (out.contains("period"))
            std::cout << " period " << out["period"].get<std::int64_t>() << " (matches "
                      << out["matched_formula"].get<std::string>() << ")";
        std::cout << "\n";
    }
    return code;
}

int run_period(const PeriodArgs& args, const Globals&) {
    const ShapeId shape = parse_shape(args.shape);
    const DirectionPair given = parse_pair(args.x, args.y);
    if (shape == ShapeId::Hexagon) return run_period_hexagon(args, given);

    const Tessellation& tess = tessellation(shape);
    DirectionPair d = given;
    std::optional<RebasedUnfolding> rebased;
    if (!in_obtuse_range(given)) {
        rebased = rebase_unfolding(args.offset.empty() ? Rational(0) : parse_offset(args.offset), given.x, given.y);
        d = rebased->angle.pair;
    }
    const PeriodPrediction pred = period_formula(shape, d.x, d.y);

    json out;
    out["shape"] = std::string(name(shape));
    out["x"] = given.x;
    out["y"] = given.y;
    out["theta_degrees"] = format_theta(given.x, given.y);
    if (rebased) out["reduced"] = json::array({d.x, d.y});
    out["branch"] = to_string(pred.branch);
    out["edge_counts"] = int_array(pred.edge_counts);
    out["candidates"] = int_array(pred.candidates);

    int code = kOk;
    if (!args.offset.empty()) {
        const Rational a = parse_offset(args.offset);
        const OrbitResult folded = fold(tess, {a, 0}, {given.x, given.y}, default_max_bounces(d));
        OrbitResult unfolded;
        if (!rebased) {
            unfolded = detect_period_unfolding(tess, a, d);
        } else if (rebased->offset) {
            unfolded = detect_period_unfolding(tess, *rebased->offset, d);
        } else {
            unfolded.status = OrbitStatus::Singular;
        }
        out["offset"] = a.to_fraction_string();
        out["fold"] = {{"status", std::string(name(folded.status))}, {"period", folded.period}};
        out["unfold"] = {{"status", std::string(name(unfolded.status))}, {"period", unfolded.period}};
        if (unfolded.T) out["unfold"]["T"] = *unfolded.T;
        const bool agree = folded.status == unfolded.status && folded.period == unfolded.period;
        out["engines_agree"] = agree;
        if (!agree)
            code = kDisagree;
        else if (folded.status == OrbitStatus::Periodic && !pred.admits(folded.period))
            code = kMismatch;
        out["in_candidates"] = folded.status == OrbitStatus::Periodic && pred.admits(folded.period);
    }

    if (args.as_json) {
        std::cout << out.dump(2) << "\n";
        return code;
    }
    std::cout << name(shape) << " (" << given.x << ", " << given.y << ") theta " << format_theta(given.x, given.y);
    if (rebased) std::cout << " reduced to (" << d.x << ", " << d.y << ")";
    std::cout << "\n  class " << to_string(pred.branch) << ", N_2x " << join(pred.edge_counts) << "\n  candidates "
              << join(pred.candidates) << (pred.mono ? " (monoperiodic)" : " (biperiodic)") << "\n";
    if (out.contains("fold")) {
        std::cout << "  offset " << out["offset"].get<std::string>() << ": fold " << out["fold"]["status"].get<std::string>()
                  << " " << out["fold"]["period"].get<std::int64_t>() << ", unfolding "
                  << out["unfold"]["status"].get<std::string>() << " " << out["unfold"]["period"].get<std::int64_t>()
                  << (out["engines_agree"].get<bool>() ? ", engines agree" : ", ENGINES DISAGREE") << "\n";
        if (code == kMismatch) std::cout << "  period is not among the candidates\n";
    }
    return code;
}

// -- verify -------------------------------------------------------------------

struct SweepArgs {
    std::string shape;
    std::int64_t max_sum = 40;
    std::size_t offsets = 8;
};

int run_verify(const SweepArgs& args, const Globals& g) {
    const ShapeId shape = parse_shape(args.shape);
    if (shape == ShapeId::Hexagon) throw BadInput("verify covers triangle, rhombus and kite; use hexlab for the hexagon");
    SweepOptions opt;
    opt.shape = shape;
    opt.max_sum = args.max_sum;
    opt.offsets = args.offsets;
    opt.seed = g.seed;
    opt.jobs = g.jobs;
    const SweepReport r = run_sweep(opt, progress_printer(g, "pairs"));
    std::cout << name(shape) << " sweep, x + y <= " << args.max_sum << ", " << args.offsets << " offsets per pair\n"
              << "  pairs " << r.pairs << ", probes " << r.probes << ", periodic " << r.periodic << ", singular "
              << r.singular << "\n"
              << "  biperiodic pairs " << r.biperiodic_pairs << ", both periods realized " << r.both_realized << "\n";
    for (const auto& [check, n] : r.checks) std::cout << "  " << check << ": " << n << " passed\n";
    std::cout << r.mismatches.size() << " mismatches\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(r.mismatches.size(), 10); ++i)
        std::cout << "  " << to_string(r.mismatches[i]) << "\n";
    if (r.engine_disagreement()) return kDisagree;
    return r.mismatches.empty() ? kOk : kMismatch;
}

// -- atlas --------------------------------------------------------------------

struct AtlasArgs {
    SweepArgs sweep;
    std::string format = "csv";
    std::string out;
};

int run_atlas(const AtlasArgs& args, const Globals& g) {
    const ShapeId shape = parse_shape(args.sweep.shape);
    if (args.format != "csv" && args.format != "json") throw BadInput("format must be csv or json");
    const AtlasFormat format = args.format == "csv" ? AtlasFormat::Csv : AtlasFormat::Json;
    std::vector<AtlasRow> rows;
    int code = kOk;
    if (shape == ShapeId::Hexagon) {
        rows = atlas_rows(probe_hexagon(hexagon_pairs(args.sweep.max_sum), args.sweep.offsets, g.seed, g.jobs));
    } else {
        SweepOptions opt;
        opt.shape = shape;
        opt.max_sum = args.sweep.max_sum;
        opt.offsets = args.sweep.offsets;
        opt.seed = g.seed;
        opt.jobs = g.jobs;
        const SweepReport r = run_sweep(opt, progress_printer(g, "pairs"));
        rows = atlas_rows(r);
        if (!r.mismatches.empty()) {
            std::cerr << r.mismatches.size() << " mismatches during the sweep, first: " << to_string(r.mismatches.front())
                      << "\n";
            code = r.engine_disagreement() ? kDisagree : kMismatch;
        }
    }
    if (args.out.empty()) {
        if (format == AtlasFormat::Csv)
            write_csv(std::cout, rows);
        else
            std::cout << to_json_text(rows);
    } else {
        write_atlas_file(args.out, rows, format);
        if (!g.quiet) std::cerr << "wrote " << rows.size() << " rows to " << args.out << "\n";
    }
    return code;
}

// -- hexlab -------------------------------------------------------------------

struct HexlabArgs {
    std::string dataset;
    std::int64_t max_sum = 60;
    std::size_t offsets = 16;
    bool grid_search = false;
    bool closure = false;
    std::string report;
    std::string json_out;
};

int run_hexlab(const HexlabArgs& args, const Globals& g) {
    std::vector<HexProbe> probes;
    std::string source;
    if (!args.dataset.empty()) {
        probes = hex_probes_from_rows(read_atlas_file(args.dataset));
        source = args.dataset;
    } else {
        probes = probe_hexagon(hexagon_pairs(args.max_sum), args.offsets, g.seed, g.jobs);
        source = "x + y <= " + std::to_string(args.max_sum) + ", " + std::to_string(args.offsets) + " offsets per pair";
    }
    const auto records = records_from_probes(probes);
    const auto pairs = summarize(records);

    std::ostringstream text;
    json out;
    out["source"] = source;
    out["pairs"] = pairs.size();
    out["records"] = records.size();
    text << "hexagon dataset: " << source << "\n  pairs " << pairs.size() << ", distinct (pair, period) records "
         << records.size() << "\n";

    std::map<std::string, std::map<std::string, int>> by_class;
    int unmatched = 0, inconsistent = 0;
    json bad = json::array();
    for (const BranchRecord& r : records) {
        if (r.matched_formula != "neither") continue;
        ++unmatched;
        bad.push_back({{"x", r.x}, {"y", r.y}, {"period", r.period}, {"class", to_string(r.branch)}});
        text << "  UNMATCHED (" << r.x << ", " << r.y << ") period " << r.period << " class " << to_string(r.branch) << "\n";
    }
    for (const PairSummary& p : pairs) {
        ++by_class[to_string(p.branch)][std::string(name(p.side))];
        if (p.side == Side::Neither) {
            ++inconsistent;
            text << "  MIXED ROWS (" << p.x << ", " << p.y << ") periods " << join(p.periods) << "\n";
        }
    }
    text << "  periods matching neither conjectured expression: " << unmatched << "\n";
    text << "  pairs whose periods fit neither single row: " << inconsistent << "\n  class breakdown:\n";
    for (const auto& [cls, sides] : by_class) {
        text << "    " << cls << ":";
        for (const auto& [side, n] : sides) text << " " << side << "=" << n;
        text << "\n";
    }
    out["unmatched"] = bad;
    out["mixed_row_pairs"] = inconsistent;
    json classes = json::object();
    for (const auto& [cls, sides] : by_class) classes[cls] = sides;
    out["classes"] = classes;

    if (args.grid_search) {
        const auto found = modulus_grid_search(pairs);
        const auto control = modulus_grid_search(planted_parity_dataset(std::max<std::int64_t>(args.max_sum, 30)));
        const bool control_ok = std::find(control.begin(), control.end(), ModulusCondition{1, 1, 2}) != control.end();
        text << "  modulus grid search (c1, c2 in [-36, 36], c3 in [2, 36]): ";
        if (found.empty())
            text << "no separating modulus condition found\n";
        else
            text << found.size() << " separating conditions, first (" << found[0].c1 << ", " << found[0].c2 << ", "
                 << found[0].c3 << ")\n";
        text << "  planted (x + y) mod 2 control: " << (control_ok ? "recovered (1, 1, 2)" : "NOT recovered") << "\n";
        json conds = json::array();
        for (const auto& c : found) conds.push_back({c.c1, c.c2, c.c3});
        out["grid_search"] = {{"separating", conds}, {"planted_control_recovered", control_ok}};
    }

    if (args.closure) {
        const ClosureReport cr = closure_map_check(pairs, args.offsets, g.seed, g.jobs);
        text << "  closure map (x, y) -> (27y - 7x, 11y - 3x) over " << cr.entries.size() << " pairs with 3 | x\n"
             << "    out of range " << cr.out_of_range << ", non-primitive images " << cr.non_primitive
             << ", A-side sources with images off the A side " << cr.a_to_non_a << "\n";
        json table = json::object();
        for (const auto& [from, tos] : cr.transitions) {
            text << "    " << from << " ->";
            for (const auto& [to, n] : tos) text << " [" << to << "] " << n;
            text << "\n";
            table[from] = tos;
        }
        out["closure"] = {{"pairs", cr.entries.size()},
                          {"out_of_range", cr.out_of_range},
                          {"non_primitive", cr.non_primitive},
                          {"a_to_non_a", cr.a_to_non_a},
                          {"transitions", table}};
    }

    const int code = unmatched > 0 || inconsistent > 0 ? kCounterexample : kOk;
    text << (code == kOk ? "every observed period matches its class's conjectured expressions\n"
                         : "conjecture counterexamples found\n");

    if (!g.quiet || args.report.empty()) std::cout << text.str();
    auto write = [](const std::string& path, const std::string& body) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f || !(f << body)) throw std::runtime_error(path + ": cannot write");
    };
    if (!args.report.empty()) write(args.report, text.str());
    if (!args.json_out.empty()) write(args.json_out, out.dump(2) + "\n");
    return code;
}

// -- render -------------------------------------------------------------------

struct RenderArgs {
    std::string shape;
    std::int64_t x = 0;
    std::int64_t y = 1;
    std::string offset;
    std::string mode = "both";
    std::string out;
    std::string t_max;
};

int run_render(const RenderArgs& args, const Globals& g) {
    RenderOptions opt;
    opt.shape = parse_shape(args.shape);
    opt.d = parse_pair(args.x, args.y);
    auto mode = render_mode_from_name(args.mode);
    if (!mode) throw BadInput("mode must be unfold, fold or both");
    opt.mode = *mode;
    if (!args.t_max.empty()) {
        try {
            opt.t_max = Rational::parse(args.t_max);
        } catch (const std::invalid_argument& e) {
            throw BadInput(e.what());
        }
    }
    if (!args.offset.empty()) {
        opt.a = parse_offset(args.offset);
    } else {
        // first sampled offset that avoids the vertices
        const Tessellation& tess = tessellation(opt.shape);
        bool found = false;
        for (const Rational& a : sample_offsets(opt.d, 64, g.seed)) {
            if (fold(tess, {a, 0}, {opt.d.x, opt.d.y}, default_max_bounces(opt.d)).status != OrbitStatus::Singular) {
                opt.a = a;
                found = true;
                break;
            }
        }
        if (!found) throw BadInput("no non-singular offset found; pass --offset");
    }
    const RenderSummary r = render_svg(opt);
    std::ofstream f(args.out, std::ios::binary | std::ios::trunc);
    if (!f || !(f << r.svg)) throw std::runtime_error(args.out + ": cannot write");
    if (!g.quiet)
        std::cerr << "wrote " << args.out << " (offset " << opt.a.to_fraction_string() << ", fold "
                  << name(r.fold_status) << ", " << r.fold_strikes << " strikes)\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic billiard orbits on edge-tessellating obtuse polygons"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for the offset grids")->capture_default_str();
    app.add_option("--jobs", g.jobs, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "Suppress progress output");

    PeriodArgs period;
    auto* period_cmd = app.add_subcommand("period", "Predicted and realized periods for one direction");
    period_cmd->add_option("shape", period.shape, "triangle, rhombus, kite or hexagon")->required();
    period_cmd->add_option("x", period.x)->required();
    period_cmd->add_option("y", period.y)->required();
    period_cmd->add_option("--offset", period.offset, "Initial point (a, 0), a as p/q in (-1, 1)");
    period_cmd->add_flag("--json", period.as_json, "Print JSON");

    SweepArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Cross-check engines and formulas over a sweep");
    verify_cmd->add_option("shape", verify.shape)->required();
    verify_cmd->add_option("--max-sum", verify.max_sum, "Largest x + y")->capture_default_str();
    verify_cmd->add_option("--offsets", verify.offsets, "Non-singular offsets per pair")->capture_default_str();

    AtlasArgs atlas;
    atlas.sweep.max_sum = 20;
    auto* atlas_cmd = app.add_subcommand("atlas", "Write one row per probe as CSV or JSON");
    atlas_cmd->add_option("shape", atlas.sweep.shape)->required();
    atlas_cmd->add_option("--max-sum", atlas.sweep.max_sum)->capture_default_str();
    atlas_cmd->add_option("--offsets", atlas.sweep.offsets)->capture_default_str();
    atlas_cmd->add_option("--format", atlas.format, "csv or json")->capture_default_str();
    atlas_cmd->add_option("--out", atlas.out, "Output path (default: stdout)");

    HexlabArgs hexlab;
    auto* hexlab_cmd = app.add_subcommand("hexlab", "Hexagon conjecture experiments");
    auto* dataset_opt = hexlab_cmd->add_option("--dataset", hexlab.dataset, "Atlas file to analyse");
    hexlab_cmd->add_option("--max-sum", hexlab.max_sum, "Largest x + y when probing")
        ->capture_default_str()
        ->excludes(dataset_opt);
    hexlab_cmd->add_option("--offsets", hexlab.offsets, "Offsets per pair")->capture_default_str();
    hexlab_cmd->add_flag("--grid-search", hexlab.grid_search, "Search linear modulus conditions");
    hexlab_cmd->add_flag("--closure", hexlab.closure, "Check the (27y - 7x, 11y - 3x) map");
    hexlab_cmd->add_option("--report", hexlab.report, "Write the text report here");
    hexlab_cmd->add_option("--json", hexlab.json_out, "Write the JSON report here");

    RenderArgs render;
    auto* render_cmd = app.add_subcommand("render", "Draw an unfolding and/or folded orbit as SVG");
    render_cmd->add_option("shape", render.shape)->required();
    render_cmd->add_option("x", render.x)->required();
    render_cmd->add_option("y", render.y)->required();
    render_cmd->add_option("--offset", render.offset);
    render_cmd->add_option("--mode", render.mode, "unfold, fold or both")->capture_default_str();
    render_cmd->add_option("--out", render.out)->required();
    render_cmd->add_option("--t-max", render.t_max, "Unfolding length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*period_cmd) return run_period(period, g);
        if (*verify_cmd) return run_verify(verify, g);
        if (*atlas_cmd) return run_atlas(atlas, g);
        if (*hexlab_cmd) return run_hexlab(hexlab, g);
        if (*render_cmd) return run_render(render, g);
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kOk;
}
