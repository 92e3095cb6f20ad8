#include "billiards/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "billiards/parallel.hpp"

namespace billiards {

std::vector<DirectionPair> obtuse_pairs(std::int64_t max_sum) {
    std::vector<DirectionPair> out;
    if (max_sum >= 1) out.push_back({0, 1});
    if (max_sum >= 2) out.push_back({1, 1});
    for (std::int64_t s = 3; s <= max_sum; ++s)
        for (std::int64_t x = 1; 2 * x < s; ++x)
            if (std::gcd(x, s - x) == 1) out.push_back({x, s - x});
    return out;
}

std::int64_t brute_force_alignment(std::int64_t x, std::int64_t y) {
    if (x < 1) throw std::invalid_argument("brute_force_alignment needs x >= 1");
    for (std::int64_t T = 1;; ++T) {
        if ((y * T) % x != 0) continue;
        if ((T + y * T / x) % 2 == 0) return T;
    }
}

bool terminates_on_horizontal(const Tessellation& tess, const DirectionPair& d, const Rational& a,
                              const OrbitResult& unfolded) {
    if (unfolded.status != OrbitStatus::Periodic || !unfolded.T) return false;
    if (tess.family(InclineClass::H0) != nullptr) return unfolded.terminal_class == InclineClass::H0;
    const ScaledPoint end = ScaledPoint{a, 0} + Rational(*unfolded.T) * unfolding_direction(d);
    return tessellation(ShapeId::Triangle120).family(InclineClass::H0)->has_offset(end.y);
}

std::string to_string(const Mismatch& m) {
    std::string out = m.check + " at (" + std::to_string(m.x) + ", " + std::to_string(m.y) + ")";
    if (m.a) out += " a=" + m.a->to_fraction_string();
    if (!m.detail.empty()) out += ": " + m.detail;
    return out;
}

bool SweepReport::engine_disagreement() const {
    return std::any_of(mismatches.begin(), mismatches.end(), [](const Mismatch& m) { return m.engine_disagreement; });
}

namespace {

struct PairOutcome {
    std::vector<ProbeRow> rows;
    std::vector<Mismatch> mismatches;
    std::map<std::string, std::int64_t> checks;
    std::int64_t periodic = 0;
    std::int64_t singular = 0;
    bool biperiodic = false;
    bool both_realized = false;
};

class PairChecker {
public:
    PairChecker(const SweepOptions& opt, const DirectionPair& d)
        : opt_(opt), d_(d), tess_(tessellation(opt.shape)) {}

    PairOutcome run() {
        PeriodPrediction prediction;
        try {
            prediction = period_formula(opt_.shape, d_.x, d_.y);
            pass("tables consistent");
        } catch (const std::logic_error& e) {
            fail("tables consistent", std::nullopt, e.what());
            return std::move(out_);
        }
        expect(doubling_relation_holds(prediction), "doubling relation", std::nullopt, "");
        out_.biperiodic = !prediction.mono;

        if (d_.x >= 1) {
            const std::int64_t t1 = first_alignment(d_.x, d_.y);
            const std::int64_t brute = brute_force_alignment(d_.x, d_.y);
            expect(t1 == brute, "first alignment", std::nullopt,
                   "formula " + std::to_string(t1) + " vs search " + std::to_string(brute));
            check_barrier_formula();
        }

        const std::vector<Rational> stream = sample_offsets(d_, static_cast<std::size_t>(-1), opt_.seed);
        std::set<std::int64_t> realized;
        std::size_t good = 0;
        for (const Rational& a : stream) {
            const bool enough = good >= opt_.offsets;
            const bool complete = prediction.mono || realized.size() >= prediction.candidates.size();
            if (enough && complete) break;
            if (auto p = probe(a, prediction)) {
                realized.insert(*p);
                ++good;
            }
        }
        if (good < opt_.offsets)
            fail("offset supply", std::nullopt,
                 "only " + std::to_string(good) + " non-singular offsets of " + std::to_string(stream.size()));
        if (out_.biperiodic) {
            out_.both_realized = std::all_of(prediction.candidates.begin(), prediction.candidates.end(),
                                             [&](std::int64_t p) { return realized.count(p) != 0; });
            expect(out_.both_realized, "both candidates realized", std::nullopt,
                   "realized " + join(realized) + " of " + join(prediction.candidates));
        }
        return std::move(out_);
    }

private:
    template <class Range>
    static std::string join(const Range& r) {
        std::string s = "{";
        for (auto v : r) s += (s.size() > 1 ? ", " : "") + std::to_string(v);
        return s + "}";
    }

    void pass(const std::string& check) { ++out_.checks[check]; }

    void fail(const std::string& check, const std::optional<Rational>& a, const std::string& detail,
              bool engines = false) {
        out_.mismatches.push_back({check, d_.x, d_.y, a, detail, engines});
    }

    void expect(bool ok, const std::string& check, const std::optional<Rational>& a, const std::string& detail) {
        if (ok)
            pass(check);
        else
            fail(check, a, detail);
    }

    void check_barrier_formula() {
        std::mt19937_64 rng(opt_.seed ^ (static_cast<std::uint64_t>(d_.x) * 1000003ULL + static_cast<std::uint64_t>(d_.y)));
        std::uniform_int_distribution<std::int64_t> den_pick(2, 240);
        for (std::size_t k = 0; k < opt_.random_offsets; ++k) {
            const std::int64_t den = den_pick(rng);
            std::uniform_int_distribution<std::int64_t> num_pick(-(den - 1), den - 1);
            const Rational a(num_pick(rng), den);
            const std::int64_t formula = barrier_count_at(opt_.shape, a, d_.x, d_.y);
            const std::int64_t counted = contact_points(tess_, a, d_, Rational(2 * d_.x)).b;
            expect(formula == counted, "barrier formula", a,
                   "closed form " + std::to_string(formula) + " vs enumeration " + std::to_string(counted));
        }
    }

    // Returns the period for a non-singular offset.
    std::optional<std::int64_t> probe(const Rational& a, const PeriodPrediction& prediction) {
        ProbeRow row;
        row.x = d_.x;
        row.y = d_.y;
        row.a = a;
        row.branch = prediction.branch;

        const OrbitResult folded = fold(tess_, {a, 0}, {d_.x, d_.y}, default_max_bounces(d_));
        const OrbitResult unfolded = detect_period_unfolding(tess_, a, d_);
        row.status = folded.status;

        if (folded.status == OrbitStatus::Truncated) {
            fail("fold closes", a, "no repeat within " + std::to_string(default_max_bounces(d_)) + " strikes");
            out_.rows.push_back(row);
            return std::nullopt;
        }
        if (folded.status != unfolded.status) {
            fail("engines agree", a,
                 "fold " + std::string(name(folded.status)) + " vs unfolding " + std::string(name(unfolded.status)),
                 true);
            out_.rows.push_back(row);
            return std::nullopt;
        }
        if (folded.status == OrbitStatus::Singular) {
            ++out_.singular;
            out_.rows.push_back(row);
            return std::nullopt;
        }

        ++out_.periodic;
        row.period = folded.period;
        row.T = unfolded.T;
        if (folded.period == unfolded.period)
            pass("engines agree");
        else
            fail("engines agree", a,
                 "fold " + std::to_string(folded.period) + " vs unfolding " + std::to_string(unfolded.period), true);

        expect(prediction.admits(folded.period), "period in formula", a,
               "period " + std::to_string(folded.period) + " not in " + join(prediction.candidates));
        expect(folded.period % 2 == 0, "period even", a, "period " + std::to_string(folded.period));
        expect(terminates_on_horizontal(tess_, d_, a, unfolded), "horizontal termination", a,
               unfolded.terminal_class ? "last crossing " + std::string(name(*unfolded.terminal_class)) : "no crossing");

        const std::int64_t span = d_.x == 0 ? 2 : 2 * d_.x;
        const UnfoldTrace trace = unfold_trace(tess_, a, d_, Rational(span));
        row.N2x = trace.edges_cut;
        std::int64_t decomposed = tess_.strip_weight() * d_.y;
        if (d_.x >= 1) {
            const ContactProfile profile = contact_points(tess_, a, d_, Rational(span));
            const MultiplicitySpacing ms = multiplicity_and_spacing(d_.x, d_.y);
            decomposed += ms.m * profile.b;
            expect(profile.m == ms.m && profile.spacing == ms.s, "equal spacing", a,
                   "profile m=" + std::to_string(profile.m) + " s=" + profile.spacing.to_string());
            const ContactProfile at_close = contact_points(tess_, a, d_, Rational(*unfolded.T));
            expect(at_close.N == unfolded.period, "contact count", a,
                   "contacts give " + std::to_string(at_close.N) + ", trace " + std::to_string(unfolded.period));
        }
        expect(trace.edges_cut == decomposed, "decomposition", a,
               "N2x " + std::to_string(trace.edges_cut) + " vs " + std::to_string(decomposed));
        const auto options = edge_count_options(opt_.shape, d_.x, d_.y);
        expect(std::any_of(options.begin(), options.end(), [&](const EdgeCount& e) { return e.N == trace.edges_cut; }),
               "table cell", a, "N2x " + std::to_string(trace.edges_cut));

        out_.rows.push_back(row);
        return folded.period;
    }

    const SweepOptions& opt_;
    DirectionPair d_;
    const Tessellation& tess_;
    PairOutcome out_;
};

}  // namespace

SweepReport run_sweep(const SweepOptions& options, const std::function<void(std::int64_t, std::int64_t)>& progress) {
    if (options.shape == ShapeId::Hexagon) throw std::invalid_argument("sweeps cover the triangle, rhombus and kite");
    const auto pairs = obtuse_pairs(options.max_sum);
    std::vector<PairOutcome> outcomes(pairs.size());
    std::atomic<std::int64_t> done{0};
    parallel_for(pairs.size(), options.jobs, [&](std::size_t i) {
        outcomes[i] = PairChecker(options, pairs[i]).run();
        const std::int64_t n = ++done;
        if (progress) progress(n, static_cast<std::int64_t>(pairs.size()));
    });

    SweepReport report;
    report.shape = options.shape;
    report.pairs = static_cast<std::int64_t>(pairs.size());
    for (auto& o : outcomes) {
        report.probes += static_cast<std::int64_t>(o.rows.size());
        report.periodic += o.periodic;
        report.singular += o.singular;
        report.biperiodic_pairs += o.biperiodic ? 1 : 0;
        report.both_realized += o.both_realized ? 1 : 0;
        for (auto& [k, v] : o.checks) report.checks[k] += v;
        report.rows.insert(report.rows.end(), o.rows.begin(), o.rows.end());
        report.mismatches.insert(report.mismatches.end(), o.mismatches.begin(), o.mismatches.end());
    }
    return report;
}

}  // namespace billiards
