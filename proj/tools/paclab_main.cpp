// paclab: exact-arithmetic front end for piecewise affine contractions and
// the three-tank switched server. Every command emits a machine-readable
// report embedding the exact parameters used, so runs replay bit-exactly.
//
// Exit codes: 0 success, 2 usage, 3 verification failure, 4 inconclusive or
// precision exhausted.

#include "paclab/betadyn/factor_census.hpp"
#include "paclab/contraction/orbit.hpp"
#include "paclab/io/csv.hpp"
#include "paclab/io/json_report.hpp"
#include "paclab/parse.hpp"
#include "paclab/quasipart/quasipartition.hpp"
#include "paclab/serversim/conjugacy.hpp"
#include "paclab/serversim/simulation.hpp"
#include "paclab/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace paclab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerificationFailure = 3;
constexpr int kExitInconclusive = 4;

std::size_t default_precision() {
    const char* env = std::getenv("PACLAB_PRECISION");
    if (!env || !*env) return 60;
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (!end || *end != '\0' || v < 8 || v > 100000)
        throw std::invalid_argument("PACLAB_PRECISION must be an integer in [8, 100000]");
    return static_cast<std::size_t>(v);
}

DecisionContext decision_context(std::size_t precision) {
    DecisionContext ctx;
    ctx.start_digits = precision;
    ctx.max_digits = std::max<std::size_t>(4096, precision * 8);
    return ctx;
}

// Config file: a flat JSON object whose keys are long option names. Values
// given on the command line win over config values.
Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    Json j = Json::parse(in, nullptr, true, true);
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    return j;
}

// True when the option was given on the command line. Keys name long options
// without the dashes; positionals are looked up by their bare name.
bool option_given(const CLI::App& cmd, const std::string& key) {
    const CLI::Option* o = cmd.get_option_no_throw("--" + key);
    if (o == nullptr) o = cmd.get_option_no_throw(key);
    return o != nullptr && o->count() > 0;
}

void merge_option(const CLI::App& cmd, const Json& cfg, const std::string& key,
                  std::string& target) {
    if (!option_given(cmd, key) && cfg.contains(key)) {
        const Json& v = cfg.at(key);
        target = v.is_string() ? v.get<std::string>() : v.dump();
    }
}

void merge_option(const CLI::App& cmd, const Json& cfg, const std::string& key,
                  std::size_t& target) {
    if (!option_given(cmd, key) && cfg.contains(key)) {
        const Json& v = cfg.at(key);
        if (v.is_number_unsigned())
            target = v.get<std::size_t>();
        else
            target = static_cast<std::size_t>(std::stoull(v.get<std::string>()));
    }
}

void emit_report(const Json& report, const std::string& out_path) {
    if (out_path.empty())
        std::cout << report.dump(2) << "\n";
    else
        write_json(out_path, report);
}

Json json_of_map(const PiecewiseAffineContraction& f) {
    Json j;
    j["beta"] = f.beta().str();
    j["slope_sign"] = f.slope_sign();
    Json bps = Json::array();
    for (const RealValue& b : f.breakpoints()) bps.push_back(json_of(b));
    j["breakpoints"] = std::move(bps);
    Json ints = Json::array();
    bool integral_alphas = true;
    Json alphas = Json::array();
    for (std::size_t i = 1; i <= f.branch_count(); ++i) {
        ints.push_back(json_of(f.intercept(i)));
        Rational alpha = f.slope_sign() > 0
                             ? f.intercept(i) * Rational(f.beta()) + Rational(1)
                             : f.intercept(i) * Rational(f.beta());
        if (alpha.denominator() == 1)
            alphas.push_back(alpha.str());
        else
            integral_alphas = false;
    }
    j["intercepts"] = std::move(ints);
    if (integral_alphas) j["alphas"] = std::move(alphas);
    return j;
}

Json json_of_dtriple(const DTriple& d) {
    return Json::array({json_of(d.d1), json_of(d.d2), json_of(d.d3)});
}

const char* status_name(CycleStatus s) {
    switch (s) {
        case CycleStatus::Cycle: return "cycle";
        case CycleStatus::NoCycleWithinBound: return "no-cycle-within-bound";
        case CycleStatus::Undecidable: return "undecidable";
    }
    return "unknown";
}

// ---------------------------------------------------------------- attractor

struct AttractorOptions {
    std::string d_spec, x_spec, map_spec, seeds, config, out;
    std::size_t max_steps = 10'000;
};

int run_attractor(const CLI::App& cmd, AttractorOptions opt) {
    if (!opt.config.empty()) {
        Json cfg = load_config(opt.config);
        merge_option(cmd, cfg, "d", opt.d_spec);
        merge_option(cmd, cfg, "x", opt.x_spec);
        merge_option(cmd, cfg, "map", opt.map_spec);
        merge_option(cmd, cfg, "seeds", opt.seeds);
        merge_option(cmd, cfg, "max-steps", opt.max_steps);
    }
    int sources = (!opt.d_spec.empty()) + (!opt.x_spec.empty()) + (!opt.map_spec.empty());
    if (sources != 1)
        throw std::invalid_argument("attractor: give exactly one of --d, --x, --map");
    if (opt.seeds.empty()) throw std::invalid_argument("attractor: --seeds is required");

    Json report;
    report["command"] = "attractor";
    Json params;
    params["max_steps"] = opt.max_steps;

    std::optional<DTriple> d;
    PiecewiseAffineContraction f = [&] {
        if (!opt.map_spec.empty()) {
            params["map_spec"] = opt.map_spec;
            return parse_map_spec(opt.map_spec);
        }
        if (!opt.d_spec.empty()) {
            auto t = parse_real_triple(opt.d_spec);
            d.emplace(t[0], t[1], t[2]);
        } else {
            auto t = parse_real_triple(opt.x_spec);
            params["x"] = Json::array({json_of(t[0]), json_of(t[1]), json_of(t[2])});
            d.emplace(d_from_x(t[0], t[1], t[2]));
        }
        params["d"] = json_of_dtriple(*d);
        return interval_map_from_d(*d);
    }();
    params["map"] = json_of_map(f);

    std::vector<Rational> seeds = parse_rational_list(opt.seeds);
    Json seeds_json = Json::array();
    for (const Rational& s : seeds) seeds_json.push_back(json_of(s));
    params["seeds"] = std::move(seeds_json);
    report["parameters"] = std::move(params);

    std::set<Rational> merged;
    bool all_conclusive = true;
    Json per_seed = Json::array();
    for (const Rational& s : seeds) {
        if (s < Rational(0) || s >= Rational(1))
            throw std::invalid_argument("attractor: seed " + s.str() + " outside [0,1)");
        CycleResult r = detect_cycle(f, RealValue(s), opt.max_steps);
        Json entry;
        entry["seed"] = json_of(s);
        entry["status"] = status_name(r.status);
        entry["note"] = r.note;
        if (r.status == CycleStatus::Cycle) {
            entry["preperiod"] = r.preperiod;
            entry["cycle"] = json_of(r.cycle);
            Json dec = Json::array();
            for (const Rational& c : r.cycle) dec.push_back(decimal_string(RealValue(c), 12));
            entry["cycle_decimal"] = std::move(dec);
            entry["exact_revisit"] = r.exact_revisit;
            if (r.boundary_fixed_point) entry["boundary_fixed_point"] = true;
            if (d) {
                Json simplex = Json::array();
                for (const Rational& c : r.cycle)
                    simplex.push_back(c < Rational(1) ? json_of(phi(c)) : Json());
                entry["simplex_cycle"] = std::move(simplex);
            }
            merged.insert(r.cycle.begin(), r.cycle.end());
        } else {
            all_conclusive = false;
        }
        per_seed.push_back(std::move(entry));
    }
    report["per_seed"] = std::move(per_seed);

    std::vector<Rational> merged_sorted(merged.begin(), merged.end());
    report["attractor_estimate"] = json_of(merged_sorted);
    if (d) {
        Json simplex = Json::array();
        for (const Rational& c : merged_sorted)
            if (c < Rational(1)) simplex.push_back(json_of(phi(c)));
        report["attractor_estimate_simplex"] = std::move(simplex);
    }
    report["verdict"] = all_conclusive ? "finite" : "inconclusive";
    emit_report(report, opt.out);
    return all_conclusive ? kExitOk : kExitInconclusive;
}

// ----------------------------------------------------------- quasipartition

struct QuasiPartitionOptions {
    std::string d_spec, map_spec, config, out;
    std::size_t depth = 10'000;
};

const char* chain_status_name(ChainStatus s) {
    switch (s) {
        case ChainStatus::Dead: return "dead";
        case ChainStatus::Cyclic: return "cyclic";
        case ChainStatus::DepthExceeded: return "depth-exceeded";
    }
    return "unknown";
}

int run_quasipartition(const CLI::App& cmd, QuasiPartitionOptions opt) {
    if (!opt.config.empty()) {
        Json cfg = load_config(opt.config);
        merge_option(cmd, cfg, "d", opt.d_spec);
        merge_option(cmd, cfg, "map", opt.map_spec);
        merge_option(cmd, cfg, "depth", opt.depth);
    }
    if (opt.d_spec.empty() == opt.map_spec.empty())
        throw std::invalid_argument("quasipartition: give exactly one of --d, --map");

    Json report;
    report["command"] = "quasipartition";
    Json params;
    params["depth"] = opt.depth;

    PiecewiseAffineContraction f = [&] {
        if (!opt.map_spec.empty()) {
            params["map_spec"] = opt.map_spec;
            return parse_map_spec(opt.map_spec);
        }
        auto t = parse_real_triple(opt.d_spec);
        DTriple d(t[0], t[1], t[2]);
        params["d"] = json_of_dtriple(d);
        return interval_map_from_d(d);
    }();
    params["map"] = json_of_map(f);
    report["parameters"] = std::move(params);

    BackwardClosure closure = backward_closure(f, opt.depth);
    Json chains = Json::array();
    for (const BreakpointChain& c : closure.chains) {
        Json jc;
        jc["breakpoint"] = json_of(c.breakpoint);
        jc["status"] = chain_status_name(c.status);
        jc["points"] = json_of(c.points);
        chains.push_back(std::move(jc));
    }
    report["chains"] = std::move(chains);
    report["H"] = json_of(closure.H);

    if (!closure.conclusive()) {
        report["verdict"] = "inconclusive";
        emit_report(report, opt.out);
        return kExitInconclusive;
    }

    QuasiPartition qp = build_partition(f, closure.H);
    Json intervals = Json::array();
    for (const auto& [lo, hi] : qp.intervals)
        intervals.push_back(Json::array({json_of(lo), json_of(hi)}));
    report["intervals"] = std::move(intervals);
    report["tau"] = qp.tau;
    bool verified = verify_partition(f, qp);
    report["partition_verified"] = verified;

    AttractorReport ar = confirmed_cycles(f, qp);
    report["P"] = ar.periodic;
    report["q"] = ar.q.str();
    report["F"] = json_of(ar.F);
    report["G"] = json_of(ar.G);
    Json cycles = Json::array();
    for (const std::vector<Rational>& c : ar.confirmed_cycles) cycles.push_back(json_of(c));
    report["confirmed_cycles"] = std::move(cycles);
    if (!ar.anomalies.empty()) report["anomalies"] = ar.anomalies;

    bool ok = verified && ar.anomalies.empty();
    report["verdict"] = ok ? "finite" : "verification-failed";
    emit_report(report, opt.out);
    return ok ? kExitOk : kExitVerificationFailure;
}

// ----------------------------------------------------------------- simulate

struct SimulateOptions {
    std::string d_spec, x_spec, v0, config, out, report_path;
    std::size_t events = 60;
    std::size_t samples = 8;
    std::size_t digits = 12;
    std::size_t served = 0;
    std::size_t precision = 0;
};

int run_simulate(const CLI::App& cmd, SimulateOptions opt) {
    if (!opt.config.empty()) {
        Json cfg = load_config(opt.config);
        merge_option(cmd, cfg, "d", opt.d_spec);
        merge_option(cmd, cfg, "x", opt.x_spec);
        merge_option(cmd, cfg, "v0", opt.v0);
        merge_option(cmd, cfg, "events", opt.events);
        merge_option(cmd, cfg, "samples", opt.samples);
        merge_option(cmd, cfg, "digits", opt.digits);
        merge_option(cmd, cfg, "served", opt.served);
        merge_option(cmd, cfg, "out", opt.out);
        merge_option(cmd, cfg, "report", opt.report_path);
        merge_option(cmd, cfg, "precision", opt.precision);
    }
    if (opt.d_spec.empty() == opt.x_spec.empty())
        throw std::invalid_argument("simulate: give exactly one of --d, --x");
    if (opt.v0.empty()) throw std::invalid_argument("simulate: --v0 is required");
    if (opt.served > 3) throw std::invalid_argument("simulate: --served must be 1, 2 or 3");

    Json report;
    report["command"] = "simulate";
    Json params;
    params["precision"] = opt.precision;
    params["events"] = opt.events;
    params["samples_per_segment"] = opt.samples;

    DTriple d = [&] {
        if (!opt.d_spec.empty()) {
            auto t = parse_real_triple(opt.d_spec);
            return DTriple(t[0], t[1], t[2]);
        }
        auto t = parse_real_triple(opt.x_spec);
        params["x"] = Json::array({json_of(t[0]), json_of(t[1]), json_of(t[2])});
        return d_from_x(t[0], t[1], t[2]);
    }();
    params["d"] = json_of_dtriple(d);

    SimplexState v0 = parse_state(opt.v0);
    params["v0"] = json_of(v0);
    std::optional<std::size_t> served;
    if (opt.served != 0) {
        served = opt.served;
        params["served"] = opt.served;
    }
    report["parameters"] = std::move(params);

    DecisionContext ctx = decision_context(opt.precision);
    Trajectory traj = trajectory(v0, d, opt.events, ctx, served);
    report["segments"] = traj.segments.size();
    report["total_time"] = traj.event_times.empty() ? Json("0") : json_of(traj.event_times.back());
    const SimplexState& final_state =
        traj.segments.empty() ? traj.initial : traj.segments.back().end;
    report["final_state"] = json_of(final_state);

    if (!opt.out.empty()) {
        std::vector<SampleRow> rows = sample_rows(traj, opt.samples);
        write_trajectory_csv(opt.out, rows, opt.digits);
        report["csv"] = opt.out;
        report["csv_rows"] = rows.size();
    }

    CycleEstimate est = poincare_cycle(v0, d, opt.events, ctx, served);
    Json cyc;
    cyc["found"] = est.found;
    if (est.found) {
        cyc["exact"] = est.exact;
        cyc["period"] = est.cycle.size();
        cyc["preperiod_length"] = est.preperiod.size();
        Json states = Json::array();
        for (const SimplexState& s : est.cycle) states.push_back(json_of(s));
        cyc["cycle"] = std::move(states);
    }
    report["cycle_estimate"] = std::move(cyc);

    emit_report(report, opt.report_path);
    return kExitOk;
}

// ----------------------------------------------------------------- richness

struct RichnessOptions {
    std::string number, config, out;
    std::size_t k = 3;
    std::size_t prefix = 10'000;
    int base = 10;
    std::size_t precision = 0;
};

int run_richness(const CLI::App& cmd, RichnessOptions opt) {
    if (!opt.config.empty()) {
        Json cfg = load_config(opt.config);
        merge_option(cmd, cfg, "number", opt.number);
        merge_option(cmd, cfg, "k", opt.k);
        merge_option(cmd, cfg, "prefix", opt.prefix);
        if (cmd.count("--base") == 0 && cfg.contains("base")) opt.base = cfg.at("base").get<int>();
    }
    if (opt.number.empty()) throw std::invalid_argument("richness: --number is required");

    Json report;
    report["command"] = "richness";
    Json params;
    params["number_spec"] = opt.number;
    params["k"] = opt.k;
    params["prefix_length"] = opt.prefix;

    ParsedReal parsed = parse_real_spec(opt.number);
    FactorCensus census;
    Json expansion;
    if (parsed.stream) {
        if (cmd.count("--base") != 0 && opt.base != parsed.stream->base())
            throw std::invalid_argument("richness: --base conflicts with the stream's base");
        params["base"] = parsed.stream->base();
        params["number"] = json_of(*parsed.stream);
        census = factor_census(*parsed.stream, opt.k, opt.prefix);
    } else if (parsed.value.is_rational()) {
        Rational r = parsed.value.as_rational();
        params["base"] = opt.base;
        params["number"] = json_of(r);
        RationalDigits digits = digits_of_rational(r, opt.base);
        auto render = [&](const std::vector<int>& ds) {
            std::string s;
            for (int x : ds) {
                if (!s.empty() && opt.base > 10) s.push_back('.');
                s += std::to_string(x);
            }
            return s;
        };
        expansion["preperiod"] = render(digits.preperiod);
        expansion["period"] = render(digits.period);
        census = factor_census(rational_digit_prefix(r, opt.base, opt.prefix), opt.k, opt.base);
    } else {
        throw std::invalid_argument(
            "richness: the spec names no digit sequence (offset does not terminate in the "
            "stream's base); use a rational or a terminating offset");
    }
    report["parameters"] = std::move(params);
    if (!expansion.is_null()) report["expansion"] = std::move(expansion);

    Json jc;
    jc["word_length"] = census.word_length;
    jc["count"] = census.count;
    jc["possible"] = census.possible;
    jc["complete"] = census.complete();
    if (!census.missing.empty()) {
        Json missing = Json::array();
        for (std::size_t i = 0; i < census.missing.size() && i < 16; ++i)
            missing.push_back(census.missing[i]);
        jc["missing_count"] = census.missing.size();
        jc["missing_sample"] = std::move(missing);
    }
    report["census"] = std::move(jc);
    report["evidence"] =
        census.complete()
            ? "all " + std::to_string(census.possible) + " words of length " +
                  std::to_string(opt.k) + " occur in the first " + std::to_string(opt.prefix) +
                  " digits; the expansion is full-shift rich at this length"
            : std::to_string(census.count) + " of " + std::to_string(census.possible) +
                  " words of length " + std::to_string(opt.k) + " occur in the first " +
                  std::to_string(opt.prefix) + " digits; the expansion is not rich at this length";
    emit_report(report, opt.out);
    return kExitOk;
}

// ------------------------------------------------------------------- verify

struct VerifyOptions {
    std::string suite = "all";
    std::string config, out;
};

int run_verify(const CLI::App& cmd, VerifyOptions opt) {
    if (!opt.config.empty()) {
        Json cfg = load_config(opt.config);
        merge_option(cmd, cfg, "suite", opt.suite);
    }
    std::vector<SuiteReport> suites;
    if (opt.suite == "all")
        suites = verify_all();
    else if (opt.suite == "lemma-square")
        suites = {verify_lemma_square()};
    else if (opt.suite == "backward-orbit")
        suites = {verify_backward_orbit()};
    else if (opt.suite == "roundtrip")
        suites = {verify_roundtrip()};
    else if (opt.suite == "conjugacy")
        suites = {verify_conjugacy()};
    else if (opt.suite == "gap-bound")
        suites = {verify_gap_bound()};
    else if (opt.suite == "theorem1")
        suites = {verify_theorem1()};
    else
        throw std::invalid_argument(
            "verify: unknown suite '" + opt.suite +
            "' (expected lemma-square, backward-orbit, roundtrip, conjugacy, gap-bound, "
            "theorem1 or all)");

    bool all_passed = true;
    Json report;
    report["command"] = "verify";
    Json js = Json::array();
    for (const SuiteReport& s : suites) {
        std::cout << s.name << ": " << s.checks << " checks, " << s.failures << " failures ["
                  << (s.passed() ? "PASS" : "FAIL") << "]\n";
        for (const std::string& n : s.notes) std::cout << "  " << n << "\n";
        Json j;
        j["name"] = s.name;
        j["seed"] = s.seed;
        j["checks"] = s.checks;
        j["failures"] = s.failures;
        j["passed"] = s.passed();
        if (!s.notes.empty()) j["notes"] = s.notes;
        js.push_back(std::move(j));
        all_passed = all_passed && s.passed();
    }
    report["suites"] = std::move(js);
    report["passed"] = all_passed;
    if (!opt.out.empty()) write_json(opt.out, report);
    std::cout << (all_passed ? "all suites passed" : "verification failed") << "\n";
    return all_passed ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "paclab: exact laboratory for piecewise affine interval contractions and the "
        "three-tank switched server"};
    app.require_subcommand(1);
    int rc = kExitOk;

    AttractorOptions ao;
    auto* attractor = app.add_subcommand(
        "attractor", "cycles reached from interval seeds, with a merged attractor estimate");
    attractor->add_option("--d", ao.d_spec, "server ratios d1,d2,d3 (number grammar)");
    attractor->add_option("--x", ao.x_spec, "interval breakpoints x1,x2,x3 (number grammar)");
    attractor->add_option("--map", ao.map_spec,
                          "map spec beta=B,sign=+|-,bp=v0:..:vn,alpha=a1:..:an (or intercepts=)");
    attractor->add_option("--seeds", ao.seeds, "comma-separated rational seeds in [0,1)");
    attractor->add_option("--max-steps", ao.max_steps, "iteration bound per seed");
    attractor->add_option("--config", ao.config, "JSON config file (flags win)");
    attractor->add_option("--out", ao.out, "write the JSON report here instead of stdout");
    attractor->callback([&] { rc = run_attractor(*attractor, ao); });

    QuasiPartitionOptions qo;
    auto* quasi = app.add_subcommand(
        "quasipartition", "backward closure, invariant quasi-partition and finite attractor");
    quasi->add_option("--d", qo.d_spec, "rational server ratios d1,d2,d3");
    quasi->add_option("--map", qo.map_spec, "map spec (rational breakpoints required)");
    quasi->add_option("--depth", qo.depth, "backward chain depth bound");
    quasi->add_option("--config", qo.config, "JSON config file (flags win)");
    quasi->add_option("--out", qo.out, "write the JSON report here instead of stdout");
    quasi->callback([&] { rc = run_quasipartition(*quasi, qo); });

    SimulateOptions so;
    auto* simulate =
        app.add_subcommand("simulate", "exact trajectory of the switched server, CSV export");
    simulate->add_option("--d", so.d_spec, "server ratios d1,d2,d3 (number grammar)");
    simulate->add_option("--x", so.x_spec, "interval breakpoints x1,x2,x3 (number grammar)");
    simulate->add_option("--v0", so.v0, "initial volumes v1,v2,v3 summing to 1");
    simulate->add_option("--events", so.events, "number of boundary events to simulate");
    simulate->add_option("--samples", so.samples, "sample rows per drain segment");
    simulate->add_option("--digits", so.digits, "decimal digits in the CSV");
    simulate->add_option("--served", so.served, "served tank for an interior start (1..3)")
        ->check(CLI::Range(1, 3));
    simulate->add_option("--precision", so.precision, "decision precision in stream digits");
    simulate->add_option("--config", so.config, "JSON config file (flags win)");
    simulate->add_option("--out", so.out, "trajectory CSV path");
    simulate->add_option("--report", so.report_path, "write the JSON summary here");
    simulate->callback([&] { rc = run_simulate(*simulate, so); });

    RichnessOptions ro;
    auto* richness = app.add_subcommand(
        "richness", "factor census of a digit expansion as full-shift richness evidence");
    richness->add_option("--number", ro.number,
                         "p/q, decimal, c, champernowne(b) or champernowne(b)+-p/q");
    richness->add_option("--k", ro.k, "factor word length");
    richness->add_option("--prefix", ro.prefix, "digits to scan");
    richness->add_option("--base", ro.base, "expansion base for rational numbers");
    richness->add_option("--config", ro.config, "JSON config file (flags win)");
    richness->add_option("--out", ro.out, "write the JSON report here instead of stdout");
    richness->callback([&] { rc = run_richness(*richness, ro); });

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "deterministic cross-module property suites");
    verify->add_option("suite", vo.suite,
                       "lemma-square | backward-orbit | roundtrip | conjugacy | gap-bound | "
                       "theorem1 | all");
    verify->add_option("--config", vo.config, "JSON config file (flags win)");
    verify->add_option("--out", vo.out, "write the JSON report here");
    verify->callback([&] { rc = run_verify(*verify, vo); });

    try {
        so.precision = default_precision();
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const UndecidableError& e) {
        std::cerr << "undecidable: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const ConstructionViolation& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
