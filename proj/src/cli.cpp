#include "bqs/cli.hpp"

#include "bqs/amnesic.hpp"
#include "bqs/runner.hpp"
#include "bqs/synthgen.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bqs {

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::ToleranceOrder:
    case ErrorCode::UnknownShape:
        return kExitConfig;
    case ErrorCode::StorageExhausted:
        return kExitStorage;
    default:
        return kExitData;
    }
}

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) {
        out.push_back(part);
    }
    return out;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used == s.size()) {
            return static_cast<std::size_t>(v);
        }
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidConfig, "bad " + what + " '" + s + "'");
}

Trace from_samples(std::vector<Sample> samples) {
    Trace t;
    t.has_velocity = !samples.empty() && samples.front().velocity.has_value();
    t.samples = std::move(samples);
    return t;
}

// Opens `path` for writing, or returns `fallback` when path is empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw Error(ErrorCode::MalformedInput, "cannot write '" + path + "'");
            }
            os_ = &file_;
        }
    }
    std::ostream& get() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

struct Common {
    std::string input;
    bool geo = false;
    std::string report;
    std::string format = "text";
    RunConfig run;
    std::string algo = "fbqs";
};

void add_tolerance_options(CLI::App* cmd, Common& c) {
    cmd->add_option("--epsilon", c.run.epsilon, "Error tolerance in meters")->capture_default_str();
    cmd->add_option("--epsilon-prev", c.run.epsilon_prev,
                    "pbqs: tolerance the input already carries")
        ->capture_default_str();
    cmd->add_option("--buffer", c.run.buffer, "bdp/bgd buffer size")->capture_default_str();
    cmd->add_option("--slots", c.run.slots, "abqs storage slots")->capture_default_str();
    cmd->add_option("--k", c.run.k, "abqs reserve")->capture_default_str();
    cmd->add_option("--multiplier", c.run.multiplier, "abqs tolerance multiplier")
        ->capture_default_str();
}

void add_io_options(CLI::App* cmd, Common& c, bool input_required) {
    auto* in = cmd->add_option("--input", c.input, "CSV path, '-' or gen:<kind>[:...]");
    if (input_required) {
        in->required();
    }
    cmd->add_flag("--geo", c.geo, "Input header is t,lat,lon");
    cmd->add_option("--report", c.report, "Report path (default stdout)");
    cmd->add_option("--format", c.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

void print_table(std::ostream& os, const std::vector<MetricReport>& reports) {
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %8s %10s %8s %12s %12s %10s\n", "algo", "keys", "rate",
                  "alpha", "max_dev", "mean_sync", "seconds");
    os << line;
    for (const MetricReport& r : reports) {
        std::snprintf(line, sizeof line, "%-6s %8zu %10.6f %8.4f %12.4f %12.4f %10.4f\n",
                      r.algorithm.c_str(), r.key_count, r.compression_rate, r.pruning_power,
                      r.max_deviation, r.mean_sync_error, r.wall_time);
        os << line;
    }
}

int cmd_compress(const Common& c, const std::string& output, std::ostream& out) {
    RunConfig cfg = c.run;
    cfg.algorithm = parse_algorithm(c.algo);
    const Trace trace = load_input(c.input, c.geo);
    const RunResult result = run_algorithm(cfg, trace.samples);
    const MetricReport report = score(cfg, trace.points(), result);
    if (!output.empty()) {
        Sink keys(output, out);
        write_keys(keys.get(), trace, result.trajectory.keys);
    }
    Sink sink(c.report, out);
    sink.get() << (c.format == "json" ? to_json(report) + "\n" : to_text(report));
    return kExitOk;
}

int cmd_compare(const Common& c, const std::string& algos, std::ostream& out) {
    const Trace trace = load_input(c.input, c.geo);
    const std::vector<Point> points = trace.points();
    std::vector<MetricReport> reports;
    for (const std::string& name : split_on(algos, ',')) {
        RunConfig cfg = c.run;
        cfg.algorithm = parse_algorithm(name);
        reports.push_back(score(cfg, points, run_algorithm(cfg, trace.samples)));
    }
    Sink sink(c.report, out);
    if (c.format == "json") {
        sink.get() << to_json(reports) << '\n';
    } else {
        print_table(sink.get(), reports);
    }
    return kExitOk;
}

struct SimOptions {
    std::string scenario;
    double ratio = 0.0;
    std::string dump;
    std::string series;
};

int run_storyboard(std::ostream& out) {
    const Storyboard board = storyboard_scenario();
    out << "storage N=" << board.config.slots << " k=" << board.config.k
        << " eps=" << board.config.epsilon << " m=" << board.config.m << '\n';
    for (std::size_t i = 0; i < board.frames.size(); ++i) {
        const StoryFrame& f = board.frames[i];
        out << i + 1 << ". " << f.event << " after " << f.inserted << " points, threshold "
            << f.threshold << ':';
        for (const std::string& label : f.labels) {
            out << ' ' << label;
        }
        out << '\n';
    }
    return kExitOk;
}

int cmd_abqs_sim(const Common& c, const SimOptions& sim, std::ostream& out, std::ostream& err) {
    if (sim.scenario == "storyboard") {
        return run_storyboard(out);
    }
    if (!sim.scenario.empty()) {
        throw Error(ErrorCode::InvalidConfig, "unknown scenario '" + sim.scenario + "'");
    }
    const Trace trace = load_input(c.input.empty() ? "gen:walk:1:80000" : c.input, c.geo);
    const std::vector<Point> points = trace.points();
    AmnesicConfig cfg{c.run.slots, c.run.k, c.run.epsilon, c.run.multiplier};
    if (sim.ratio > 0.0) {
        cfg.slots = static_cast<std::size_t>(std::llround(sim.ratio * static_cast<double>(points.size())));
    }
    AbqsPipeline pipe(cfg);
    std::size_t checks = 0;
    // Timed around the pipeline only; the invariant checks scan the store.
    std::chrono::steady_clock::duration busy{};
    try {
        for (const Point& p : points) {
            const auto start = std::chrono::steady_clock::now();
            const bool stored = pipe.push(p);
            busy += std::chrono::steady_clock::now() - start;
            if (stored) {
                if (auto bad = pipe.store().violation()) {
                    throw Error(ErrorCode::OutOfRange, "storage invariant broken: " + *bad);
                }
                ++checks;
            }
        }
        const auto start = std::chrono::steady_clock::now();
        pipe.finish();
        busy += std::chrono::steady_clock::now() - start;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::StorageExhausted) {
            const AmnesicStore& s = pipe.store();
            err << "storage exhausted after " << pipe.keys_stored() << " keys; live "
                << s.live_count() << "/" << s.config().slots << ", passes "
                << s.compress_passes() << ", index (s,e,age):";
            for (const IndexEntry& entry : s.index()) {
                err << " (" << entry.s << ',' << entry.e << ',' << entry.a << ')';
            }
            err << '\n';
        }
        throw;
    }

    const AmnesicStore& store = pipe.store();
    CompressedTrajectory exported;
    for (const AgedPoint& a : store.export_points()) {
        exported.keys.push_back(a.point);
    }
    MetricReport report = evaluate("abqs", cfg.epsilon, points, exported);
    report.wall_time = std::chrono::duration<double>(busy).count();
    if (!sim.dump.empty()) {
        std::ofstream dump(sim.dump, std::ios::binary);
        if (!dump) {
            throw Error(ErrorCode::MalformedInput, "cannot write '" + sim.dump + "'");
        }
        write_dump(dump, store);
    }
    if (!sim.series.empty()) {
        const SyncError sync = time_sync_error(points, exported);
        const std::vector<double> smoothed = smooth(sync.errors);
        Sink series(sim.series, out);
        series.get() << "t,sync_error,smoothed\n";
        for (std::size_t i = 0; i < points.size(); ++i) {
            series.get() << format_number(points[i].t) << ',' << format_number(sync.errors[i])
                         << ',' << format_number(smoothed[i]) << '\n';
        }
    }

    Sink sink(c.report, out);
    if (c.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(to_json(report));
        j["storage"] = {{"slots", cfg.slots},
                        {"k", cfg.k},
                        {"multiplier", cfg.m},
                        {"live", store.live_count()},
                        {"generations", store.index().size()},
                        {"compress_passes", store.compress_passes()},
                        {"invariant_checks", checks}};
        sink.get() << j.dump(2) << '\n';
    } else {
        sink.get() << to_text(report) << "slots = " << cfg.slots << "\nlive = "
                   << store.live_count() << "\ngenerations = " << store.index().size()
                   << "\ncompress_passes = " << store.compress_passes()
                   << "\ninvariant_checks = " << checks << '\n';
    }
    return kExitOk;
}

int cmd_bench(const std::string& sizes, double epsilon, std::size_t min_points,
              std::uint64_t seed, std::ostream& out) {
    std::vector<std::size_t> ns;
    for (const std::string& s : split_on(sizes, ',')) {
        ns.push_back(parse_count(s, "size"));
    }
    char line[160];
    std::snprintf(line, sizeof line, "%10s %6s %8s %12s %10s\n", "n", "reps", "keys",
                  "ns/point", "state_B");
    out << line;
    WalkConfig w;
    w.seed = seed;
    w.n_points = *std::max_element(ns.begin(), ns.end());
    const std::vector<Point> pts = points_of(correlated_walk(w).samples);
    for (const BenchRow& row : bench_fbqs(pts, ns, epsilon, min_points)) {
        std::snprintf(line, sizeof line, "%10zu %6zu %8zu %12.2f %10zu\n", row.n,
                      row.repetitions, row.keys, row.ns_per_point, row.footprint_bytes);
        out << line;
    }
    return kExitOk;
}

} // namespace

Trace load_input(const std::string& spec, bool geo) {
    if (spec.rfind("gen:", 0) != 0) {
        if (spec == "-") {
            return read_trace(std::cin, geo);
        }
        return read_trace_file(spec, geo);
    }
    if (geo) {
        throw Error(ErrorCode::InvalidConfig, "generated input is planar; drop --geo");
    }
    const std::vector<std::string> parts = split_on(spec.substr(4), ':');
    if (parts.empty()) {
        throw Error(ErrorCode::InvalidConfig, "empty generator spec");
    }
    if (parts[0] == "walk") {
        WalkConfig w;
        if (parts.size() > 1) {
            w.seed = parse_count(parts[1], "seed");
        }
        if (parts.size() > 2) {
            w.n_points = parse_count(parts[2], "point count");
        }
        return from_samples(correlated_walk(w).samples);
    }
    const std::size_t n = parts.size() > 1 ? parse_count(parts[1], "point count") : 500;
    std::vector<Sample> samples;
    for (const Point& p : shape(parts[0], n)) {
        samples.push_back({p, std::nullopt});
    }
    return from_samples(std::move(samples));
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Error-bounded streaming trajectory compression", "bqs"};
    app.require_subcommand(1);

    Common common;

    auto* compress = app.add_subcommand("compress", "Compress one trace with one algorithm");
    std::string output;
    compress->add_option("--algo", common.algo, "bqs|fbqs|pbqs|abqs|dp|bdp|bgd|dr")->required();
    compress->add_option("--output", output, "Write the key points here");
    add_tolerance_options(compress, common);
    add_io_options(compress, common, true);

    auto* compare = app.add_subcommand("compare", "Run several algorithms on one trace");
    std::string algos = "bqs,fbqs,bdp,bgd,dp";
    compare->add_option("--algos", algos, "Comma-separated algorithms")->capture_default_str();
    add_tolerance_options(compare, common);
    add_io_options(compare, common, true);

    auto* sim = app.add_subcommand("abqs-sim", "Stream a trace into amnesic storage");
    SimOptions sim_opts;
    sim->add_option("--scenario", sim_opts.scenario, "Scripted replay: storyboard");
    sim->add_option("--ratio", sim_opts.ratio, "Slots as a fraction of the input size");
    sim->add_option("--dump", sim_opts.dump, "Write the final store as a binary dump");
    sim->add_option("--series", sim_opts.series, "Write per-point sync error as CSV");
    add_tolerance_options(sim, common);
    add_io_options(sim, common, false);

    auto* gen = app.add_subcommand("generate", "Write a synthetic trace as CSV");
    gen->require_subcommand(1);
    std::string gen_output;
    auto* walk = gen->add_subcommand("walk", "Correlated random walk");
    WalkConfig wc;
    walk->add_option("--seed", wc.seed)->capture_default_str();
    walk->add_option("--n", wc.n_points)->capture_default_str();
    walk->add_option("--bounds", wc.bounds)->capture_default_str();
    walk->add_option("--speed-mu", wc.speed_mu, "Log of the median speed")->capture_default_str();
    walk->add_option("--speed-sigma", wc.speed_sigma)->capture_default_str();
    walk->add_option("--kappa", wc.turn_kappa, "Turn concentration")->capture_default_str();
    walk->add_option("--move-time", wc.mean_move_time)->capture_default_str();
    walk->add_option("--wait-time", wc.mean_wait_time)->capture_default_str();
    walk->add_option("--interval", wc.sample_interval)->capture_default_str();
    walk->add_option("--output", gen_output, "Path (default stdout)");
    auto* shape_cmd = gen->add_subcommand("shape", "zigzag, one_way, commute or spiral");
    std::string kind;
    std::size_t shape_n = 500;
    shape_cmd->add_option("kind", kind)->required();
    shape_cmd->add_option("--n", shape_n)->capture_default_str();
    shape_cmd->add_option("--output", gen_output, "Path (default stdout)");

    auto* bench = app.add_subcommand("bench", "Per-point time and state size of fast compression");
    std::string sizes = "1000,10000,100000,1000000";
    double bench_eps = 10.0;
    std::size_t min_points = 1000000;
    std::uint64_t bench_seed = 1;
    bench->add_option("--sizes", sizes)->capture_default_str();
    bench->add_option("--epsilon", bench_eps)->capture_default_str();
    bench->add_option("--min-points", min_points, "Points processed per size")
        ->capture_default_str();
    bench->add_option("--seed", bench_seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (compress->parsed()) {
            return cmd_compress(common, output, out);
        }
        if (compare->parsed()) {
            return cmd_compare(common, algos, out);
        }
        if (sim->parsed()) {
            return cmd_abqs_sim(common, sim_opts, out, err);
        }
        if (walk->parsed()) {
            const Walk w = correlated_walk(wc);
            Sink sink(gen_output, out);
            write_samples(sink.get(), w.samples);
            return kExitOk;
        }
        if (shape_cmd->parsed()) {
            const std::vector<Point> pts = shape(kind, shape_n);
            Sink sink(gen_output, out);
            write_points(sink.get(), pts);
            return kExitOk;
        }
        if (bench->parsed()) {
            return cmd_bench(sizes, bench_eps, min_points, bench_seed, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return kExitConfig;
}

} // namespace bqs
