#include "bqs/runner.hpp"

#include "bqs/baselines.hpp"
#include "bqs/error.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>
#include <string>
#include <utility>

namespace bqs {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 8> kNames{{
    {Algorithm::Bqs, "bqs"},
    {Algorithm::Fbqs, "fbqs"},
    {Algorithm::Pbqs, "pbqs"},
    {Algorithm::Abqs, "abqs"},
    {Algorithm::Dp, "dp"},
    {Algorithm::Bdp, "bdp"},
    {Algorithm::Bgd, "bgd"},
    {Algorithm::Dr, "dr"},
}};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

Algorithm parse_algorithm(std::string_view name) {
    for (const auto& [a, n] : kNames) {
        if (n == name) {
            return a;
        }
    }
    throw Error(ErrorCode::InvalidConfig, "unknown algorithm '" + std::string(name) + "'");
}

std::string_view name_of(Algorithm a) {
    for (const auto& [alg, n] : kNames) {
        if (alg == a) {
            return n;
        }
    }
    return "?";
}

RunResult run_algorithm(const RunConfig& config, std::span<const Sample> samples) {
    if (!(config.epsilon > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "epsilon must be positive");
    }
    const std::vector<Point> points = points_of({samples.begin(), samples.end()});
    RunResult r;
    const auto start = Clock::now();
    switch (config.algorithm) {
    case Algorithm::Bqs:
    case Algorithm::Fbqs: {
        CompressionResult c = config.algorithm == Algorithm::Bqs
                                  ? bqs_compress(points, config.epsilon)
                                  : fbqs_compress(points, config.epsilon);
        r.trajectory = std::move(c.trajectory);
        r.stats = c.stats;
        break;
    }
    case Algorithm::Pbqs:
        r.trajectory = pbqs_compress(points, config.epsilon_prev, config.epsilon);
        break;
    case Algorithm::Abqs: {
        AbqsPipeline pipe({config.slots, config.k, config.epsilon, config.multiplier});
        for (const Point& p : points) {
            pipe.push(p);
        }
        pipe.finish();
        for (const AgedPoint& a : pipe.store().export_points()) {
            r.trajectory.keys.push_back(a.point);
        }
        break;
    }
    case Algorithm::Dp:
        r.trajectory = dp_compress(points, config.epsilon);
        break;
    case Algorithm::Bdp:
        r.trajectory = bdp_compress(points, config.epsilon, {config.buffer});
        break;
    case Algorithm::Bgd:
        r.trajectory = bgd_compress(points, config.epsilon, {config.buffer});
        break;
    case Algorithm::Dr:
        r.trajectory = dead_reckoning(samples, config.epsilon);
        break;
    }
    r.seconds = seconds_since(start);
    return r;
}

MetricReport score(const RunConfig& config, std::span<const Point> original,
                   const RunResult& result) {
    MetricReport report = evaluate(std::string(name_of(config.algorithm)), config.epsilon,
                                   original, result.trajectory);
    if (result.stats) {
        if (result.stats->nontrivial() > 0) {
            report.pruning_power =
                pruning_power(result.stats->full_calc_count, result.stats->nontrivial());
        }
    } else if (config.algorithm != Algorithm::Pbqs && config.algorithm != Algorithm::Abqs) {
        report.pruning_power = 0.0; // baselines never decide from bounds
    }
    report.wall_time = result.seconds;
    return report;
}

constexpr int kBenchRounds = 5;

std::vector<BenchRow> bench_fbqs(std::span<const Point> points, std::span<const std::size_t> sizes,
                                 double epsilon, std::size_t min_points) {
    const CompressorConfig cfg{epsilon, 0.0, Mode::Fast};
    auto run = [&](std::span<const Point> pts) {
        StreamCompressor c(cfg);
        std::size_t keys = 0;
        for (const Point& p : pts) {
            keys += c.push(p).has_value();
        }
        return keys + c.finish().has_value();
    };

    std::vector<BenchRow> rows;
    for (std::size_t n : sizes) {
        if (n == 0 || n > points.size()) {
            throw Error(ErrorCode::InvalidConfig, "bench size " + std::to_string(n) +
                                                      " outside 1.." + std::to_string(points.size()));
        }
        const auto pts = points.first(n);
        BenchRow row;
        row.n = n;
        row.repetitions = std::max<std::size_t>(1, (min_points + n - 1) / n);
        row.keys = run(pts);
        StreamCompressor c(cfg);
        for (const Point& p : pts) {
            c.push(p);
            row.footprint_bytes = std::max(row.footprint_bytes, c.state()->footprint_bytes());
        }
        row.ns_per_point = std::numeric_limits<double>::infinity();
        rows.push_back(row);
    }
    // Rounds cycle through all sizes, so slow drift in machine speed hits
    // every size alike; each size keeps its fastest round.
    for (int round = 0; round < kBenchRounds; ++round) {
        for (BenchRow& row : rows) {
            const auto pts = points.first(row.n);
            const auto start = Clock::now();
            for (std::size_t i = 0; i < row.repetitions; ++i) {
                run(pts);
            }
            const double ns = seconds_since(start) * 1e9 / static_cast<double>(row.repetitions * row.n);
            row.ns_per_point = std::min(row.ns_per_point, ns);
        }
    }
    return rows;
}

} // namespace bqs
