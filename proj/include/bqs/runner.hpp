#pragma once

#include "bqs/amnesic.hpp"
#include "bqs/compressor.hpp"
#include "bqs/metrics.hpp"
#include "bqs/trajectory.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bqs {

enum class Algorithm { Bqs, Fbqs, Pbqs, Abqs, Dp, Bdp, Bgd, Dr };

/// Throws InvalidConfig for an unknown name.
Algorithm parse_algorithm(std::string_view name);
std::string_view name_of(Algorithm a);

struct RunConfig {
    Algorithm algorithm = Algorithm::Fbqs;
    double epsilon = 10.0;
    double epsilon_prev = 0.0; // pbqs: tolerance the input already carries
    std::size_t buffer = 32;   // bdp, bgd
    std::size_t slots = 2400;  // abqs
    std::size_t k = 8;
    double multiplier = 2.5;
};

struct RunResult {
    CompressedTrajectory trajectory;
    std::optional<DecisionStats> stats; // BQS family only
    double seconds = 0.0;
};

/// Runs one algorithm over a whole trace. For abqs the result is the store's
/// export after the stream ends.
RunResult run_algorithm(const RunConfig& config, std::span<const Sample> samples);

/// Metrics of a run against its input. Pruning power comes from the
/// decision counts for bqs/fbqs, is 1 for the other fast variants and 0 for
/// the baselines.
MetricReport score(const RunConfig& config, std::span<const Point> original,
                   const RunResult& result);

struct BenchRow {
    std::size_t n = 0;
    std::size_t repetitions = 0;
    std::size_t keys = 0; // per pass
    double ns_per_point = 0.0;
    std::size_t footprint_bytes = 0; // largest compressor state seen
};

/// Times fast compression of each prefix points[0, n) for n in `sizes`.
/// Every prefix is repeated until at least `min_points` have been processed;
/// the time is the fastest of five rounds taken across all sizes in turn.
/// The footprint comes from a separate pass that samples the state after
/// every point. Throws InvalidConfig for a size of 0 or beyond the input.
std::vector<BenchRow> bench_fbqs(std::span<const Point> points, std::span<const std::size_t> sizes,
                                 double epsilon, std::size_t min_points);

} // namespace bqs
