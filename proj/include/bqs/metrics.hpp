#pragma once

#include "bqs/trajectory.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bqs {

/// kept / original. Throws EmptyInput when original is 0.
double compression_rate(std::size_t kept, std::size_t original);

/// 1 - full_calcs / total. Throws EmptyInput when total is 0.
double pruning_power(std::size_t full_calcs, std::size_t total);

/// Position at time t by linear interpolation between the keys bracketing
/// it. Exact at key timestamps. Throws OutOfRange outside the key span and
/// EmptyInput for an empty trajectory.
Point reconstruct(const CompressedTrajectory& traj, double t);

/// Largest distance from an original point to the key segment covering its
/// timestamp.
double max_deviation_error(std::span<const Point> original, const CompressedTrajectory& traj);

struct SyncError {
    std::vector<double> errors; // one per original point
    double mean = 0.0;
};

/// Distance between each original point and the reconstruction at the same
/// time. Timestamps before the first or after the last key are scored
/// against that key, so lost data yields large but finite errors.
SyncError time_sync_error(std::span<const Point> original, const CompressedTrajectory& traj);

/// Mean of e_i * (0.8 * i / N + 0.2) for i = 1..N: recent errors weigh up
/// to five times more than the oldest. Throws EmptyInput on an empty list.
double decayed_error(std::span<const double> errors);

/// Trailing moving average; the first window - 1 outputs average what is
/// available so far.
std::vector<double> smooth(std::span<const double> values, std::size_t window = 1000);

struct MetricReport {
    std::string algorithm;
    double epsilon = 0.0;
    double compression_rate = 0.0;
    double pruning_power = 1.0;
    double max_deviation = 0.0;
    double mean_sync_error = 0.0;
    double decayed_sync_error = 0.0;
    std::size_t key_count = 0;
    std::size_t input_count = 0;
    double wall_time = 0.0; // seconds
};

/// Scores a compressed trajectory against its source. pruning_power is left
/// at 1 and wall_time at 0 for the caller to fill in.
MetricReport evaluate(std::string algorithm, double epsilon, std::span<const Point> original,
                      const CompressedTrajectory& traj);

/// One "key = value" line per field.
std::string to_text(const MetricReport& report);

/// A single JSON object.
std::string to_json(const MetricReport& report);
std::string to_json(const std::vector<MetricReport>& reports);

} // namespace bqs
