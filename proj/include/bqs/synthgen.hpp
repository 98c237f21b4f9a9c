#pragma once

#include "bqs/trajectory.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace bqs {

/// Distribution sampling on top of mt19937_64. Every transform is written out
/// here instead of using <random> distributions, whose algorithms differ
/// between standard libraries, so a seed gives the same stream everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) from the top 53 bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double exponential(double mean);
    /// Box-Muller; the second variate is discarded to keep the stream simple.
    double normal(double mu, double sigma);
    double lognormal(double mu, double sigma);
    /// Von Mises on (-pi, pi] centred at 0 (Best-Fisher rejection sampler).
    double von_mises(double kappa);

private:
    std::mt19937_64 engine_;
};

struct WalkConfig {
    std::uint64_t seed = 1;
    double bounds = 10000.0;   // side of the square, meters
    double speed_mu = 1.791759469228055; // ln 6, speeds in m/s
    double speed_sigma = 0.5;
    double turn_kappa = 1.0;
    double mean_move_time = 240.0; // seconds
    double mean_wait_time = 15.0;  // seconds; 0 disables waiting
    double sample_interval = 5.0;  // seconds
    std::size_t n_points = 30000;
};

struct Walk {
    std::vector<Sample> samples;
    std::vector<double> turns; // every von Mises turn that was drawn
};

/// Event-based correlated random walk. Waits (position frozen) alternate
/// with moves (heading turned by a von Mises draw, lognormal speed,
/// exponential duration), starting from the centre of the square with a
/// move. Positions reflect off the square's edges. Samples carry the
/// instantaneous velocity.
Walk correlated_walk(const WalkConfig& cfg);

/// Circular variance 1 - I1(k)/I0(k) of a von Mises distribution.
double von_mises_circular_variance(double kappa);

/// 1 - |mean resultant| of a set of angles.
double circular_variance(const std::vector<double>& angles);

/// Deterministic test shapes: "zigzag", "one_way", "commute", "spiral".
/// Timestamps are the sample index in seconds. Throws UnknownShape.
std::vector<Point> shape(std::string_view kind, std::size_t n);

} // namespace bqs
