#pragma once

#include "bqs/geometry.hpp"

#include <optional>
#include <vector>

namespace bqs {

/// Retained key points, ordered by time. Consecutive keys delimit one
/// compressed segment.
struct CompressedTrajectory {
    std::vector<Point> keys;

    std::size_t size() const { return keys.size(); }
    bool empty() const { return keys.empty(); }
};

struct Velocity {
    double vx = 0.0;
    double vy = 0.0;
};

/// A point as delivered by a sensor or generator: position plus, when the
/// source has it, the instantaneous velocity.
struct Sample {
    Point point;
    std::optional<Velocity> velocity;
};

std::vector<Point> points_of(const std::vector<Sample>& samples);

} // namespace bqs
