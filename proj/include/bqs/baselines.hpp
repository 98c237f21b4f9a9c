#pragma once

#include "bqs/trajectory.hpp"

#include <cstddef>
#include <span>

namespace bqs {

struct BufferConfig {
    std::size_t capacity = 32; // points held after the window start; >= 3
};

/// Classic Douglas-Peucker over the whole sequence. Split ties go to the
/// lowest index, so output is deterministic.
CompressedTrajectory dp_compress(std::span<const Point> points, double epsilon);

/// Douglas-Peucker applied to consecutive windows of `capacity` points after
/// each window start; the next window starts at the previous window's end.
CompressedTrajectory bdp_compress(std::span<const Point> points, double epsilon,
                                  BufferConfig buf = {});

/// Greedy deviation check over a bounded buffer: every new point triggers an
/// exact scan, a breach keys the previous point, and a full buffer forces a
/// key at its last point.
CompressedTrajectory bgd_compress(std::span<const Point> points, double epsilon,
                                  BufferConfig buf = {});

/// Dead reckoning from the velocity recorded at the last kept sample. A
/// sample is kept when the prediction misses it by more than epsilon; the
/// final sample is always kept. Throws NeedsVelocity if a sample has none.
CompressedTrajectory dead_reckoning(std::span<const Sample> samples, double epsilon);

} // namespace bqs
