#include "bqs/baselines.hpp"

#include "bqs/error.hpp"

#include <utility>
#include <vector>

namespace bqs {

namespace {

void check(double epsilon) {
    if (!(epsilon > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
    }
}

void check(BufferConfig buf) {
    if (buf.capacity < 3) {
        throw Error(ErrorCode::InvalidConfig, "buffer capacity must be at least 3");
    }
}

// Marks DP keys strictly inside [first, last] of `points`.
void dp_mark(std::span<const Point> points, std::size_t first, std::size_t last,
             double epsilon, std::vector<char>& keep) {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{first, last}};
    while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        if (b <= a + 1) {
            continue;
        }
        const SegmentLine seg{points[a], points[b]};
        double worst = -1.0;
        std::size_t at = a;
        for (std::size_t i = a + 1; i < b; ++i) {
            const double d = point_to_segment_distance(points[i], seg);
            if (d > worst) {
                worst = d;
                at = i;
            }
        }
        if (worst > epsilon) {
            keep[at] = 1;
            stack.emplace_back(at, b);
            stack.emplace_back(a, at);
        }
    }
}

CompressedTrajectory collect(std::span<const Point> points, const std::vector<char>& keep) {
    CompressedTrajectory out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (keep[i]) {
            out.keys.push_back(points[i]);
        }
    }
    return out;
}

} // namespace

CompressedTrajectory dp_compress(std::span<const Point> points, double epsilon) {
    check(epsilon);
    if (points.empty()) {
        return {};
    }
    std::vector<char> keep(points.size(), 0);
    keep.front() = keep.back() = 1;
    dp_mark(points, 0, points.size() - 1, epsilon, keep);
    return collect(points, keep);
}

CompressedTrajectory bdp_compress(std::span<const Point> points, double epsilon,
                                  BufferConfig buf) {
    check(epsilon);
    check(buf);
    if (points.empty()) {
        return {};
    }
    std::vector<char> keep(points.size(), 0);
    keep.front() = keep.back() = 1;
    for (std::size_t start = 0; start + 1 < points.size();) {
        const std::size_t end = std::min(start + buf.capacity, points.size() - 1);
        keep[end] = 1;
        dp_mark(points, start, end, epsilon, keep);
        start = end;
    }
    return collect(points, keep);
}

CompressedTrajectory bgd_compress(std::span<const Point> points, double epsilon,
                                  BufferConfig buf) {
    check(epsilon);
    check(buf);
    CompressedTrajectory out;
    if (points.empty()) {
        return out;
    }
    out.keys.push_back(points[0]);
    std::size_t start = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const std::size_t held = i - 1 - start; // buffered points after the start
        bool stop = held >= buf.capacity;
        if (!stop) {
            const SegmentLine seg{points[start], points[i]};
            for (std::size_t j = start + 1; j < i; ++j) {
                if (point_to_segment_distance(points[j], seg) > epsilon) {
                    stop = true;
                    break;
                }
            }
        }
        if (stop) {
            out.keys.push_back(points[i - 1]);
            start = i - 1;
        }
    }
    if (!(out.keys.back() == points.back())) {
        out.keys.push_back(points.back());
    }
    return out;
}

CompressedTrajectory dead_reckoning(std::span<const Sample> samples, double epsilon) {
    check(epsilon);
    CompressedTrajectory out;
    if (samples.empty()) {
        return out;
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!samples[i].velocity) {
            throw Error(ErrorCode::NeedsVelocity,
                        "sample " + std::to_string(i) + " has no velocity");
        }
    }
    const Sample* anchor = &samples[0];
    out.keys.push_back(anchor->point);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const Point& p = samples[i].point;
        const double dt = p.t - anchor->point.t;
        const Point predicted{p.t, anchor->point.x + anchor->velocity->vx * dt,
                              anchor->point.y + anchor->velocity->vy * dt};
        if (distance(predicted, p) > epsilon) {
            anchor = &samples[i];
            out.keys.push_back(p);
        }
    }
    if (!(out.keys.back() == samples.back().point)) {
        out.keys.push_back(samples.back().point);
    }
    return out;
}

} // namespace bqs
