#include "bqs/compressor.hpp"

#include "bqs/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bqs {

std::vector<Point> points_of(const std::vector<Sample>& samples) {
    std::vector<Point> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) {
        out.push_back(s.point);
    }
    return out;
}

CompressorState::CompressorState(const CompressorConfig& config, const Point& origin)
    : config_(config) {
    if (!(config.epsilon > 0.0) || config.epsilon_prev < 0.0) {
        throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
    }
    rotation_buffer_.reserve(config.rotation_points);
    reset(origin);
    last_ = origin;
}

double CompressorState::trivial_threshold() const {
    // Keys carrying epsilon_prev of uncertainty may hide original points that
    // far from them, and the candidate segment is equally uncertain.
    return config_.epsilon - 2.0 * config_.epsilon_prev;
}

Vec2 CompressorState::to_local(const Point& p) const {
    const Vec2 offset = position(p) - position(origin_);
    if (rotation_ == 0.0) {
        return offset;
    }
    return {cos_ * offset.x - sin_ * offset.y, sin_ * offset.x + cos_ * offset.y};
}

void CompressorState::reset(const Point& origin) {
    origin_ = origin;
    rotation_ = 0.0;
    cos_ = 1.0;
    sin_ = 0.0;
    calibrated_ = config_.rotation_points == 0;
    rotation_buffer_.clear();
    for (auto& q : quadrants_) {
        q.reset();
    }
    buffer_.clear();
    exempt_radius_ = 0.0;
}

bool CompressorState::calibrate_rotation(Vec2 offset) {
    rotation_buffer_.push_back(offset);
    if (rotation_buffer_.size() < config_.rotation_points) {
        return false;
    }
    Vec2 centroid{};
    for (const Vec2& v : rotation_buffer_) {
        centroid = centroid + v;
    }
    centroid = centroid * (1.0 / static_cast<double>(rotation_buffer_.size()));
    rotation_ = (centroid.x == 0.0 && centroid.y == 0.0) ? 0.0 : polar_angle(centroid);
    cos_ = std::cos(-rotation_);
    sin_ = std::sin(-rotation_);

    for (auto& q : quadrants_) {
        q.reset();
    }
    for (const Vec2& v : rotation_buffer_) {
        const Vec2 local = {cos_ * v.x - sin_ * v.y, sin_ * v.x + cos_ * v.y};
        auto& slot = quadrants_[static_cast<std::size_t>(quadrant_of(local) - 1)];
        if (!slot) {
            slot.emplace(quadrant_of(local));
        }
        slot->absorb(local);
    }
    rotation_buffer_.clear();
    calibrated_ = true;
    return true;
}

void CompressorState::absorb(const Point& p) {
    if (config_.mode == Mode::Buffered) {
        buffer_.push_back(p);
    }
    const double r = distance(origin_, p);
    if (r <= trivial_threshold()) {
        exempt_radius_ = std::max(exempt_radius_, r);
        return;
    }
    if (!calibrated_) {
        // Collected offsets are unrotated; quadrants track them in the
        // unrotated frame until the rotation is fixed.
        const Vec2 offset = position(p) - position(origin_);
        if (calibrate_rotation(offset)) {
            return;
        }
    }
    const Vec2 local = to_local(p);
    const int id = quadrant_of(local);
    auto& slot = quadrants_[static_cast<std::size_t>(id - 1)];
    if (!slot) {
        slot.emplace(id);
    }
    slot->absorb(local);
}

std::optional<BoundPair> CompressorState::raw_bounds(const Point& e) const {
    const Vec2 end = to_local(e);
    std::optional<BoundPair> global;
    for (const auto& q : quadrants_) {
        if (!q) {
            continue;
        }
        const BoundPair b = quadrant_bounds(*q, end);
        if (!global) {
            global = b;
        } else {
            global->d_lb = std::max(global->d_lb, b.d_lb);
            global->d_ub = std::max(global->d_ub, b.d_ub);
        }
    }
    if (global) {
        // Exempt points deviate by at most their distance from the origin.
        global->d_ub = std::max(global->d_ub, exempt_radius_);
    }
    return global;
}

double CompressorState::full_deviation(const Point& e) const {
    double worst = 0.0;
    const SegmentLine seg{origin_, e};
    for (const Point& p : buffer_) {
        worst = std::max(worst, point_to_segment_distance(p, seg));
    }
    return worst;
}

StepDecision CompressorState::step(const Point& e) {
    if (!(e.t > last_->t)) {
        throw Error(ErrorCode::TimeOrder, "timestamp " + std::to_string(e.t) +
                                              " does not follow " + std::to_string(last_->t));
    }

    StepDecision decision;
    bool stop = false;
    const double eps = config_.epsilon;

    // An end point near the origin is itself exempt, but the segment it closes
    // must still be checked against everything absorbed so far.
    const auto raw = raw_bounds(e);
    if (!raw) {
        decision.trivial = true;
        ++stats_.trivial_count;
    } else {
        const BoundPair b = widen_bounds(*raw, config_.epsilon_prev);
        decision.bounds = b;
        if (b.d_ub <= eps) {
            ++stats_.decisive_count;
        } else if (b.d_lb > eps) {
            ++stats_.decisive_count;
            stop = true;
        } else if (config_.mode == Mode::Buffered) {
            ++stats_.full_calc_count;
            decision.used_full_calculation = true;
            stop = full_deviation(e) + 2.0 * config_.epsilon_prev > eps;
        } else {
            ++stats_.decisive_count;
            ++stats_.conservative_count;
            stop = true;
        }
    }

    if (stop) {
        decision.kind = StepDecision::Kind::KeyPoint;
        decision.key = *last_;
        reset(*last_);
    }
    absorb(e);
    last_ = e;
    return decision;
}

std::size_t CompressorState::footprint_bytes() const {
    return sizeof(*this) + rotation_buffer_.capacity() * sizeof(Vec2) +
           buffer_.capacity() * sizeof(Point);
}

StepDecision bqs_step(CompressorState& state, const Point& e) {
    if (state.config().mode != Mode::Buffered) {
        throw Error(ErrorCode::InvalidConfig, "bqs_step needs a buffered state");
    }
    return state.step(e);
}

StepDecision fbqs_step(CompressorState& state, const Point& e) {
    if (state.config().mode != Mode::Fast) {
        throw Error(ErrorCode::InvalidConfig, "fbqs_step needs a fast state");
    }
    return state.step(e);
}

StreamCompressor::StreamCompressor(const CompressorConfig& config) : config_(config) {
    if (!(config.epsilon > 0.0) || config.epsilon_prev < 0.0) {
        throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
    }
}

std::optional<Point> StreamCompressor::push(const Point& p) {
    if (!state_) {
        state_.emplace(config_, p);
        last_emitted_ = p;
        return p;
    }
    const StepDecision d = state_->step(p);
    if (d.kind == StepDecision::Kind::KeyPoint) {
        last_emitted_ = d.key;
        return d.key;
    }
    return std::nullopt;
}

std::optional<Point> StreamCompressor::finish() {
    if (!state_) {
        return std::nullopt;
    }
    const Point last = *state_->flush();
    if (last_emitted_ && *last_emitted_ == last) {
        return std::nullopt;
    }
    last_emitted_ = last;
    return last;
}

const DecisionStats& StreamCompressor::stats() const {
    return state_ ? state_->stats() : empty_stats_;
}

CompressionResult compress(std::span<const Point> points, const CompressorConfig& config) {
    StreamCompressor sc(config);
    CompressionResult out;
    for (const Point& p : points) {
        if (auto key = sc.push(p)) {
            out.trajectory.keys.push_back(*key);
        }
    }
    if (auto key = sc.finish()) {
        out.trajectory.keys.push_back(*key);
    }
    out.stats = sc.stats();
    return out;
}

CompressionResult bqs_compress(std::span<const Point> points, double epsilon) {
    return compress(points, CompressorConfig{epsilon, 0.0, Mode::Buffered});
}

CompressionResult fbqs_compress(std::span<const Point> points, double epsilon) {
    return compress(points, CompressorConfig{epsilon, 0.0, Mode::Fast});
}

CompressedTrajectory pbqs_compress(std::span<const Point> keys, double epsilon_prev,
                                   double epsilon_new) {
    if (!(epsilon_prev >= 0.0) || !(epsilon_new > epsilon_prev)) {
        throw Error(ErrorCode::ToleranceOrder, "new tolerance must exceed the previous one");
    }
    return compress(keys, CompressorConfig{epsilon_new, epsilon_prev, Mode::Fast}).trajectory;
}

} // namespace bqs
