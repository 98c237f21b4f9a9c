#pragma once

#include "bqs/geometry.hpp"
#include "bqs/quadrant.hpp"
#include "bqs/trajectory.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bqs {

enum class Mode {
    /// Keeps every point of the open segment and falls back to an exact
    /// deviation scan when the bounds cannot decide.
    Buffered,
    /// Never scans: an undecidable step closes the segment. O(1) state.
    Fast,
};

struct CompressorConfig {
    double epsilon = 10.0;
    /// Tolerance the input was already compressed with; 0 for raw input.
    double epsilon_prev = 0.0;
    Mode mode = Mode::Buffered;
    /// Number of non-trivial points collected before the local frame is
    /// rotated onto their centroid. 0 disables rotation.
    std::size_t rotation_points = 5;
};

struct DecisionStats {
    std::size_t trivial_count = 0;      // nothing absorbed yet could deviate
    std::size_t decisive_count = 0;     // settled without scanning the segment
    std::size_t full_calc_count = 0;    // required an exact scan
    std::size_t conservative_count = 0; // Fast mode: closed because undecidable (subset of decisive)

    std::size_t nontrivial() const { return decisive_count + full_calc_count; }
};

struct StepDecision {
    enum class Kind { Include, KeyPoint };

    Kind kind = Kind::Include;
    /// Set for KeyPoint: the point received just before the current input.
    std::optional<Point> key;
    bool used_full_calculation = false;
    /// Global bounds the decision was taken on (after widening), if any.
    std::optional<BoundPair> bounds;
    bool trivial = false;
};

/// Per-segment state machine shared by the buffered, fast and progressive
/// variants. One instance follows one stream; it is not thread-safe.
class CompressorState {
public:
    CompressorState(const CompressorConfig& config, const Point& origin);

    /// Feeds the next point. Throws TimeOrder unless e.t is strictly later
    /// than the previous input.
    StepDecision step(const Point& e);

    /// Last point seen, which closes the final segment.
    std::optional<Point> flush() const { return last_; }

    const CompressorConfig& config() const { return config_; }
    const Point& origin() const { return origin_; }
    const Point& last() const { return *last_; }
    double rotation() const { return rotation_; }
    bool calibrated() const { return calibrated_; }
    const std::array<std::optional<QuadrantBounds>, 4>& quadrants() const { return quadrants_; }
    const std::vector<Point>& buffer() const { return buffer_; }
    const DecisionStats& stats() const { return stats_; }

    /// Distance from the origin at or below which a point cannot deviate from
    /// any segment starting there, so it is never absorbed into a quadrant.
    double trivial_threshold() const;

    /// Origin-relative coordinates of p in the current (possibly rotated) frame.
    Vec2 to_local(const Point& p) const;

    /// Global bounds for a candidate end point over all populated quadrants,
    /// before widening; d_ub also covers exempt points. nullopt when no
    /// quadrant holds a point.
    std::optional<BoundPair> raw_bounds(const Point& e) const;

    /// Bytes held by this state, including heap capacity.
    std::size_t footprint_bytes() const;

private:
    void reset(const Point& origin);
    void absorb(const Point& p);
    bool calibrate_rotation(Vec2 offset);
    double full_deviation(const Point& e) const;

    CompressorConfig config_;
    Point origin_;
    std::optional<Point> last_;
    double rotation_ = 0.0;
    double cos_ = 1.0; // cos and sin of -rotation_
    double sin_ = 0.0;
    bool calibrated_ = false;
    double exempt_radius_ = 0.0; // farthest exempt point from the origin
    std::vector<Vec2> rotation_buffer_;
    std::array<std::optional<QuadrantBounds>, 4> quadrants_{};
    std::vector<Point> buffer_;
    DecisionStats stats_;
};

/// Buffered-mode step; rejects a Fast-mode state.
StepDecision bqs_step(CompressorState& state, const Point& e);

/// Fast-mode step; rejects a Buffered-mode state.
StepDecision fbqs_step(CompressorState& state, const Point& e);

/// Streaming driver that turns step decisions into a key-point sequence.
class StreamCompressor {
public:
    explicit StreamCompressor(const CompressorConfig& config);

    /// Returns the key emitted by this input, if any. The very first input is
    /// always emitted.
    std::optional<Point> push(const Point& p);

    /// Closing key (the last point), if it has not been emitted already.
    std::optional<Point> finish();

    const DecisionStats& stats() const;
    const CompressorState* state() const { return state_ ? &*state_ : nullptr; }

private:
    CompressorConfig config_;
    std::optional<CompressorState> state_;
    std::optional<Point> last_emitted_;
    DecisionStats empty_stats_;
};

struct CompressionResult {
    CompressedTrajectory trajectory;
    DecisionStats stats;
};

CompressionResult compress(std::span<const Point> points, const CompressorConfig& config);

CompressionResult bqs_compress(std::span<const Point> points, double epsilon);
CompressionResult fbqs_compress(std::span<const Point> points, double epsilon);

/// Re-compresses keys that already carry `epsilon_prev` of error to the
/// larger tolerance `epsilon_new`. Throws ToleranceOrder unless
/// epsilon_new > epsilon_prev >= 0.
CompressedTrajectory pbqs_compress(std::span<const Point> keys, double epsilon_prev,
                                   double epsilon_new);

} // namespace bqs
