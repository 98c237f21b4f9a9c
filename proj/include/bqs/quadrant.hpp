#pragma once

#include "bqs/geometry.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace bqs {

/// Sandwich on the maximum deviation of a point set from a candidate segment.
struct BoundPair {
    double d_lb = 0.0;
    double d_ub = 0.0;
};

/// Widens bounds computed from already-compressed keys by the uncertainty
/// their previous tolerance leaves around both the keys and the segment.
/// The lower bound is clamped at zero.
BoundPair widen_bounds(BoundPair b, double epsilon_prev);

/// Quadrant id (1..4) of a vector relative to the segment origin, assigned by
/// half-open angle: Q1 [0, pi/2), Q2 [pi/2, pi), Q3 [-pi, -pi/2), Q4 [-pi/2, 0).
/// The zero vector has no quadrant; callers exempt it before asking.
int quadrant_of(Vec2 v);

/// Angle of v in [-pi, pi), the convention the quadrant ranges use.
double quadrant_angle(Vec2 v);

bool angle_in_quadrant(double angle, int quadrant);

struct Box {
    double min_x = 0.0;
    double max_x = 0.0;
    double min_y = 0.0;
    double max_y = 0.0;
};

/// Bounding structure of the points one quadrant has absorbed, in the
/// segment's local (origin-relative, rotated) frame: an axis-aligned box plus
/// the two rays from the origin at the smallest and largest polar angle.
struct QuadrantBounds {
    int quadrant_id = 1;
    Box box;
    double theta_lb = 0.0;
    double theta_ub = 0.0;
    // Points realising theta_lb / theta_ub; the bounding rays pass through them.
    Vec2 lb_point;
    Vec2 ub_point;
    std::size_t point_count = 0;

    explicit QuadrantBounds(int id = 1) : quadrant_id(id) {}

    /// Extends the structure with a point already known to lie in this quadrant.
    void absorb(Vec2 p);
};

enum class LineClass {
    InQuadrantBetweenLines,
    InQuadrantOutsideLines,
    NotInQuadrant,
};

LineClass classify_line(const QuadrantBounds& q, double line_angle);

/// Classifies seg.s -> seg.e against q, where seg.s is the segment origin and
/// q lives in the frame rotated by `rotation`.
LineClass classify_line(const QuadrantBounds& q, const SegmentLine& seg, double rotation);

/// Box corners c1..c4 (top-left, top-right, bottom-right, bottom-left in
/// axis terms) and the near/far chord endpoints of both bounding rays.
struct SignificantPoints {
    std::array<Vec2, 4> corners;
    Vec2 l1, l2; // lower ray: entry and exit of the box
    Vec2 u1, u2; // upper ray: entry and exit of the box
    int near_corner = 0; // index into corners, closest to the origin
    int far_corner = 0;

    Vec2 near() const { return corners[static_cast<std::size_t>(near_corner)]; }
    Vec2 far() const { return corners[static_cast<std::size_t>(far_corner)]; }

    /// Up to eight points with exact duplicates collapsed.
    std::vector<Vec2> distinct() const;
};

SignificantPoints significant_points(const QuadrantBounds& q);

/// Bounds on max deviation of every absorbed point from the segment
/// origin -> `end` (local frame).
BoundPair quadrant_bounds(const QuadrantBounds& q, Vec2 end);

} // namespace bqs
