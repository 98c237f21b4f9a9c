#include "bqs/quadrant.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace bqs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

struct AngleRange {
    double start;
    double end;
};

AngleRange range_of(int quadrant) {
    switch (quadrant) {
    case 1: return {0.0, kHalfPi};
    case 2: return {kHalfPi, kPi};
    case 3: return {-kPi, -kHalfPi};
    default: return {-kHalfPi, 0.0};
    }
}

// Indices into SignificantPoints::corners, laid out c1..c4 as
// (min_x,max_y), (max_x,max_y), (max_x,min_y), (min_x,min_y).
constexpr std::array<int, 5> kNearCorner = {0, 3, 2, 1, 0};
constexpr std::array<int, 5> kFarCorner = {0, 1, 0, 3, 2};

// Chord of the ray through `through` (which lies inside the box) clipped to
// the box. Parameterised as t * through, so t = 1 is always inside.
void ray_chord(const Box& box, Vec2 through, Vec2& entry, Vec2& exit) {
    double t0 = 0.0;
    double t1 = std::numeric_limits<double>::infinity();
    auto clip = [&](double lo, double hi, double d) {
        if (d == 0.0) {
            return;
        }
        double a = lo / d;
        double b = hi / d;
        if (a > b) {
            std::swap(a, b);
        }
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
    };
    clip(box.min_x, box.max_x, through.x);
    clip(box.min_y, box.max_y, through.y);
    // Rounding can push the bracket past the known interior point.
    t0 = std::min(t0, 1.0);
    t1 = std::max(t1, 1.0);
    entry = through * t0;
    exit = through * t1;
}

} // namespace

BoundPair widen_bounds(BoundPair b, double epsilon_prev) {
    return {std::max(0.0, b.d_lb - 2.0 * epsilon_prev), b.d_ub + 2.0 * epsilon_prev};
}

double quadrant_angle(Vec2 v) {
    const double a = std::atan2(v.y, v.x);
    return a == kPi ? -kPi : a;
}

bool angle_in_quadrant(double angle, int quadrant) {
    const AngleRange r = range_of(quadrant);
    return r.start <= angle && angle < r.end;
}

int quadrant_of(Vec2 v) {
    const double a = quadrant_angle(v);
    if (a >= 0.0) {
        return a < kHalfPi ? 1 : 2;
    }
    return a < -kHalfPi ? 3 : 4;
}

void QuadrantBounds::absorb(Vec2 p) {
    const double a = quadrant_angle(p);
    if (point_count == 0) {
        box = {p.x, p.x, p.y, p.y};
        theta_lb = theta_ub = a;
        lb_point = ub_point = p;
    } else {
        box.min_x = std::min(box.min_x, p.x);
        box.max_x = std::max(box.max_x, p.x);
        box.min_y = std::min(box.min_y, p.y);
        box.max_y = std::max(box.max_y, p.y);
        if (a < theta_lb) {
            theta_lb = a;
            lb_point = p;
        }
        if (a > theta_ub) {
            theta_ub = a;
            ub_point = p;
        }
    }
    ++point_count;
}

LineClass classify_line(const QuadrantBounds& q, double line_angle) {
    if (!angle_in_quadrant(line_angle, q.quadrant_id)) {
        return LineClass::NotInQuadrant;
    }
    if (q.theta_lb <= line_angle && line_angle <= q.theta_ub) {
        return LineClass::InQuadrantBetweenLines;
    }
    return LineClass::InQuadrantOutsideLines;
}

LineClass classify_line(const QuadrantBounds& q, const SegmentLine& seg, double rotation) {
    const Vec2 local = rotate(position(seg.e) - position(seg.s), -rotation);
    return classify_line(q, quadrant_angle(local));
}

std::vector<Vec2> SignificantPoints::distinct() const {
    std::vector<Vec2> out;
    out.reserve(8);
    auto add = [&](Vec2 v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) {
            out.push_back(v);
        }
    };
    for (const Vec2& c : corners) {
        add(c);
    }
    add(l1);
    add(l2);
    add(u1);
    add(u2);
    return out;
}

SignificantPoints significant_points(const QuadrantBounds& q) {
    SignificantPoints sp;
    const Box& b = q.box;
    sp.corners = {Vec2{b.min_x, b.max_y}, Vec2{b.max_x, b.max_y}, Vec2{b.max_x, b.min_y},
                  Vec2{b.min_x, b.min_y}};
    sp.near_corner = kNearCorner[static_cast<std::size_t>(q.quadrant_id)];
    sp.far_corner = kFarCorner[static_cast<std::size_t>(q.quadrant_id)];
    ray_chord(b, q.lb_point, sp.l1, sp.l2);
    ray_chord(b, q.ub_point, sp.u1, sp.u2);
    return sp;
}

BoundPair quadrant_bounds(const QuadrantBounds& q, Vec2 end) {
    const SignificantPoints sp = significant_points(q);
    const Vec2 origin{};
    auto d = [&](Vec2 v) { return point_to_segment_distance(v, origin, end); };

    const double dl1 = d(sp.l1);
    const double dl2 = d(sp.l2);
    const double du1 = d(sp.u1);
    const double du2 = d(sp.u2);
    std::array<double, 4> corner{};
    for (std::size_t i = 0; i < 4; ++i) {
        corner[i] = d(sp.corners[i]);
    }

    // A real point sits on each bounding ray inside the box; distance to a
    // segment anchored at the origin is non-decreasing along such a ray.
    double lb = std::max(std::min(dl1, dl2), std::min(du1, du2));
    double ub = 0.0;

    const double line_angle = (end.x == 0.0 && end.y == 0.0) ? 0.0 : quadrant_angle(end);
    if (classify_line(q, line_angle) != LineClass::NotInQuadrant) {
        const double near = corner[static_cast<std::size_t>(sp.near_corner)];
        const double far = corner[static_cast<std::size_t>(sp.far_corner)];
        lb = std::max(lb, norm(end) < norm(sp.far()) ? near : far);
        ub = std::max({dl1, dl2, du1, du2, far});
    } else {
        std::array<double, 4> sorted = corner;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        lb = std::max(lb, sorted[2]);
        ub = sorted[0];
    }
    return {lb, std::max(lb, ub)};
}

} // namespace bqs
