#include "bqs/geometry.hpp"

#include "bqs/error.hpp"

#include <numbers>

namespace bqs {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

Point project(const GeoPoint& origin, const GeoPoint& p) {
    const double dlat = (p.lat - origin.lat) * kDegToRad;
    const double dlon = (p.lon - origin.lon) * kDegToRad;
    return {p.t, kEarthRadius * std::cos(origin.lat * kDegToRad) * dlon, kEarthRadius * dlat};
}

double distance(const Point& a, const Point& b) {
    return norm(position(b) - position(a));
}

double point_to_segment_distance(Vec2 p, Vec2 s, Vec2 e) {
    const Vec2 d = e - s;
    const double len2 = dot(d, d);
    if (len2 == 0.0) {
        return norm(p - s);
    }
    const double u = dot(p - s, d) / len2;
    if (u <= 0.0) {
        return norm(p - s);
    }
    if (u >= 1.0) {
        return norm(p - e);
    }
    // |cross| / |d| is exact-er than measuring to the interpolated foot.
    return std::abs(cross(d, p - s)) / std::sqrt(len2);
}

double point_to_segment_distance(const Point& p, const SegmentLine& seg) {
    return point_to_segment_distance(position(p), position(seg.s), position(seg.e));
}

double polar_angle(Vec2 v) {
    if (v.x == 0.0 && v.y == 0.0) {
        throw Error(ErrorCode::DegenerateAngle, "polar angle of coincident points");
    }
    double a = std::atan2(v.y, v.x);
    // atan2 yields -pi for (-x, -0.0); fold onto the half-open range.
    if (a == -std::numbers::pi) {
        a = std::numbers::pi;
    }
    return a;
}

double polar_angle(const Point& origin, const Point& p) {
    return polar_angle(position(p) - position(origin));
}

Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Point rotate_about(const Point& p, const Point& origin, double angle) {
    const Vec2 r = rotate(position(p) - position(origin), angle);
    return {p.t, origin.x + r.x, origin.y + r.y};
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << "(t=" << p.t << ", x=" << p.x << ", y=" << p.y << ")";
}

std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << "(" << v.x << ", " << v.y << ")";
}

} // namespace bqs
