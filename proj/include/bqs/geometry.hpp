#pragma once

#include <cmath>
#include <ostream>

namespace bqs {

/// Timestamped planar location. Seconds, meters east, meters north.
struct Point {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Geographic fix in degrees.
struct GeoPoint {
    double t = 0.0;
    double lat = 0.0;
    double lon = 0.0;
};

/// Plain 2-D vector, used for coordinates relative to a segment origin.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
// Plain sqrt rather than hypot: coordinates are metres, far from overflow,
// and hypot dominates the per-point cost.
inline double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline Vec2 position(const Point& p) { return {p.x, p.y}; }

/// Closed segment from `s` to `e`. s == e is a legal degenerate segment.
struct SegmentLine {
    Point s;
    Point e;
};

inline constexpr double kEarthRadius = 6371000.0;

/// Local equirectangular projection anchored at `origin`. Accurate for the
/// tens-to-hundreds of kilometres a single trace covers; not a geodesic.
Point project(const GeoPoint& origin, const GeoPoint& p);

double distance(const Point& a, const Point& b);

double point_to_segment_distance(Vec2 p, Vec2 s, Vec2 e);
double point_to_segment_distance(const Point& p, const SegmentLine& seg);

/// Angle of p - origin against +x in (-pi, pi]. Throws DegenerateAngle when
/// the points coincide.
double polar_angle(const Point& origin, const Point& p);
double polar_angle(Vec2 v);

Vec2 rotate(Vec2 v, double angle);
Point rotate_about(const Point& p, const Point& origin, double angle);

std::ostream& operator<<(std::ostream& os, const Point& p);
std::ostream& operator<<(std::ostream& os, const Vec2& v);

} // namespace bqs
