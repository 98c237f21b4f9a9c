#pragma once

#include "bqs/trajectory.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bqs {

/// A parsed input trace. Geographic input is projected once at ingest
/// (anchored at the first fix); the original fixes are kept for output.
struct Trace {
    bool geo = false;
    bool has_velocity = false;
    std::vector<Sample> samples;
    std::vector<GeoPoint> fixes; // geo input only, parallel to samples

    std::vector<Point> points() const { return points_of(samples); }
};

/// Header "t,x,y" or "t,x,y,vx,vy"; with `geo`, "t,lat,lon". Blank lines are
/// skipped. Throws MalformedInput naming the line for a bad header, a bad
/// field or a timestamp that does not increase.
Trace read_trace(std::istream& is, bool geo = false);
Trace read_trace_file(const std::string& path, bool geo = false);

/// Fixed notation with 9 fractional digits.
std::string format_number(double v);

void write_points(std::ostream& os, std::span<const Point> points);
/// Adds vx,vy columns when every sample carries a velocity.
void write_samples(std::ostream& os, std::span<const Sample> samples);
void write_fixes(std::ostream& os, std::span<const GeoPoint> fixes);

/// Writes `keys` in the trace's own format: input rows are looked up by
/// timestamp, so geo traces come back as lat/lon and values are untouched.
void write_keys(std::ostream& os, const Trace& trace, std::span<const Point> keys);

} // namespace bqs
