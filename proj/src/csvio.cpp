#include "bqs/csvio.hpp"

#include "bqs/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace bqs {

namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string::npos) {
            return out;
        }
        start = comma + 1;
    }
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& field, std::size_t line) {
    double v = 0.0;
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        malformed(line, "bad number '" + field + "'");
    }
    return v;
}

} // namespace

Trace read_trace(std::istream& is, bool geo) {
    Trace trace;
    trace.geo = geo;
    std::string line;
    std::size_t lineno = 0;
    std::size_t columns = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line);
        if (columns == 0) {
            const std::vector<std::string> planar{"t", "x", "y"};
            const std::vector<std::string> moving{"t", "x", "y", "vx", "vy"};
            const std::vector<std::string> geographic{"t", "lat", "lon"};
            if (geo ? fields == geographic : (fields == planar || fields == moving)) {
                columns = fields.size();
                trace.has_velocity = columns == 5;
                continue;
            }
            malformed(lineno, geo ? "expected header t,lat,lon"
                                  : "expected header t,x,y or t,x,y,vx,vy");
        }
        if (fields.size() != columns) {
            malformed(lineno, "expected " + std::to_string(columns) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        std::vector<double> v;
        for (const std::string& f : fields) {
            v.push_back(parse_number(f, lineno));
        }
        if (!trace.samples.empty() && v[0] <= trace.samples.back().point.t) {
            malformed(lineno, "timestamp does not increase");
        }
        Sample s;
        if (geo) {
            if (std::abs(v[1]) > 90.0 || std::abs(v[2]) > 180.0) {
                malformed(lineno, "latitude/longitude out of range");
            }
            const GeoPoint fix{v[0], v[1], v[2]};
            trace.fixes.push_back(fix);
            s.point = project(trace.fixes.front(), fix);
        } else {
            s.point = {v[0], v[1], v[2]};
            if (columns == 5) {
                s.velocity = Velocity{v[3], v[4]};
            }
        }
        trace.samples.push_back(s);
    }
    if (columns == 0) {
        malformed(lineno, "missing header");
    }
    return trace;
}

Trace read_trace_file(const std::string& path, bool geo) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::MalformedInput, "cannot open '" + path + "'");
    }
    return read_trace(in, geo);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

void write_points(std::ostream& os, std::span<const Point> points) {
    os << "t,x,y\n";
    for (const Point& p : points) {
        os << format_number(p.t) << ',' << format_number(p.x) << ',' << format_number(p.y) << '\n';
    }
}

void write_samples(std::ostream& os, std::span<const Sample> samples) {
    const bool vel = std::all_of(samples.begin(), samples.end(),
                                 [](const Sample& s) { return s.velocity.has_value(); });
    os << (vel ? "t,x,y,vx,vy\n" : "t,x,y\n");
    for (const Sample& s : samples) {
        os << format_number(s.point.t) << ',' << format_number(s.point.x) << ','
           << format_number(s.point.y);
        if (vel) {
            os << ',' << format_number(s.velocity->vx) << ',' << format_number(s.velocity->vy);
        }
        os << '\n';
    }
}

void write_fixes(std::ostream& os, std::span<const GeoPoint> fixes) {
    os << "t,lat,lon\n";
    for (const GeoPoint& g : fixes) {
        os << format_number(g.t) << ',' << format_number(g.lat) << ',' << format_number(g.lon)
           << '\n';
    }
}

void write_keys(std::ostream& os, const Trace& trace, std::span<const Point> keys) {
    if (!trace.geo) {
        write_points(os, keys);
        return;
    }
    std::vector<GeoPoint> out;
    out.reserve(keys.size());
    for (const Point& k : keys) {
        const auto it = std::lower_bound(trace.samples.begin(), trace.samples.end(), k.t,
                                         [](const Sample& s, double t) { return s.point.t < t; });
        if (it == trace.samples.end() || it->point.t != k.t) {
            throw Error(ErrorCode::OutOfRange, "key is not an input point");
        }
        out.push_back(trace.fixes[static_cast<std::size_t>(it - trace.samples.begin())]);
    }
    write_fixes(os, out);
}

} // namespace bqs
