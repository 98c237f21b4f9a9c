#include "bqs/metrics.hpp"

#include "bqs/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace bqs {

double compression_rate(std::size_t kept, std::size_t original) {
    if (original == 0) {
        throw Error(ErrorCode::EmptyInput, "compression rate of an empty input");
    }
    return static_cast<double>(kept) / static_cast<double>(original);
}

double pruning_power(std::size_t full_calcs, std::size_t total) {
    if (total == 0) {
        throw Error(ErrorCode::EmptyInput, "pruning power without decisions");
    }
    return 1.0 - static_cast<double>(full_calcs) / static_cast<double>(total);
}

namespace {

// Index of the first key with timestamp >= t.
std::size_t lower_key(const std::vector<Point>& keys, double t) {
    return static_cast<std::size_t>(
        std::lower_bound(keys.begin(), keys.end(), t,
                         [](const Point& k, double v) { return k.t < v; }) -
        keys.begin());
}

Point interpolate(const Point& a, const Point& b, double t) {
    const double f = (t - a.t) / (b.t - a.t);
    return {t, a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
}

Point reconstruct_clamped(const std::vector<Point>& keys, double t) {
    if (t <= keys.front().t) {
        return keys.front();
    }
    if (t >= keys.back().t) {
        return keys.back();
    }
    const std::size_t hi = lower_key(keys, t);
    if (keys[hi].t == t) {
        return keys[hi];
    }
    return interpolate(keys[hi - 1], keys[hi], t);
}

} // namespace

Point reconstruct(const CompressedTrajectory& traj, double t) {
    if (traj.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot reconstruct from no keys");
    }
    if (t < traj.keys.front().t || t > traj.keys.back().t) {
        throw Error(ErrorCode::OutOfRange, "time " + std::to_string(t) + " outside the key span");
    }
    Point p = reconstruct_clamped(traj.keys, t);
    p.t = t;
    return p;
}

double max_deviation_error(std::span<const Point> original, const CompressedTrajectory& traj) {
    if (traj.empty()) {
        throw Error(ErrorCode::EmptyInput, "no keys");
    }
    const auto& keys = traj.keys;
    double worst = 0.0;
    for (const Point& p : original) {
        if (p.t < keys.front().t || p.t > keys.back().t) {
            throw Error(ErrorCode::OutOfRange, "original point outside the key span");
        }
        const std::size_t hi = lower_key(keys, p.t);
        const std::size_t lo = hi == 0 ? 0 : hi - 1;
        worst = std::max(worst, point_to_segment_distance(p, {keys[lo], keys[hi]}));
    }
    return worst;
}

SyncError time_sync_error(std::span<const Point> original, const CompressedTrajectory& traj) {
    if (traj.empty()) {
        throw Error(ErrorCode::EmptyInput, "no keys");
    }
    SyncError out;
    out.errors.reserve(original.size());
    double sum = 0.0;
    for (const Point& p : original) {
        const double e = distance(p, reconstruct_clamped(traj.keys, p.t));
        out.errors.push_back(e);
        sum += e;
    }
    out.mean = original.empty() ? 0.0 : sum / static_cast<double>(original.size());
    return out;
}

double decayed_error(std::span<const double> errors) {
    if (errors.empty()) {
        throw Error(ErrorCode::EmptyInput, "decayed error of an empty list");
    }
    const double n = static_cast<double>(errors.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        sum += errors[i] * (0.8 * static_cast<double>(i + 1) / n + 0.2);
    }
    return sum / n;
}

std::vector<double> smooth(std::span<const double> values, std::size_t window) {
    if (window == 0) {
        throw Error(ErrorCode::InvalidConfig, "smoothing window must be positive");
    }
    std::vector<double> out;
    out.reserve(values.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += values[i];
        if (i >= window) {
            sum -= values[i - window];
        }
        out.push_back(sum / static_cast<double>(std::min(i + 1, window)));
    }
    return out;
}

MetricReport evaluate(std::string algorithm, double epsilon, std::span<const Point> original,
                      const CompressedTrajectory& traj) {
    MetricReport r;
    r.algorithm = std::move(algorithm);
    r.epsilon = epsilon;
    r.input_count = original.size();
    r.key_count = traj.size();
    r.compression_rate = compression_rate(traj.size(), original.size());
    r.max_deviation = max_deviation_error(original, traj);
    const SyncError sync = time_sync_error(original, traj);
    r.mean_sync_error = sync.mean;
    r.decayed_sync_error = decayed_error(sync.errors);
    return r;
}

namespace {

nlohmann::ordered_json json_of(const MetricReport& r) {
    return {{"algorithm", r.algorithm},
            {"epsilon", r.epsilon},
            {"compression_rate", r.compression_rate},
            {"pruning_power", r.pruning_power},
            {"max_deviation", r.max_deviation},
            {"mean_sync_error", r.mean_sync_error},
            {"decayed_sync_error", r.decayed_sync_error},
            {"key_count", r.key_count},
            {"input_count", r.input_count},
            {"wall_time", r.wall_time}};
}

} // namespace

std::string to_text(const MetricReport& r) {
    std::ostringstream os;
    os << std::setprecision(10);
    const auto doc = json_of(r);
    for (const auto& [key, value] : doc.items()) {
        os << key << " = ";
        if (value.is_string()) {
            os << value.get<std::string>();
        } else if (value.is_number_unsigned()) {
            os << value.get<std::size_t>();
        } else {
            os << value.get<double>();
        }
        os << '\n';
    }
    return os.str();
}

std::string to_json(const MetricReport& report) { return json_of(report).dump(2); }

std::string to_json(const std::vector<MetricReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const MetricReport& r : reports) {
        arr.push_back(json_of(r));
    }
    return arr.dump(2);
}

} // namespace bqs
