#include "bqs/synthgen.hpp"

#include "bqs/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bqs {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::exponential(double mean) { return -mean * std::log1p(-uniform()); }

double Rng::normal(double mu, double sigma) {
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return mu + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }

double Rng::von_mises(double kappa) {
    constexpr double pi = std::numbers::pi;
    if (std::isinf(kappa)) {
        return 0.0;
    }
    if (kappa < 1e-8) {
        return uniform(-pi, pi);
    }
    if (kappa > 1e6) {
        // The rejection constants lose precision here; the wrapped normal is
        // indistinguishable at this concentration.
        return normal(0.0, 1.0 / std::sqrt(kappa));
    }
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);
    for (;;) {
        const double z = std::cos(pi * uniform());
        const double f = (1.0 + r * z) / (r + z);
        const double c = kappa * (r - f);
        const double u2 = 1.0 - uniform();
        if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
            const double theta = std::acos(std::clamp(f, -1.0, 1.0));
            return uniform() < 0.5 ? -theta : theta;
        }
    }
}

namespace {

void validate(const WalkConfig& cfg) {
    const bool ok = cfg.bounds > 0 && cfg.speed_sigma >= 0 && cfg.turn_kappa >= 0 &&
                    cfg.mean_move_time > 0 && cfg.mean_wait_time >= 0 && cfg.sample_interval > 0 &&
                    cfg.n_points >= 2;
    if (!ok) {
        throw Error(ErrorCode::InvalidConfig, "invalid walk configuration");
    }
}

// Reflects one coordinate into [0, side]; returns true when the direction
// along that axis flipped.
bool reflect(double& v, double side) {
    bool flipped = false;
    while (v < 0.0 || v > side) {
        v = v < 0.0 ? -v : 2.0 * side - v;
        flipped = !flipped;
    }
    return flipped;
}

} // namespace

Walk correlated_walk(const WalkConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    Walk out;
    out.samples.reserve(cfg.n_points);

    double x = cfg.bounds / 2.0;
    double y = cfg.bounds / 2.0;
    double heading = rng.uniform(-std::numbers::pi, std::numbers::pi);
    double speed = rng.lognormal(cfg.speed_mu, cfg.speed_sigma);
    bool moving = true;
    double left = rng.exponential(cfg.mean_move_time);

    auto next_event = [&] {
        if (moving && cfg.mean_wait_time > 0.0) {
            moving = false;
            left = rng.exponential(cfg.mean_wait_time);
            return;
        }
        moving = true;
        const double turn = rng.von_mises(cfg.turn_kappa);
        out.turns.push_back(turn);
        heading = std::remainder(heading + turn, 2.0 * std::numbers::pi);
        speed = rng.lognormal(cfg.speed_mu, cfg.speed_sigma);
        left = rng.exponential(cfg.mean_move_time);
    };

    for (std::size_t i = 0; i < cfg.n_points; ++i) {
        const Velocity v = moving ? Velocity{speed * std::cos(heading), speed * std::sin(heading)}
                                  : Velocity{};
        out.samples.push_back({{static_cast<double>(i) * cfg.sample_interval, x, y}, v});

        double remaining = cfg.sample_interval;
        while (remaining > 0.0) {
            const double dt = std::min(remaining, left);
            if (moving) {
                x += speed * std::cos(heading) * dt;
                y += speed * std::sin(heading) * dt;
                const bool fx = reflect(x, cfg.bounds);
                const bool fy = reflect(y, cfg.bounds);
                if (fx) {
                    heading = std::remainder(std::numbers::pi - heading, 2.0 * std::numbers::pi);
                }
                if (fy) {
                    heading = -heading;
                }
            }
            remaining -= dt;
            left -= dt;
            if (left <= 0.0) {
                next_event();
            }
        }
    }
    return out;
}

double von_mises_circular_variance(double kappa) {
    if (kappa == 0.0) {
        return 1.0;
    }
    if (kappa > 500.0) {
        // Bessel ratio asymptote; cyl_bessel_i overflows long before this
        // matters.
        return 1.0 / (2.0 * kappa) + 1.0 / (8.0 * kappa * kappa);
    }
    return 1.0 - std::cyl_bessel_i(1.0, kappa) / std::cyl_bessel_i(0.0, kappa);
}

double circular_variance(const std::vector<double>& angles) {
    if (angles.empty()) {
        throw Error(ErrorCode::EmptyInput, "no angles");
    }
    double c = 0.0;
    double s = 0.0;
    for (double a : angles) {
        c += std::cos(a);
        s += std::sin(a);
    }
    return 1.0 - std::hypot(c, s) / static_cast<double>(angles.size());
}

std::vector<Point> shape(std::string_view kind, std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidConfig, "a shape needs at least 2 points");
    }
    std::vector<Point> out;
    out.reserve(n);
    auto push = [&](double x, double y) {
        out.push_back({static_cast<double>(out.size()), x, y});
    };
    if (kind == "zigzag") {
        // x = <1, 0.5, 3, 0.5, 5, ...> paired with y = <0.5, 2, 0.5, 4, ...>:
        // a staircase of unit-ish teeth climbing the diagonal.
        for (std::size_t i = 0; i < n; ++i) {
            const double j = static_cast<double>(i / 2);
            if (i % 2 == 0) {
                push(2.0 * j + 1.0, 0.5);
            } else {
                push(0.5, 2.0 * j + 2.0);
            }
        }
    } else if (kind == "one_way") {
        for (std::size_t i = 0; i < n; ++i) {
            push(static_cast<double>(i + 1), 0.5);
        }
    } else if (kind == "commute") {
        // x = <1, 2, ..., m, m-1, ..., 1, 2, ...>, four legs.
        const std::size_t span = (n - 1 + 3) / 4;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t phase = i % (2 * span);
            const std::size_t pos = phase <= span ? phase : 2 * span - phase;
            push(static_cast<double>(pos + 1), 0.5);
        }
    } else if (kind == "spiral") {
        // rho = 1 + 2 theta over five turns, uniform in theta.
        const double theta_max = 10.0 * std::numbers::pi;
        for (std::size_t i = 0; i < n; ++i) {
            const double theta = theta_max * static_cast<double>(i) / static_cast<double>(n - 1);
            const double rho = 1.0 + 2.0 * theta;
            push(rho * std::cos(theta), rho * std::sin(theta));
        }
    } else {
        throw Error(ErrorCode::UnknownShape, "unknown shape '" + std::string(kind) + "'");
    }
    return out;
}

} // namespace bqs
