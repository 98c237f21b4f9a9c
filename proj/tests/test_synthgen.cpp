#include "bqs/baselines.hpp"
#include "bqs/compressor.hpp"
#include "bqs/error.hpp"
#include "bqs/synthgen.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bqs;

TEST_CASE("rng transforms") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.uniform() == b.uniform());
    }
    Rng r(7);
    const int n = 200000;
    double sum_e = 0;
    double sum_n = 0;
    double sum_n2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum_e += r.exponential(3.0);
        const double z = r.normal(1.0, 2.0);
        sum_n += z;
        sum_n2 += z * z;
    }
    CHECK(sum_e / n == doctest::Approx(3.0).epsilon(0.02));
    const double mean = sum_n / n;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::sqrt(sum_n2 / n - mean * mean) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("von mises samples match the closed-form circular variance") {
    for (double kappa : {0.5, 2.0, 8.0, 50.0}) {
        Rng r(11);
        std::vector<double> draws;
        for (int i = 0; i < 100000; ++i) {
            const double t = r.von_mises(kappa);
            REQUIRE(std::abs(t) <= std::numbers::pi);
            draws.push_back(t);
        }
        const double want = von_mises_circular_variance(kappa);
        CHECK(circular_variance(draws) == doctest::Approx(want).epsilon(0.05));
    }
    CHECK(von_mises_circular_variance(0.0) == 1.0);
    CHECK(von_mises_circular_variance(1000.0) == doctest::Approx(0.0005).epsilon(0.01));
}

TEST_CASE("walk is deterministic and stays in bounds") {
    const WalkConfig cfg;
    const Walk w1 = correlated_walk(cfg);
    const Walk w2 = correlated_walk(cfg);
    REQUIRE(w1.samples.size() == cfg.n_points);
    bool same = true;
    for (std::size_t i = 0; i < w1.samples.size(); ++i) {
        same = same && w1.samples[i].point == w2.samples[i].point;
    }
    CHECK(same);
    for (std::size_t i = 0; i < w1.samples.size(); ++i) {
        const Point& p = w1.samples[i].point;
        REQUIRE(p.x >= 0.0);
        REQUIRE(p.x <= cfg.bounds);
        REQUIRE(p.y >= 0.0);
        REQUIRE(p.y <= cfg.bounds);
        REQUIRE(w1.samples[i].velocity);
        if (i > 0) {
            REQUIRE(p.t > w1.samples[i - 1].point.t);
        }
    }
    const double want = von_mises_circular_variance(cfg.turn_kappa);
    CHECK(circular_variance(w1.turns) == doctest::Approx(want).epsilon(0.05));

    WalkConfig other = cfg;
    other.seed = cfg.seed + 1;
    CHECK_FALSE(correlated_walk(other).samples[100].point == w1.samples[100].point);
}

TEST_CASE("infinite concentration without waits is a straight line") {
    WalkConfig cfg;
    cfg.turn_kappa = std::numeric_limits<double>::infinity();
    cfg.mean_wait_time = 0.0;
    cfg.n_points = 200;
    cfg.sample_interval = 1.0;
    const Walk w = correlated_walk(cfg);
    const Point& a = w.samples.front().point;
    const Point& b = w.samples.back().point;
    for (const Sample& s : w.samples) {
        CHECK(point_to_segment_distance(s.point, {a, b}) < 1e-6);
    }
}

TEST_CASE("walk configuration is validated") {
    WalkConfig cfg;
    cfg.n_points = 1;
    CHECK_THROWS_AS(correlated_walk(cfg), Error);
    cfg = {};
    cfg.sample_interval = 0;
    CHECK_THROWS_AS(correlated_walk(cfg), Error);
}

TEST_CASE("shapes") {
    SUBCASE("one way") {
        const auto pts = shape("one_way", 500);
        CHECK(pts[0] == Point{0, 1, 0.5});
        CHECK(pts[499] == Point{499, 500, 0.5});
        CHECK(bqs_compress(pts, 10).trajectory.size() == 2);
        CHECK(fbqs_compress(pts, 10).trajectory.size() == 2);
        CHECK(dp_compress(pts, 10).size() == 2);
    }
    SUBCASE("zigzag") {
        const auto pts = shape("zigzag", 6);
        const std::vector<Point> want{{0, 1, 0.5}, {1, 0.5, 2}, {2, 3, 0.5},
                                      {3, 0.5, 4}, {4, 5, 0.5}, {5, 0.5, 6}};
        CHECK(pts == want);
        const auto big = shape("zigzag", 500);
        const double rate = static_cast<double>(bqs_compress(big, 10).trajectory.size()) / 500.0;
        CHECK(std::abs(rate - 0.98) <= 0.01);
    }
    SUBCASE("commute") {
        for (std::size_t n : {9u, 101u, 500u, 1001u}) {
            const auto pts = shape("commute", n);
            std::size_t reversals = 0;
            for (std::size_t i = 1; i + 1 < n; ++i) {
                const double d1 = pts[i].x - pts[i - 1].x;
                const double d2 = pts[i + 1].x - pts[i].x;
                reversals += d1 * d2 < 0 ? 1 : 0;
            }
            CHECK(reversals == 3);
            const std::size_t span = (n + 2) / 4;
            const double eps = 0.5 * static_cast<double>(span);
            // Retraced legs lie on an earlier segment, so turnarounds can be
            // dropped; never more than one key per reversal is needed.
            const auto out = bqs_compress(pts, eps).trajectory;
            CHECK(out.size() >= 3);
            CHECK(out.size() <= reversals + 2);
            CHECK(fbqs_compress(pts, eps).trajectory.size() <= reversals + 2);
        }
    }
    SUBCASE("spiral") {
        const auto pts = shape("spiral", 500);
        CHECK(pts[0].x == doctest::Approx(1.0));
        CHECK(pts[0].y == doctest::Approx(0.0));
        const double rho_end = std::hypot(pts.back().x, pts.back().y);
        CHECK(rho_end == doctest::Approx(1.0 + 20.0 * std::numbers::pi));
        const double bqs = bqs_compress(pts, 10).trajectory.size() / 500.0;
        const double dp = dp_compress(pts, 10).size() / 500.0;
        CHECK(std::abs(bqs - 0.040) <= 0.015);
        CHECK(std::abs(dp - 0.058) <= 0.015);
        CHECK(bqs < dp);
    }
    SUBCASE("timestamps and errors") {
        for (const char* kind : {"zigzag", "one_way", "commute", "spiral"}) {
            const auto pts = shape(kind, 50);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                CHECK(pts[i].t == static_cast<double>(i));
            }
        }
        try {
            shape("circle", 10);
            FAIL("expected UnknownShape");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnknownShape);
        }
    }
}
