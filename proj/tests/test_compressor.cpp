#include "bqs/compressor.hpp"
#include "bqs/error.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bqs;

namespace {

std::vector<Point> line(std::size_t n, double dx = 1.0, double dy = 0.5) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({static_cast<double>(i), 3.0 + dx * i, -2.0 + dy * i});
    }
    return out;
}

std::vector<Point> keys_of(const CompressionResult& r) { return r.trajectory.keys; }

} // namespace

TEST_CASE("a small deviation is included, a large one closes the segment") {
    // Direction giving p1 a deviation of exactly 3 from s -> p3.
    const double dx = (6.0 + std::sqrt(1700.0)) / 52.0;
    const double dy = (dx - 3.0) / 5.0;
    const Point s{0, 0, 0};
    const Point p1{1, 5, 1};
    const Point p2{2, 10, 0};
    const Point p3{3, 10 * dx, 10 * dy};
    REQUIRE(oracle::seg_dist(p1, s, p3) == doctest::Approx(3.0));

    CompressorState st({2.0, 0.0, Mode::Buffered}, s);
    CHECK(st.step(p1).kind == StepDecision::Kind::Include);
    const StepDecision d2 = st.step(p2);
    CHECK(d2.kind == StepDecision::Kind::Include);
    REQUIRE(d2.bounds);
    CHECK(d2.bounds->d_lb == doctest::Approx(1.0));
    CHECK(d2.bounds->d_ub == doctest::Approx(1.0));
    const StepDecision d3 = st.step(p3);
    CHECK(d3.kind == StepDecision::Kind::KeyPoint);
    CHECK(*d3.key == p2);
    CHECK(st.origin() == p2);
    CHECK(st.last() == p3);
}

TEST_CASE("collinear streams keep both ends only") {
    for (Mode mode : {Mode::Buffered, Mode::Fast}) {
        const auto pts = line(200);
        const auto r = compress(pts, {0.5, 0.0, mode});
        REQUIRE(r.trajectory.size() == 2);
        CHECK(r.trajectory.keys.front() == pts.front());
        CHECK(r.trajectory.keys.back() == pts.back());
    }
}

TEST_CASE("flush edge cases") {
    const std::vector<Point> one{{0, 1, 1}};
    CHECK(keys_of(bqs_compress(one, 5)) == one);
    const std::vector<Point> two{{0, 1, 1}, {1, 100, 1}};
    CHECK(keys_of(fbqs_compress(two, 5)) == two);
    CHECK(bqs_compress(std::vector<Point>{}, 5).trajectory.empty());
}

TEST_CASE("non-increasing timestamps are rejected") {
    CompressorState st({5.0}, {1, 0, 0});
    st.step({2, 1, 1});
    for (double t : {2.0, 1.5}) {
        try {
            st.step({t, 3, 3});
            FAIL("expected TimeOrder");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::TimeOrder);
        }
    }
}

TEST_CASE("step functions reject the other mode") {
    CompressorState fast({5.0, 0.0, Mode::Fast}, {});
    CompressorState buffered({5.0, 0.0, Mode::Buffered}, {});
    CHECK_THROWS_AS(bqs_step(fast, {1, 1, 1}), Error);
    CHECK_THROWS_AS(fbqs_step(buffered, {1, 1, 1}), Error);
    CHECK(fbqs_step(fast, {1, 1, 1}).kind == StepDecision::Kind::Include);
}

TEST_CASE("bounds sandwich the true deviation at every step") {
    std::size_t checked = 0;
    for (double eps : {2.0, 10.0, 50.0}) {
        const auto pts = oracle::walk(17 + static_cast<std::uint64_t>(eps), 3000);
        CompressorState st({eps, 0.0, Mode::Buffered}, pts[0]);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (const auto raw = st.raw_bounds(pts[i])) {
                const double truth = oracle::max_dev(st.buffer(), st.origin(), pts[i]);
                REQUIRE(raw->d_lb <= truth + 1e-9);
                REQUIRE(truth <= raw->d_ub + 1e-9);
                ++checked;
            }
            st.step(pts[i]);
        }
    }
    CHECK(checked > 5000);
}

TEST_CASE("buffered mode reproduces the full-recomputation reference") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto pts = oracle::walk(seed, 10000);
        for (double eps : {2.0, 10.0, 30.0}) {
            const auto got = keys_of(bqs_compress(pts, eps));
            const auto want = oracle::greedy_reference(pts, eps);
            REQUIRE(got.size() == want.size());
            CHECK(got == want);
        }
    }
}

TEST_CASE("outputs respect the tolerance") {
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
        const auto pts = oracle::walk(seed, 5000);
        for (double eps : {2.0, 5.0, 20.0}) {
            CHECK(oracle::covering_dev(pts, keys_of(bqs_compress(pts, eps))) <= eps + 1e-9);
            CHECK(oracle::covering_dev(pts, keys_of(fbqs_compress(pts, eps))) <= eps + 1e-9);
        }
    }
}

TEST_CASE("fast mode agrees on bound-decisive steps and never scans") {
    const auto pts = oracle::walk(99, 10000);
    const double eps = 10.0;
    CompressorState buffered({eps, 0.0, Mode::Buffered}, pts[0]);
    CompressorState fast({eps, 0.0, Mode::Fast}, pts[0]);
    std::size_t compared = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const bool same_segment = buffered.origin() == fast.origin();
        const StepDecision b = buffered.step(pts[i]);
        const StepDecision f = fast.step(pts[i]);
        CHECK_FALSE(f.used_full_calculation);
        if (same_segment && !b.used_full_calculation) {
            CHECK(b.kind == f.kind);
            ++compared;
        }
        if (buffered.origin() != fast.origin()) {
            // Segments diverged; restart the comparison from a common state.
            buffered = CompressorState({eps, 0.0, Mode::Buffered}, pts[i]);
            fast = CompressorState({eps, 0.0, Mode::Fast}, pts[i]);
        }
    }
    CHECK(compared > 1000);
    CHECK(fast.stats().full_calc_count == 0);
    CHECK(fast.buffer().empty());

    const auto nb = bqs_compress(pts, eps).trajectory.size();
    const auto nf = fbqs_compress(pts, eps).trajectory.size();
    CHECK(nf >= nb);
}

TEST_CASE("decision statistics add up") {
    const auto pts = oracle::walk(5, 4000);
    const auto r = bqs_compress(pts, 8.0);
    CHECK(r.stats.trivial_count + r.stats.nontrivial() == pts.size() - 1);
    const auto f = fbqs_compress(pts, 8.0);
    CHECK(f.stats.full_calc_count == 0);
    CHECK(f.stats.conservative_count <= f.stats.decisive_count);
}

TEST_CASE("translation leaves decisions unchanged") {
    // Coordinates on a 1/64 grid near the origin; a shift by 1024 keeps every
    // difference exact.
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> step(-200, 200);
    std::vector<Point> pts;
    int x = 0;
    int y = 0;
    for (int i = 0; i < 3000; ++i) {
        pts.push_back({static_cast<double>(i), x / 64.0, y / 64.0});
        x += step(rng) + 150;
        y += step(rng);
    }
    std::vector<Point> shifted = pts;
    for (Point& p : shifted) {
        p.x += 1024;
        p.y -= 1024;
    }
    for (Mode mode : {Mode::Buffered, Mode::Fast}) {
        CompressorState a({3.0, 0.0, mode}, pts[0]);
        CompressorState b({3.0, 0.0, mode}, shifted[0]);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            REQUIRE(a.step(pts[i]).kind == b.step(shifted[i]).kind);
        }
    }
}

TEST_CASE("points near the origin never touch the quadrants") {
    CompressorState st({10.0}, {0, 0, 0});
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-7, 7);
    for (int i = 1; i < 200; ++i) {
        const StepDecision d = st.step({static_cast<double>(i), u(rng), u(rng)});
        CHECK(d.kind == StepDecision::Kind::Include);
        CHECK(d.trivial);
    }
    for (const auto& q : st.quadrants()) {
        CHECK_FALSE(q.has_value());
    }
    CHECK_FALSE(st.calibrated());
    CHECK(st.rotation() == 0.0);
}

TEST_CASE("rotation calibrates onto the centroid bearing") {
    CompressorState st({1.0}, {0, 0, 0});
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> jitter(-0.02, 0.02);
    std::vector<Vec2> offsets;
    for (int i = 1; i <= 5; ++i) {
        const double a = 0.8 + jitter(rng);
        const Vec2 v{10.0 * i * std::cos(a), 10.0 * i * std::sin(a)};
        offsets.push_back(v);
        CHECK_FALSE(st.calibrated());
        st.step({static_cast<double>(i), v.x, v.y});
    }
    REQUIRE(st.calibrated());
    Vec2 c{};
    for (Vec2 v : offsets) {
        c = c + v * 0.2;
    }
    CHECK(st.rotation() == doctest::Approx(std::atan2(c.y, c.x)));
    const Vec2 local = rotate(c, -st.rotation());
    CHECK(std::abs(local.y) <= 1e-9);
    CHECK(local.x > 0);
}

TEST_CASE("points symmetric about the centroid bearing split after rotation") {
    CompressorState st({20.0}, {0, 0, 0});
    const double b = std::atan(1.0);
    const double spread[] = {0.1, -0.1, 0.2, -0.2, 0.05};
    int i = 1;
    for (double s : spread) {
        const double r = 30.0 + i;
        st.step({static_cast<double>(i++), r * std::cos(b + s), r * std::sin(b + s)});
    }
    REQUIRE(st.calibrated());
    int populated = 0;
    for (const auto& q : st.quadrants()) {
        populated += q.has_value();
    }
    CHECK(populated == 2);
    CHECK(st.quadrants()[0].has_value());
    CHECK(st.quadrants()[3].has_value());
}

TEST_CASE("fast-mode state does not grow with the stream") {
    const auto pts = oracle::walk(12, 100000);
    StreamCompressor sc({10.0, 0.0, Mode::Fast});
    std::size_t early = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        sc.push(pts[i]);
        if (i == 100) {
            early = sc.state()->footprint_bytes();
        }
    }
    CHECK(sc.state()->footprint_bytes() == early);
}

TEST_CASE("progressive compression") {
    SUBCASE("straight keys collapse to two") {
        const auto pts = line(50, 3, 4);
        CHECK(pbqs_compress(pts, 2, 10).size() == 2);
    }
    SUBCASE("zero previous tolerance is plain fast mode") {
        const auto pts = oracle::walk(21, 5000);
        CHECK(pbqs_compress(pts, 0, 7).keys == keys_of(fbqs_compress(pts, 7)));
    }
    SUBCASE("tolerances must increase") {
        const auto pts = line(5);
        for (auto [prev, next] : {std::pair{2.0, 2.0}, std::pair{5.0, 2.0}, std::pair{-1.0, 3.0}}) {
            try {
                pbqs_compress(pts, prev, next);
                FAIL("expected ToleranceOrder");
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::ToleranceOrder);
            }
        }
    }
    SUBCASE("raw points stay within the final tolerance") {
        for (std::uint64_t seed = 30; seed < 40; ++seed) {
            const auto raw = oracle::walk(seed, 10000, 2.0, 0.5);
            const auto k1 = keys_of(fbqs_compress(raw, 2));
            const auto k2 = pbqs_compress(k1, 2, 10).keys;
            const auto k3 = pbqs_compress(k2, 10, 50).keys;
            CHECK(k2.size() <= k1.size());
            CHECK(k3.size() <= k2.size());
            CHECK(k2.front() == raw.front());
            CHECK(k2.back() == raw.back());
            CHECK(oracle::covering_dev(raw, k2) <= 10 + 1e-9);
            CHECK(oracle::covering_dev(raw, k3) <= 50 + 1e-9);
        }
    }
}
