#include "bqs/amnesic.hpp"
#include "bqs/compressor.hpp"
#include "bqs/error.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <sstream>

using namespace bqs;

namespace {

Point at(double t, double x = 0.0, double y = 0.0) { return {t, x, y}; }

// Max deviation of the raw points covered by each exported segment, checked
// against the looser of the two endpoint tolerances.
void check_end_to_end(const std::vector<Point>& raw, const std::vector<AgedPoint>& out) {
    REQUIRE(out.size() >= 2);
    std::size_t k = 0;
    for (const Point& p : raw) {
        if (p.t < out.front().point.t || p.t > out.back().point.t) {
            continue;
        }
        while (k + 2 < out.size() && out[k + 1].point.t < p.t) {
            ++k;
        }
        const AgedPoint& a = out[k];
        const AgedPoint& b = out[k + 1];
        const double tol = std::max(a.tolerance, b.tolerance);
        REQUIRE(oracle::seg_dist(p, a.point, b.point) <= tol + 1e-9);
    }
}

} // namespace

TEST_CASE("insert places points after the youngest generation") {
    AmnesicStore store({20, 4, 2.0, 2.5});
    store.insert(at(1));
    CHECK(store.index() == std::vector<IndexEntry>{{0, 0, 0}});
    CHECK(store.slots()[0]->t == 1);
    for (int t = 2; t <= 6; ++t) {
        store.insert(at(t, t));
    }
    CHECK(store.index() == std::vector<IndexEntry>{{0, 5, 0}});
    store.insert(at(7, 7));
    CHECK(store.index() == std::vector<IndexEntry>{{0, 6, 0}});
    CHECK(store.slots()[6]->t == 7);
    CHECK_THROWS_AS(store.insert(at(7)), Error);
}

TEST_CASE("trigger conditions") {
    AmnesicStore store({20, 4, 2.0, 2.5});
    CHECK_FALSE(store.trigger());
    store.update_index(0, 0, 19);
    CHECK(store.trigger());
    store.update_index(0, -1, -1);
    store.update_index(1, 0, 16);
    CHECK(store.trigger());
    store.update_index(1, 0, 15);
    CHECK_FALSE(store.trigger());
    CHECK(store.threshold() == 15);
}

TEST_CASE("update_index") {
    AmnesicStore store({20, 4, 2.0, 2.5});
    store.update_index(0, 0, 3);
    store.update_index(0, -1, -1);
    CHECK(store.index().empty());

    store.update_index(0, 10, 12);
    store.update_index(3, 0, 4);
    store.update_index(2, 5, 9);
    REQUIRE(store.index().size() == 3);
    CHECK(store.index()[0].a == 0);
    CHECK(store.index()[1].a == 2);
    CHECK(store.index()[2].a == 3);

    store.update_index(0, 0, 6);
    store.update_index(0, -1, 7);
    CHECK(store.index()[0] == IndexEntry{0, 7, 0});

    try {
        store.update_index(5, -1, 9);
        FAIL("expected NoSuchGeneration");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSuchGeneration);
    }
}

TEST_CASE("compress_generation") {
    SUBCASE("collinear data collapses to two points at the next tolerance") {
        AmnesicStore store({600, 8, 2.0, 5.0});
        for (int i = 0; i < 500; ++i) {
            store.insert(at(i + 1, 3.0 * i, 1.0 * i));
        }
        REQUIRE(store.index().size() == 1);
        store.compress_generation(0, 499, 0, 0);
        CHECK(store.index() == std::vector<IndexEntry>{{0, 1, 1}});
        CHECK(store.live_count() == 2);
        CHECK(store.tolerance(1) == 10.0);
        CHECK(store.tolerance(2) == 50.0);
        const auto out = store.export_points();
        CHECK(out[0].point.t == 1);
        CHECK(out[1].point.t == 500);
        CHECK(out[1].tolerance == 10.0);
    }
    SUBCASE("destination may not lie after the source") {
        AmnesicStore store({20, 4, 2.0, 5.0});
        store.insert(at(1));
        store.insert(at(2, 1));
        CHECK_THROWS_AS(store.compress_generation(0, 1, 0, 1), Error);
    }
}

TEST_CASE("configuration limits") {
    CHECK_THROWS_AS(AmnesicStore({20, 4, 2.0, 2.0}), Error);
    CHECK_THROWS_AS(AmnesicStore({6, 4, 2.0, 2.5}), Error);
    CHECK_THROWS_AS(AmnesicStore({20, 4, 0.0, 2.5}), Error);
    CHECK_NOTHROW(AmnesicStore({7, 4, 2.0, 2.5}));
}

TEST_CASE("export of an empty store") {
    AmnesicStore store({20, 4, 2.0, 2.5});
    CHECK(store.export_points().empty());
}

TEST_CASE("invariants hold after every insert of a long walk") {
    const auto raw = oracle::walk(5, 30000, 4.0, 0.6);
    const AmnesicConfig cfg{300, 8, 2.0, 2.5};
    AbqsPipeline pipe(cfg);
    std::size_t checks = 0;
    for (const Point& p : raw) {
        if (pipe.push(p)) {
            const auto bad = pipe.store().violation();
            REQUIRE_MESSAGE(!bad, *bad);
            ++checks;
        }
    }
    pipe.finish();
    CHECK_FALSE(pipe.store().violation());
    CHECK(checks > 300);
    const auto out = pipe.store().export_points();
    CHECK(out.front().point == raw.front());
    CHECK(out.back().point == raw.back());
    CHECK(out.front().age > 0);
    check_end_to_end(raw, out);
}

TEST_CASE("unconstrained storage equals plain fast compression") {
    const auto raw = oracle::walk(6, 5000);
    const auto keys = fbqs_compress(raw, 2.0).trajectory.keys;
    AbqsPipeline pipe({keys.size() + 10, 4, 2.0, 2.5});
    for (const Point& p : raw) {
        pipe.push(p);
    }
    pipe.finish();
    const auto out = pipe.store().export_points();
    REQUIRE(out.size() == keys.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out[i].point == keys[i]);
        CHECK(out[i].age == 0);
    }
    CHECK(pipe.store().compress_passes() == 0);
}

TEST_CASE("exhaustion is reported") {
    // Three slots of room and a reserve that leaves no space once aged.
    AmnesicStore store({5, 2, 1.0, 3.0});
    bool thrown = false;
    try {
        for (int i = 0; i < 1000; ++i) {
            // A zigzag never compresses below its turning points.
            store.insert(at(i + 1, 100.0 * i, (i % 2) * 1e6));
        }
    } catch (const Error& e) {
        thrown = true;
        CHECK(e.code() == ErrorCode::StorageExhausted);
    }
    CHECK(thrown);
}

TEST_CASE("dump round trip") {
    AmnesicStore store({64, 4, 2.0, 2.5});
    const auto raw = oracle::walk(9, 2000);
    AbqsPipeline pipe(store.config());
    for (const Point& p : raw) {
        pipe.push(p);
    }
    std::stringstream buf;
    write_dump(buf, pipe.store());
    const std::string bytes = buf.str();
    CHECK(bytes.size() == 8 + 4 + 4 + 8 + 8 + 64 * 24 + 4 + 12 * pipe.store().index().size());
    CHECK(bytes.compare(0, 8, std::string("ABQS\0\1\0\0", 8)) == 0);
    const AmnesicStore back = read_dump(buf);
    CHECK(back.index() == pipe.store().index());
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(back.slots()[i].has_value() == pipe.store().slots()[i].has_value());
        if (back.slots()[i]) {
            CHECK(*back.slots()[i] == *pipe.store().slots()[i]);
        }
    }

    std::stringstream bad(std::string("ABQX\0\1\0\0", 8));
    CHECK_THROWS_AS(read_dump(bad), Error);
    std::stringstream truncated(bytes.substr(0, 100));
    CHECK_THROWS_AS(read_dump(truncated), Error);
}

TEST_CASE("storyboard walkthrough") {
    const Storyboard board = storyboard_scenario();
    const std::size_t n = board.config.slots;
    const std::size_t k = board.config.k;
    REQUIRE(board.frames.size() == 8);

    const std::vector<std::string> events{"full",     "age 0->1", "full",     "age 0->1",
                                          "age 1->2", "full",     "age 0->1", "final"};
    const std::vector<std::vector<std::string>> labels{
        {"<16-1,2>"},
        {"<16-1,10>"},
        {"<16-1,10>", "<23-17,2>"},
        {"<23-1,10>"},
        {"<23-1,50>"},
        {"<23-1,50>", "<37-24,2>"},
        {"<23-1,50>", "<37-24,10>"},
        {"<23-1,50>", "<37-24,10>", "<40-38,2>"},
    };
    // Age 0 may fill the storage; age 1 stops k+1 short of the top, age 2 one
    // slot lower still.
    const std::vector<std::size_t> thresholds{n - 1,     n - k - 1, n - 1,     n - k - 1,
                                              n - k - 2, n - 1,     n - k - 1, n - 1};
    for (std::size_t i = 0; i < board.frames.size(); ++i) {
        CAPTURE(i);
        const StoryFrame& f = board.frames[i];
        CHECK(f.event == events[i]);
        CHECK(f.labels == labels[i]);
        CHECK(f.threshold == thresholds[i]);
        // Bottom-first labels mirror the youngest-first index.
        REQUIRE(f.index.size() == f.labels.size());
        CHECK(f.index.back().s == 0);
    }
    CHECK(board.frames[0].inserted == n);

    // The merged age-1 block breaches its threshold, which forces the sink to 50.
    CHECK(board.frames[3].index[0].e > n - k - 1);
    // The next age-1 block lands directly above the age-2 block.
    const auto& idx = board.frames[6].index;
    CHECK(idx[0].a == 1);
    CHECK(idx[1].a == 2);
    CHECK(idx[0].s == idx[1].e + 1);
}
