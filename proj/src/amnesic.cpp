#include "bqs/amnesic.hpp"

#include "bqs/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace bqs {

namespace {

// Far beyond any age a real stream reaches (m^200 overflows nothing but
// exceeds every physical distance); hitting it means the layout cannot fit.
constexpr unsigned kMaxAge = 200;

void validate(const AmnesicConfig& c) {
    if (!(c.epsilon > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "base tolerance must be positive");
    }
    if (!(c.m > 2.0)) {
        // Widening by 2*eps_prev would consume the whole new tolerance.
        throw Error(ErrorCode::InvalidConfig, "multiplier must exceed 2");
    }
    if (c.k < 1 || c.slots < c.k + 3) {
        throw Error(ErrorCode::InvalidConfig, "need at least k + 3 slots and k >= 1");
    }
    if (c.slots > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::InvalidConfig, "slot count exceeds 32 bits");
    }
}

} // namespace

AmnesicStore::AmnesicStore(const AmnesicConfig& config) : config_(config) {
    validate(config_);
    slots_.assign(config_.slots, std::nullopt);
}

double AmnesicStore::tolerance(unsigned age) const {
    return std::pow(config_.m, static_cast<double>(age)) * config_.epsilon;
}

std::size_t AmnesicStore::threshold() const {
    const std::size_t n = config_.slots;
    if (index_.empty() || index_[0].a == 0) {
        return n - 1;
    }
    const std::size_t reserve = config_.k + index_[0].a;
    return reserve >= n ? 0 : n - reserve;
}

bool AmnesicStore::trigger() const {
    if (index_.empty()) {
        return false;
    }
    const IndexEntry& y = index_[0];
    if (y.a == 0) {
        return y.e == config_.slots - 1;
    }
    return y.e + config_.k + y.a > config_.slots;
}

void AmnesicStore::insert(const Point& p) {
    if (last_t_ && !(p.t > *last_t_)) {
        throw Error(ErrorCode::TimeOrder, "stored points must have increasing timestamps");
    }
    std::size_t i = 0;
    if (!index_.empty()) {
        i = index_[0].e + 1;
        if (index_[0].a == 0) {
            update_index(0, -1, static_cast<std::int64_t>(i));
        } else {
            update_index(0, static_cast<std::int64_t>(i), static_cast<std::int64_t>(i));
        }
    } else {
        update_index(0, 0, 0);
    }
    slots_[i] = p;
    last_t_ = p.t;
    sink();
}

void AmnesicStore::sink() {
    while (trigger()) {
        const IndexEntry y = index_[0];
        if (index_.size() == 1 && y.e - y.s + 1 <= 2) {
            // Nothing left to drop and nothing older to merge with.
            throw Error(ErrorCode::StorageExhausted,
                        "storage of " + std::to_string(config_.slots) + " slots with k=" +
                            std::to_string(config_.k) + " cannot hold age " +
                            std::to_string(y.a));
        }
        if (y.a >= kMaxAge) {
            throw Error(ErrorCode::StorageExhausted, "generation age limit reached");
        }
        if (observer_) {
            observer_(*this, Event::Triggered, y.a);
        }
        const std::size_t dest = index_.size() == 1 ? 0 : index_[1].e + 1;
        compress_generation(y.s, y.e, y.a, dest);
    }
}

void AmnesicStore::compress_generation(std::size_t src_start, std::size_t src_end,
                                       unsigned age, std::size_t dest_start) {
    if (src_start > src_end || src_end >= slots_.size() || dest_start > src_start) {
        throw Error(ErrorCode::InvalidConfig, "invalid compress region");
    }
    // PBQS, streamed slot by slot: a key is always a point already read, so
    // writes never overtake reads.
    StreamCompressor pbqs({tolerance(age + 1), tolerance(age), Mode::Fast});
    std::size_t w = dest_start;
    auto emit = [&](const std::optional<Point>& key) {
        if (key) {
            slots_[w++] = *key;
        }
    };
    for (std::size_t r = src_start; r <= src_end; ++r) {
        if (!slots_[r]) {
            throw Error(ErrorCode::InvalidConfig, "empty slot inside a generation");
        }
        emit(pbqs.push(*slots_[r]));
    }
    emit(pbqs.finish());
    for (std::size_t r = w; r <= src_end; ++r) {
        slots_[r].reset();
    }

    update_index(age, -1, -1);
    const std::size_t new_end = w - 1;
    const auto older = std::find_if(index_.begin(), index_.end(),
                                    [&](const IndexEntry& en) { return en.a == age + 1; });
    if (older != index_.end() && older->e + 1 == dest_start) {
        update_index(age + 1, -1, static_cast<std::int64_t>(new_end));
    } else {
        update_index(age + 1, static_cast<std::int64_t>(dest_start),
                     static_cast<std::int64_t>(new_end));
    }
    ++passes_;
    if (observer_) {
        observer_(*this, Event::Compressed, age);
    }
}

void AmnesicStore::update_index(unsigned age, std::int64_t s, std::int64_t e) {
    auto it = std::find_if(index_.begin(), index_.end(),
                           [&](const IndexEntry& en) { return en.a == age; });
    if (s < 0 && e < 0) {
        if (it != index_.end()) {
            index_.erase(it);
        }
        return;
    }
    if (s < 0) {
        if (it == index_.end()) {
            throw Error(ErrorCode::NoSuchGeneration,
                        "no index entry for age " + std::to_string(age));
        }
        it->e = static_cast<std::size_t>(e);
        return;
    }
    if (e < s) {
        throw Error(ErrorCode::InvalidConfig, "index entry ends before it starts");
    }
    const IndexEntry entry{static_cast<std::size_t>(s), static_cast<std::size_t>(e), age};
    if (it != index_.end()) {
        *it = entry;
        return;
    }
    const auto pos = std::find_if(index_.begin(), index_.end(),
                                  [&](const IndexEntry& en) { return en.a > age; });
    index_.insert(pos, entry);
}

std::vector<AgedPoint> AmnesicStore::export_points() const {
    std::vector<AgedPoint> out;
    for (auto it = index_.rbegin(); it != index_.rend(); ++it) {
        const double tol = tolerance(it->a);
        for (std::size_t i = it->s; i <= it->e; ++i) {
            if (slots_[i]) {
                out.push_back({*slots_[i], it->a, tol});
            }
        }
    }
    return out;
}

std::size_t AmnesicStore::live_count() const {
    return static_cast<std::size_t>(
        std::count_if(slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); }));
}

std::optional<std::string> AmnesicStore::violation() const {
    std::ostringstream why;
    const std::size_t n = config_.slots;
    if (slots_.size() != n) {
        return "slot array resized";
    }
    std::vector<char> covered(n, 0);
    for (std::size_t i = 0; i < index_.size(); ++i) {
        const IndexEntry& en = index_[i];
        if (en.s > en.e || en.e >= n) {
            why << "entry " << i << " out of range";
            return why.str();
        }
        if (i > 0 && !(index_[i - 1].a < en.a)) {
            why << "ages not strictly increasing at entry " << i;
            return why.str();
        }
        if (i > 0 && !(en.e < index_[i - 1].s)) {
            why << "entry " << i << " is not below the younger entry";
            return why.str();
        }
        for (std::size_t j = en.s; j <= en.e; ++j) {
            if (!slots_[j]) {
                why << "empty slot " << j << " inside age " << en.a;
                return why.str();
            }
            covered[j] = 1;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!covered[j] && slots_[j]) {
            why << "slot " << j << " holds a point outside every generation";
            return why.str();
        }
    }
    if (!index_.empty() && index_[0].a > 0 && index_[0].e + config_.k + index_[0].a > n) {
        why << "youngest generation (age " << index_[0].a << ") ends at " << index_[0].e
            << ", past " << threshold();
        return why.str();
    }
    const auto pts = export_points();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i].point.t > pts[i - 1].point.t)) {
            why << "timestamps not increasing at exported point " << i;
            return why.str();
        }
    }
    for (const AgedPoint& p : pts) {
        if (p.tolerance != tolerance(p.age)) {
            return "tolerance label does not match age";
        }
    }
    return std::nullopt;
}

AmnesicStore AmnesicStore::from_parts(const AmnesicConfig& config,
                                      std::vector<std::optional<Point>> slots,
                                      std::vector<IndexEntry> index) {
    AmnesicStore store(config);
    if (slots.size() != config.slots) {
        throw Error(ErrorCode::MalformedInput, "slot count does not match the header");
    }
    store.slots_ = std::move(slots);
    store.index_ = std::move(index);
    if (auto bad = store.violation()) {
        throw Error(ErrorCode::MalformedInput, "inconsistent store: " + *bad);
    }
    const auto pts = store.export_points();
    if (!pts.empty()) {
        store.last_t_ = pts.back().point.t;
    }
    return store;
}

void abqs_insert(AmnesicStore& store, const Point& p) { store.insert(p); }
bool trigger(const AmnesicStore& store) { return store.trigger(); }
void amnesic_sinking(AmnesicStore& store) { store.sink(); }
void compress_generation(AmnesicStore& store, std::size_t src_start, std::size_t src_end,
                         unsigned age, std::size_t dest_start) {
    store.compress_generation(src_start, src_end, age, dest_start);
}
void update_index(AmnesicStore& store, unsigned age, std::int64_t s, std::int64_t e) {
    store.update_index(age, s, e);
}
std::vector<AgedPoint> export_store(const AmnesicStore& store) { return store.export_points(); }

// Binary dump ---------------------------------------------------------------

namespace {

constexpr std::array<char, 8> kMagic = {'A', 'B', 'Q', 'S', '\0', '\1', '\0', '\0'};

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) {
        b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    os.write(b, 4);
}

void put_f64(std::ostream& os, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    char b[8];
    for (int i = 0; i < 8; ++i) {
        b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    os.write(b, 8);
}

std::uint64_t get_bytes(std::istream& is, int n) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), n)) {
        throw Error(ErrorCode::MalformedInput, "truncated store dump");
    }
    std::uint64_t v = 0;
    for (int i = n - 1; i >= 0; --i) {
        v = (v << 8) | b[i];
    }
    return v;
}

std::uint32_t get_u32(std::istream& is) { return static_cast<std::uint32_t>(get_bytes(is, 4)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_bytes(is, 8)); }

} // namespace

void write_dump(std::ostream& os, const AmnesicStore& store) {
    const AmnesicConfig& c = store.config();
    os.write(kMagic.data(), kMagic.size());
    put_u32(os, static_cast<std::uint32_t>(c.slots));
    put_u32(os, static_cast<std::uint32_t>(c.k));
    put_f64(os, c.epsilon);
    put_f64(os, c.m);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& s : store.slots()) {
        put_f64(os, s ? s->t : nan);
        put_f64(os, s ? s->x : nan);
        put_f64(os, s ? s->y : nan);
    }
    put_u32(os, static_cast<std::uint32_t>(store.index().size()));
    for (const IndexEntry& en : store.index()) {
        put_u32(os, static_cast<std::uint32_t>(en.s));
        put_u32(os, static_cast<std::uint32_t>(en.e));
        put_u32(os, en.a);
    }
}

AmnesicStore read_dump(std::istream& is) {
    std::array<char, 8> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
        throw Error(ErrorCode::MalformedInput, "not an ABQS store dump (bad magic)");
    }
    AmnesicConfig c;
    c.slots = get_u32(is);
    c.k = get_u32(is);
    c.epsilon = get_f64(is);
    c.m = get_f64(is);
    validate(c);
    std::vector<std::optional<Point>> slots(c.slots);
    for (auto& s : slots) {
        const double t = get_f64(is);
        const double x = get_f64(is);
        const double y = get_f64(is);
        if (!std::isnan(t)) {
            s = Point{t, x, y};
        }
    }
    const std::uint32_t count = get_u32(is);
    if (count > c.slots) {
        throw Error(ErrorCode::MalformedInput, "more index entries than slots");
    }
    std::vector<IndexEntry> index(count);
    for (IndexEntry& en : index) {
        en.s = get_u32(is);
        en.e = get_u32(is);
        en.a = get_u32(is);
    }
    return AmnesicStore::from_parts(c, std::move(slots), std::move(index));
}

// Pipeline ------------------------------------------------------------------

AbqsPipeline::AbqsPipeline(const AmnesicConfig& config)
    : store_(config), front_({config.epsilon, 0.0, Mode::Fast}) {}

bool AbqsPipeline::push(const Point& p) {
    if (auto key = front_.push(p)) {
        store_.insert(*key);
        ++keys_;
        return true;
    }
    return false;
}

void AbqsPipeline::finish() {
    if (auto key = front_.finish()) {
        store_.insert(*key);
        ++keys_;
    }
}

CompressedTrajectory overwrite_storage(const CompressedTrajectory& keys, std::size_t slots) {
    if (slots < 2) {
        throw Error(ErrorCode::InvalidConfig, "overwrite storage needs at least 2 slots");
    }
    if (keys.size() <= slots) {
        return keys;
    }
    CompressedTrajectory out;
    out.keys.assign(keys.keys.begin(), keys.keys.begin() + static_cast<std::ptrdiff_t>(slots - 1));
    out.keys.push_back(keys.keys.back());
    return out;
}

// Storyboard ----------------------------------------------------------------

namespace {

// Staircase of 20 m legs, sampled every 10 m so each leg has a midpoint.
// Timestamps count from 1 and double as point ids.
std::vector<Point> staircase(std::size_t n) {
    std::vector<Point> out;
    double x = 0.0;
    double y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({static_cast<double>(i + 1), x, y});
        // Legs alternate east and north, two samples each.
        if ((i / 2) % 2 == 0) {
            x += 10.0;
        } else {
            y += 10.0;
        }
    }
    return out;
}

StoryFrame frame_of(const AmnesicStore& store, std::string event, std::size_t inserted) {
    StoryFrame f;
    f.event = std::move(event);
    f.inserted = inserted;
    f.index = store.index();
    f.threshold = store.threshold();
    for (auto it = f.index.rbegin(); it != f.index.rend(); ++it) {
        const auto& first = store.slots()[it->s];
        const auto& last = store.slots()[it->e];
        std::ostringstream label;
        label << '<' << last->t << '-' << first->t << ',' << store.tolerance(it->a) << '>';
        f.labels.push_back(label.str());
    }
    return f;
}

} // namespace

Storyboard storyboard_scenario(std::size_t points) {
    Storyboard board;
    board.config = {16, 4, 2.0, 5.0};
    AmnesicStore store(board.config);
    std::size_t inserted = 0;
    store.set_observer([&](const AmnesicStore& s, AmnesicStore::Event event, unsigned age) {
        if (event == AmnesicStore::Event::Compressed) {
            board.frames.push_back(frame_of(
                s, "age " + std::to_string(age) + "->" + std::to_string(age + 1), inserted));
        } else if (age == 0) {
            board.frames.push_back(frame_of(s, "full", inserted));
        }
    });
    for (const Point& p : staircase(points)) {
        ++inserted;
        store.insert(p);
    }
    board.frames.push_back(frame_of(store, "final", inserted));
    return board;
}

} // namespace bqs
