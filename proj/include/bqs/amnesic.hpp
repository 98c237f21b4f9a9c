#pragma once

#include "bqs/compressor.hpp"
#include "bqs/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bqs {

struct AmnesicConfig {
    std::size_t slots = 2400; // N
    std::size_t k = 8;        // slots reserved for incoming age-0 points
    double epsilon = 2.0;     // tolerance of age-0 data
    double m = 2.5;           // tolerance multiplier per generation; must exceed 2
};

/// One generation's region of the slot array, inclusive on both ends.
struct IndexEntry {
    std::size_t s = 0;
    std::size_t e = 0;
    unsigned a = 0;

    friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

struct AgedPoint {
    Point point;
    unsigned age = 0;
    double tolerance = 0.0;
};

/// Fixed-slot storage that ages old data instead of overwriting it.
///
/// Slot 0 is the bottom of the storage. Generations are stored contiguously
/// with the oldest lowest, so slot order is time order; new points go right
/// after the youngest generation. The index lists entries youngest first.
class AmnesicStore {
public:
    explicit AmnesicStore(const AmnesicConfig& config);

    /// Stores p after the youngest data, then ages generations as needed.
    /// Throws TimeOrder unless p is later than the last stored point and
    /// StorageExhausted when no ageing can make room.
    void insert(const Point& p);

    bool trigger() const;

    /// Compresses the youngest generation until trigger() is false.
    void sink();

    /// Re-compresses slots [src_start, src_end] of age `age` to the next
    /// tolerance, writing the survivors from dest_start on. dest_start must
    /// not lie after src_start, which keeps the write cursor behind the read
    /// cursor.
    void compress_generation(std::size_t src_start, std::size_t src_end, unsigned age,
                             std::size_t dest_start);

    /// Index maintenance with -1 sentinels: (-1, -1) removes the entry for
    /// `age`, (-1, e) moves its end only, anything else inserts or replaces.
    void update_index(unsigned age, std::int64_t s, std::int64_t e);

    /// All live points, oldest first, labelled with their generation.
    std::vector<AgedPoint> export_points() const;

    double tolerance(unsigned age) const;

    /// Highest slot the youngest generation may reach before it is aged:
    /// N-1 for age 0, N-k-a otherwise. N-1 when empty.
    std::size_t threshold() const;

    const AmnesicConfig& config() const { return config_; }
    const std::vector<std::optional<Point>>& slots() const { return slots_; }
    const std::vector<IndexEntry>& index() const { return index_; }
    std::size_t live_count() const;
    std::size_t compress_passes() const { return passes_; }

    /// Describes the first broken storage invariant, if any.
    std::optional<std::string> violation() const;

    enum class Event { Triggered, Compressed };

    /// Called with the youngest generation's age when a trigger fires and
    /// again after its compress pass.
    void set_observer(std::function<void(const AmnesicStore&, Event, unsigned)> observer) {
        observer_ = std::move(observer);
    }

    /// Restores a store from its parts, as read back from a dump.
    static AmnesicStore from_parts(const AmnesicConfig& config,
                                   std::vector<std::optional<Point>> slots,
                                   std::vector<IndexEntry> index);

private:
    AmnesicConfig config_;
    std::vector<std::optional<Point>> slots_;
    std::vector<IndexEntry> index_;
    std::optional<double> last_t_;
    std::size_t passes_ = 0;
    std::function<void(const AmnesicStore&, Event, unsigned)> observer_;
};

void abqs_insert(AmnesicStore& store, const Point& p);
bool trigger(const AmnesicStore& store);
void amnesic_sinking(AmnesicStore& store);
void compress_generation(AmnesicStore& store, std::size_t src_start, std::size_t src_end,
                         unsigned age, std::size_t dest_start);
void update_index(AmnesicStore& store, unsigned age, std::int64_t s, std::int64_t e);
std::vector<AgedPoint> export_store(const AmnesicStore& store);

/// Binary dump: magic "ABQS\0\1\0\0", then little-endian u32 N, u32 k,
/// f64 epsilon, f64 m, N slots of (f64 t, f64 x, f64 y) with empty slots as
/// NaN triples, u32 entry count and (u32 s, u32 e, u32 a) per entry.
void write_dump(std::ostream& os, const AmnesicStore& store);
AmnesicStore read_dump(std::istream& is);

/// Streams raw points through a fast compressor at the store's base
/// tolerance and stores every emitted key. Mirrors a tracking device whose
/// sensor pipeline feeds the ageing storage.
class AbqsPipeline {
public:
    explicit AbqsPipeline(const AmnesicConfig& config);

    /// Returns true when the point produced a stored key.
    bool push(const Point& p);
    void finish();

    const AmnesicStore& store() const { return store_; }
    std::size_t keys_stored() const { return keys_; }

private:
    AmnesicStore store_;
    StreamCompressor front_;
    std::size_t keys_ = 0;
};

/// Hard-loss storage of `slots` key points: once full, every further key
/// overwrites the final slot, so the stored history keeps the earliest keys
/// plus the latest one. Throws InvalidConfig for fewer than 2 slots.
CompressedTrajectory overwrite_storage(const CompressedTrajectory& keys, std::size_t slots);

/// One frame of the scripted ageing walkthrough.
struct StoryFrame {
    std::string event;          // "full", "age a->a+1" or "final"
    std::size_t inserted = 0;   // points inserted so far
    std::vector<IndexEntry> index;
    std::vector<std::string> labels; // "<last-first,tolerance>" per entry, bottom first
    std::size_t threshold = 0;
};

struct Storyboard {
    AmnesicConfig config;
    std::vector<StoryFrame> frames; // age-0 data at the trigger, every pass, the final state
};

/// Scripted run on a small store (N=16, k=4, eps=2, m=5) fed with a
/// staircase whose corners survive tolerance 10 but not 50.
Storyboard storyboard_scenario(std::size_t points = 40);

} // namespace bqs
