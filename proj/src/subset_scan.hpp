#pragma once

// Internal subset-scan engine shared by the verifier and the code
// distance search. Finds subsets {seed rows} ∪ {c_1 < ... < c_extra} of
// the candidate rows, either with rank <= cap ("flat mode") or
// containing a linear dependency at any depth ("circuit mode"). Work is
// fanned out over the first chosen index; the reported witness is the
// first one in enumeration order, independent of scheduling.

#include <atomic>
#include <climits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "evgeom/geometry.hpp"
#include "evgeom/verify.hpp"

namespace evgeom::detail {


struct ScanSpec {
    const Gf* gf = nullptr;
    int width = 0;
    std::vector<const std::uint8_t*> seeds;
    std::vector<const std::uint8_t*> rows;
    int extra = 0;
    int cap = 0;
    bool circuit_mode = false;
};

struct ScanOutcome {
    bool found = false;
    std::vector<int> witness;  // candidate indices, ascending
    u64 nodes = 0;             // row insertions
    u64 hits = 0;              // census: hypothesis subsets seen
};

struct ScanShared {
    std::atomic<u64> nodes{0};
    std::atomic<u64> hits{0};
    std::atomic<int> next_chunk{0};
    std::atomic<int> best_chunk{INT_MAX};
    std::atomic<bool> out_of_budget{false};
    u64 budget = 0;
    bool census = false;
};

class ChunkScan {
public:
    ChunkScan(const ScanSpec& spec, ScanShared& shared)
        : spec_(spec), shared_(shared), ech_(*spec.gf, spec.width) {
        for (const auto* s : spec.seeds) {
            bump();
            ech_.push(s);
        }
    }

    // Scans the subtree whose first chosen index is `c`. Returns the
    // first witness in this chunk, if any.
    std::optional<std::vector<int>> run(int c) {
        found_.reset();
        chosen_.clear();
        chunk_id_ = c;
        enter(c, spec_.extra - 1);
        flush();
        return found_;
    }

private:
    bool aborted() const {
        return shared_.out_of_budget.load(std::memory_order_relaxed) ||
               (!shared_.census && shared_.best_chunk.load(std::memory_order_relaxed) < chunk_id_);
    }

    void bump() {
        if (++local_nodes_ >= 4096) flush();
    }

    void flush() {
        if (local_nodes_) {
            u64 total = shared_.nodes.fetch_add(local_nodes_) + local_nodes_;
            local_nodes_ = 0;
            if (shared_.budget && total > shared_.budget) shared_.out_of_budget.store(true);
        }
        if (local_hits_) {
            shared_.hits.fetch_add(local_hits_);
            local_hits_ = 0;
        }
    }

    void record_hit() {
        ++local_hits_;
        if (!found_) {
            found_ = chosen_;
        }
    }

    // Pushes candidate index i and, if the subset survives, recurses for
    // `remaining` more elements. Returns true when the scan of this
    // branch should stop (witness found in non-census mode, or abort).
    bool enter(int i, int remaining) {
        if (shared_.out_of_budget.load(std::memory_order_relaxed)) return true;
        bump();
        bool grew = ech_.push(spec_.rows[i]);
        chosen_.push_back(i);
        bool stop = false;
        if (spec_.circuit_mode) {
            if (!grew) {
                record_hit();
                stop = !shared_.census;
            } else if (remaining > 0) {
                stop = descend(i + 1, remaining);
            }
        } else {
            if (ech_.rank() <= spec_.cap) {
                if (remaining == 0) {
                    record_hit();
                    stop = !shared_.census;
                } else {
                    stop = descend(i + 1, remaining);
                }
            }
        }
        chosen_.pop_back();
        if (grew) ech_.pop();
        return stop;
    }

    bool descend(int start, int remaining) {
        const int n = static_cast<int>(spec_.rows.size());
        for (int i = start; i <= n - remaining; ++i) {
            if (aborted()) return true;
            if (enter(i, remaining - 1)) return true;
        }
        return false;
    }

    const ScanSpec& spec_;
    ScanShared& shared_;
    Echelon ech_;
    std::vector<int> chosen_;
    std::optional<std::vector<int>> found_;
    int chunk_id_ = 0;
    u64 local_nodes_ = 0, local_hits_ = 0;
};

inline ScanOutcome run_scan(const ScanSpec& spec, const VerifyOptions& opts) {
    ScanOutcome out;
    const int n = static_cast<int>(spec.rows.size());
    if (spec.extra <= 0 || n < spec.extra) {
        // Nothing to choose; only meaningful for degenerate calls.
        return out;
    }
    ScanShared shared;
    shared.budget = opts.budget;
    shared.census = opts.census;
    const int last_first = n - spec.extra;  // largest admissible first index

    int threads = opts.threads > 0 ? opts.threads
                                   : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, last_first + 1);

    std::vector<std::optional<std::vector<int>>> chunk_witness(last_first + 1);
    std::mutex witness_mu;

    auto worker = [&]() {
        ChunkScan scan(spec, shared);
        while (true) {
            int c = shared.next_chunk.fetch_add(1);
            if (c > last_first) break;
            if (shared.out_of_budget.load(std::memory_order_relaxed)) break;
            if (!opts.census && shared.best_chunk.load(std::memory_order_relaxed) < c) break;
            auto w = scan.run(c);
            if (w) {
                std::lock_guard<std::mutex> lock(witness_mu);
                chunk_witness[c] = std::move(*w);
                int prev = shared.best_chunk.load();
                while (c < prev && !shared.best_chunk.compare_exchange_weak(prev, c)) {
                }
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    out.nodes = shared.nodes.load();
    out.hits = shared.hits.load();
    if (shared.out_of_budget.load()) throw BudgetExceeded("subset scan exceeded the rank-evaluation budget");
    for (int c = 0; c <= last_first; ++c) {
        if (chunk_witness[c]) {
            out.found = true;
            out.witness = *chunk_witness[c];
            break;
        }
    }
    return out;
}


}  // namespace evgeom::detail
