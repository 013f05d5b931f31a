#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graph.hpp"

namespace ssp {

// Ticks are abstract non-negative integers. "Never participated" is
// represented by the absence of a record, not by a sentinel tick.
using Tick = std::uint64_t;

using CascadeIdx = std::uint32_t;

struct Participation {
    NodeId node;
    Tick tick;
};

struct IndexEntry {
    CascadeIdx cascade;
    Tick tick;
};

struct CascadeRecord {
    std::uint64_t cascade;  // external cascade id
    ExternalId node;        // external node id
    Tick tick;
};

enum class UnknownNodePolicy { Reject, Drop };

struct CascadeLoadStats {
    std::uint64_t dropped_records = 0;
    std::uint64_t duplicates_collapsed = 0;
};

struct CascadeStats {
    std::uint64_t size;
    Tick start;
    Tick peak_time;
};

// Per-cascade participation events plus a node -> (cascade, tick) inverted
// index. Immutable after build; duplicate (cascade, node) records collapse to
// the earliest tick. Cascades are ordered by ascending external id.
class CascadeLog {
public:
    CascadeLog() = default;

    static CascadeLog build(const Graph& graph, std::vector<CascadeRecord> records,
                            UnknownNodePolicy policy = UnknownNodePolicy::Reject,
                            CascadeLoadStats* stats = nullptr);

    std::uint32_t cascade_count() const { return static_cast<std::uint32_t>(starts_.size()); }
    std::uint32_t node_count() const { return node_count_; }

    std::uint64_t size(CascadeIdx c) const { return offsets_[c + 1] - offsets_[c]; }
    Tick start_time(CascadeIdx c) const { return starts_[c]; }
    std::uint64_t external_cascade_id(CascadeIdx c) const { return external_[c]; }

    // Events of one cascade, sorted by (tick, node).
    std::span<const Participation> events(CascadeIdx c) const {
        return {events_.data() + offsets_[c], events_.data() + offsets_[c + 1]};
    }
    // All (cascade, tick) participations of one node.
    std::span<const IndexEntry> participations(NodeId u) const {
        return {index_.data() + index_offsets_[u], index_.data() + index_offsets_[u + 1]};
    }

    std::uint64_t total_participations() const { return events_.size(); }
    Tick max_tick() const { return max_tick_; }

    // Peak time: start tick of the earliest width-sized bucket (anchored at
    // the cascade start) holding the maximum number of participations.
    CascadeStats stats(CascadeIdx c, Tick bucket_width) const;

    void write_tsv(const std::string& path, const Graph& graph) const;

    // New log containing only cascades whose start tick lies in
    // [from, to), with events truncated to ticks < to.
    CascadeLog window(Tick from, Tick to, const Graph& graph) const;

private:
    std::uint32_t node_count_ = 0;
    std::vector<std::uint64_t> external_;    // cascade idx -> external id
    std::vector<Tick> starts_;
    std::vector<std::size_t> offsets_;       // CSR into events_
    std::vector<Participation> events_;
    std::vector<std::size_t> index_offsets_; // CSR into index_, per node
    std::vector<IndexEntry> index_;
    Tick max_tick_ = 0;
};

// Reads "cascade \t node \t tick" lines. Unknown nodes are handled per
// policy; negative or malformed ticks raise input_error with the line number.
CascadeLog load_cascades(const std::string& path, const Graph& graph,
                         UnknownNodePolicy policy = UnknownNodePolicy::Reject,
                         CascadeLoadStats* stats = nullptr);

}  // namespace ssp
