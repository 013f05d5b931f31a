#include "cascades.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "errors.hpp"
#include "tsv.hpp"

namespace ssp {

CascadeLog CascadeLog::build(const Graph& graph, std::vector<CascadeRecord> records,
                             UnknownNodePolicy policy, CascadeLoadStats* stats) {
    CascadeLoadStats local;
    CascadeLoadStats& st = stats ? *stats : local;

    // external cascade id -> node -> earliest tick
    std::map<std::uint64_t, std::map<NodeId, Tick>> collapsed;
    for (const auto& rec : records) {
        auto node = graph.find(rec.node);
        if (!node) {
            if (policy == UnknownNodePolicy::Reject)
                throw input_error("cascade record names unknown node " + std::to_string(rec.node));
            ++st.dropped_records;
            continue;
        }
        auto [it, inserted] = collapsed[rec.cascade].try_emplace(*node, rec.tick);
        if (!inserted) {
            ++st.duplicates_collapsed;
            it->second = std::min(it->second, rec.tick);
        }
    }

    CascadeLog log;
    log.node_count_ = graph.node_count();
    log.offsets_.push_back(0);
    for (auto& [ext_id, members] : collapsed) {
        log.external_.push_back(ext_id);
        Tick start = UINT64_MAX;
        for (auto& [node, tick] : members) start = std::min(start, tick);
        log.starts_.push_back(start);
        std::vector<Participation> ev;
        ev.reserve(members.size());
        for (auto& [node, tick] : members) ev.push_back({node, tick});
        std::sort(ev.begin(), ev.end(), [](const Participation& a, const Participation& b) {
            return a.tick != b.tick ? a.tick < b.tick : a.node < b.node;
        });
        for (const auto& p : ev) {
            log.events_.push_back(p);
            log.max_tick_ = std::max(log.max_tick_, p.tick);
        }
        log.offsets_.push_back(log.events_.size());
    }

    // Inverted index, grouped by node, ordered by (cascade, tick).
    log.index_offsets_.assign(graph.node_count() + 1, 0);
    for (const auto& p : log.events_) ++log.index_offsets_[p.node + 1];
    for (std::size_t i = 1; i < log.index_offsets_.size(); ++i)
        log.index_offsets_[i] += log.index_offsets_[i - 1];
    log.index_.resize(log.events_.size());
    std::vector<std::size_t> cursor(log.index_offsets_.begin(), log.index_offsets_.end() - 1);
    for (CascadeIdx c = 0; c < log.cascade_count(); ++c) {
        for (const auto& p : log.events(c)) log.index_[cursor[p.node]++] = {c, p.tick};
    }
    return log;
}

CascadeStats CascadeLog::stats(CascadeIdx c, Tick bucket_width) const {
    if (c >= cascade_count()) throw param_error("unknown cascade index " + std::to_string(c));
    if (bucket_width < 1) throw param_error("bucket width must be >= 1");
    const Tick start = starts_[c];
    std::uint64_t best_count = 0;
    Tick best_bucket = 0;
    std::uint64_t run_count = 0;
    Tick run_bucket = 0;
    for (const auto& p : events(c)) {
        const Tick bucket = (p.tick - start) / bucket_width;
        if (run_count > 0 && bucket == run_bucket) {
            ++run_count;
        } else {
            run_bucket = bucket;
            run_count = 1;
        }
        if (run_count > best_count) {  // strict: earliest bucket wins ties
            best_count = run_count;
            best_bucket = run_bucket;
        }
    }
    return {size(c), start, start + best_bucket * bucket_width};
}

void CascadeLog::write_tsv(const std::string& path, const Graph& graph) const {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open for writing: " + path);
    for (CascadeIdx c = 0; c < cascade_count(); ++c) {
        for (const auto& p : events(c))
            out << external_[c] << '\t' << graph.external_id(p.node) << '\t' << p.tick << '\n';
    }
}

CascadeLog CascadeLog::window(Tick from, Tick to, const Graph& graph) const {
    std::vector<CascadeRecord> records;
    for (CascadeIdx c = 0; c < cascade_count(); ++c) {
        if (starts_[c] < from || starts_[c] >= to) continue;
        for (const auto& p : events(c)) {
            if (p.tick >= to) break;
            records.push_back({external_[c], graph.external_id(p.node), p.tick});
        }
    }
    return build(graph, std::move(records));
}

CascadeLog load_cascades(const std::string& path, const Graph& graph, UnknownNodePolicy policy,
                         CascadeLoadStats* stats) {
    std::vector<CascadeRecord> records;
    for_each_tsv_line(path, [&](std::size_t line_no, std::span<const std::string_view> fields) {
        if (fields.size() != 3)
            throw input_error(path + ":" + std::to_string(line_no) +
                              ": expected 3 tab-separated fields");
        records.push_back({parse_u64(fields[0], path, line_no), parse_u64(fields[1], path, line_no),
                           parse_u64(fields[2], path, line_no)});
    });
    return CascadeLog::build(graph, std::move(records), policy, stats);
}

}  // namespace ssp
