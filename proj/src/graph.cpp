#include "graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "tsv.hpp"

namespace ssp {

Graph Graph::build(std::vector<ExternalId> nodes,
                   const std::vector<std::pair<ExternalId, ExternalId>>& edges,
                   const std::vector<std::pair<ExternalId, double>>& activity,
                   bool directed, GraphLoadStats* stats) {
    GraphLoadStats local;
    GraphLoadStats& st = stats ? *stats : local;

    for (const auto& [s, d] : edges) {
        nodes.push_back(s);
        nodes.push_back(d);
    }
    for (const auto& [n, a] : activity) nodes.push_back(n);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    Graph g;
    g.directed_ = directed;
    g.external_ = std::move(nodes);
    g.lookup_.reserve(g.external_.size());
    for (NodeId i = 0; i < g.external_.size(); ++i) g.lookup_.emplace(g.external_[i], i);

    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(edges.size() * (directed ? 1 : 2));
    std::vector<std::pair<NodeId, NodeId>> unique_edges;
    unique_edges.reserve(edges.size());
    for (const auto& [se, de] : edges) {
        NodeId s = g.lookup_.at(se);
        NodeId d = g.lookup_.at(de);
        if (s == d) {
            ++st.self_loops_skipped;
            continue;
        }
        if (directed) {
            unique_edges.emplace_back(s, d);
        } else {
            unique_edges.emplace_back(std::min(s, d), std::max(s, d));
        }
    }
    std::sort(unique_edges.begin(), unique_edges.end());
    auto last = std::unique(unique_edges.begin(), unique_edges.end());
    st.duplicate_edges += static_cast<std::uint64_t>(unique_edges.end() - last);
    unique_edges.erase(last, unique_edges.end());
    g.edge_count_ = unique_edges.size();

    for (const auto& [s, d] : unique_edges) {
        arcs.emplace_back(s, d);
        if (!directed) arcs.emplace_back(d, s);
    }
    std::sort(arcs.begin(), arcs.end());

    g.offsets_.assign(g.external_.size() + 1, 0);
    for (const auto& [s, d] : arcs) ++g.offsets_[s + 1];
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.adj_.reserve(arcs.size());
    for (const auto& [s, d] : arcs) g.adj_.push_back(d);

    g.activity_.assign(g.external_.size(), 0.0);
    for (const auto& [n, a] : activity) {
        if (a < 0) throw input_error("negative activity for node " + std::to_string(n));
        g.activity_[g.lookup_.at(n)] = a;
    }
    return g;
}

double Graph::mean_degree() const {
    if (external_.empty()) return 0.0;
    return static_cast<double>(adj_.size()) / static_cast<double>(external_.size());
}

std::optional<NodeId> Graph::find(ExternalId ext) const {
    auto it = lookup_.find(ext);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

Graph Graph::with_activity(std::vector<double> activity) const {
    if (activity.size() != external_.size())
        throw param_error("activity vector size does not match node count");
    Graph g = *this;
    g.activity_ = std::move(activity);
    return g;
}

void Graph::write_tsv(const std::string& edge_path, const std::string& attr_path) const {
    std::ofstream ef(edge_path);
    if (!ef) throw input_error("cannot open for writing: " + edge_path);
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : neighbors(u)) {
            if (!directed_ && v < u) continue;
            ef << external_[u] << '\t' << external_[v] << '\n';
        }
    }
    std::ofstream af(attr_path);
    if (!af) throw input_error("cannot open for writing: " + attr_path);
    for (NodeId u = 0; u < node_count(); ++u)
        af << external_[u] << '\t' << format_double(activity_[u]) << '\n';
}

Graph load_graph(const std::string& edge_path, const std::optional<std::string>& attr_path,
                 bool directed, GraphLoadStats* stats) {
    std::vector<std::pair<ExternalId, ExternalId>> edges;
    for_each_tsv_line(edge_path, [&](std::size_t line_no, std::span<const std::string_view> fields) {
        if (fields.size() != 2)
            throw input_error(edge_path + ":" + std::to_string(line_no) +
                              ": expected 2 tab-separated fields");
        edges.emplace_back(parse_u64(fields[0], edge_path, line_no),
                           parse_u64(fields[1], edge_path, line_no));
    });

    std::vector<std::pair<ExternalId, double>> activity;
    if (attr_path) {
        for_each_tsv_line(*attr_path,
                          [&](std::size_t line_no, std::span<const std::string_view> fields) {
                              if (fields.size() != 2)
                                  throw input_error(*attr_path + ":" + std::to_string(line_no) +
                                                    ": expected 2 tab-separated fields");
                              activity.emplace_back(parse_u64(fields[0], *attr_path, line_no),
                                                    parse_double(fields[1], *attr_path, line_no));
                          });
    }
    return Graph::build({}, edges, activity, directed, stats);
}

}  // namespace ssp
