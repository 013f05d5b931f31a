#include "sensorplace.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "cascades.hpp"
#include "errors.hpp"
#include "eval.hpp"
#include "graph.hpp"
#include "sampling_math.hpp"
#include "samplers.hpp"
#include "selectors.hpp"
#include "synthgen.hpp"

using nlohmann::json;

struct ssp_graph {
    ssp::Graph graph;
};

struct ssp_cascades {
    ssp::CascadeLog log;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
ssp_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SSP_OK;
    } catch (const ssp::param_error& e) {
        g_last_error = e.what();
        return SSP_ERROR_PARAM;
    } catch (const ssp::input_error& e) {
        g_last_error = e.what();
        return SSP_ERROR_INPUT;
    } catch (const json::exception& e) {
        g_last_error = e.what();
        return SSP_ERROR_PARAM;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SSP_ERROR_RUNTIME;
    }
}

ssp::MethodSpec method_from_json(const json& j) {
    ssp::MethodSpec method = ssp::MethodSpec::parse(j.at("method").get<std::string>());
    if (j.contains("bias")) method.bias = ssp::parse_bias(j.at("bias").get<std::string>());
    if (j.contains("candidates")) method.candidate_budget = j.at("candidates").get<std::uint32_t>();
    if (j.contains("xi")) method.candidate_size = j.at("xi").get<std::uint32_t>();
    if (j.contains("p")) method.p = j.at("p").get<double>();
    if (j.contains("alpha")) method.alpha = j.at("alpha").get<double>();
    if (j.contains("ncap")) method.neighbor_cap = j.at("ncap").get<std::uint32_t>();
    if (j.contains("memoize")) method.memoize = j.at("memoize").get<bool>();
    return method;
}

}  // namespace

extern "C" {

const char* ssp_version(void) { return "0.1.0"; }

const char* ssp_last_error(void) { return g_last_error.c_str(); }

void ssp_string_free(char* s) { delete[] s; }

ssp_status ssp_graph_load(const char* edge_path, const char* attr_path_or_null, int directed,
                          ssp_graph** out) {
    return guarded([&] {
        if (!edge_path || !out) throw ssp::param_error("null argument");
        std::optional<std::string> attrs;
        if (attr_path_or_null) attrs = attr_path_or_null;
        auto graph = ssp::load_graph(edge_path, attrs, directed != 0);
        *out = new ssp_graph{std::move(graph)};
    });
}

ssp_status ssp_graph_generate(const char* spec_json, ssp_graph** out) {
    return guarded([&] {
        if (!spec_json || !out) throw ssp::param_error("null argument");
        const json j = json::parse(spec_json);
        ssp::PowerLawSpec spec;
        spec.node_count = j.at("nodes").get<std::uint32_t>();
        spec.exponent = j.value("exponent", 2.5);
        spec.max_degree = j.value("max_degree", 100u);
        spec.seed = j.value("seed", 0ull);
        *out = new ssp_graph{ssp::generate_graph(spec)};
    });
}

ssp_status ssp_graph_write(const ssp_graph* graph, const char* edge_path, const char* attr_path) {
    return guarded([&] {
        if (!graph || !edge_path || !attr_path) throw ssp::param_error("null argument");
        graph->graph.write_tsv(edge_path, attr_path);
    });
}

uint64_t ssp_graph_node_count(const ssp_graph* graph) {
    return graph ? graph->graph.node_count() : 0;
}

uint64_t ssp_graph_edge_count(const ssp_graph* graph) {
    return graph ? graph->graph.edge_count() : 0;
}

ssp_status ssp_graph_derive_activity(const ssp_graph* graph, const ssp_cascades* cascades,
                                     ssp_graph** out) {
    return guarded([&] {
        if (!graph || !cascades || !out) throw ssp::param_error("null argument");
        *out = new ssp_graph{
            graph->graph.with_activity(ssp::participation_activity(graph->graph, cascades->log))};
    });
}

void ssp_graph_free(ssp_graph* graph) { delete graph; }

ssp_status ssp_cascades_load(const char* path, const ssp_graph* graph, const char* policy,
                             ssp_cascades** out, uint64_t* dropped_out) {
    return guarded([&] {
        if (!path || !graph || !out) throw ssp::param_error("null argument");
        ssp::UnknownNodePolicy p = ssp::UnknownNodePolicy::Reject;
        if (policy && std::string(policy) == "drop")
            p = ssp::UnknownNodePolicy::Drop;
        else if (policy && std::string(policy) != "reject")
            throw ssp::param_error("policy must be 'reject' or 'drop'");
        ssp::CascadeLoadStats stats;
        auto log = ssp::load_cascades(path, graph->graph, p, &stats);
        if (dropped_out) *dropped_out = stats.dropped_records;
        *out = new ssp_cascades{std::move(log)};
    });
}

ssp_status ssp_cascades_generate(const ssp_graph* graph, const char* spec_json,
                                 ssp_cascades** out) {
    return guarded([&] {
        if (!graph || !spec_json || !out) throw ssp::param_error("null argument");
        const json j = json::parse(spec_json);
        ssp::DiffusionSpec spec;
        spec.cascade_count = j.at("cascades").get<std::uint32_t>();
        const std::string rule = j.value("seed_rule", std::string("uniform"));
        if (rule == "uniform")
            spec.seed_rule = ssp::SeedRule::Uniform;
        else if (rule == "degree")
            spec.seed_rule = ssp::SeedRule::DegreeBiased;
        else
            throw ssp::param_error("seed_rule must be 'uniform' or 'degree'");
        spec.transmit_prob = j.value("transmit_prob", 0.1);
        spec.delay_q = j.value("delay_q", 0.5);
        spec.horizon = j.value("horizon", 1000ull);
        spec.seed = j.value("seed", 0ull);
        *out = new ssp_cascades{ssp::generate_cascades(graph->graph, spec)};
    });
}

ssp_status ssp_cascades_write(const ssp_cascades* cascades, const ssp_graph* graph,
                              const char* path) {
    return guarded([&] {
        if (!cascades || !graph || !path) throw ssp::param_error("null argument");
        cascades->log.write_tsv(path, graph->graph);
    });
}

uint64_t ssp_cascades_count(const ssp_cascades* cascades) {
    return cascades ? cascades->log.cascade_count() : 0;
}

void ssp_cascades_free(ssp_cascades* cascades) { delete cascades; }

ssp_status ssp_min_candidate_size(double p, double alpha, uint32_t* xi, double* achieved) {
    return guarded([&] {
        const auto spec = ssp::min_candidate_size(p, alpha);
        if (xi) *xi = spec.xi;
        if (achieved) *achieved = spec.achieved_prob;
    });
}

ssp_status ssp_prob_at_least_one(double alpha, uint64_t draw, double* out) {
    return guarded([&] {
        if (!out) throw ssp::param_error("null argument");
        *out = ssp::prob_at_least_one(alpha, draw);
    });
}

ssp_status ssp_prob_overlap_at_least(uint64_t population, uint64_t top, uint64_t draw, uint64_t k,
                                     double* out) {
    return guarded([&] {
        if (!out) throw ssp::param_error("null argument");
        *out = ssp::prob_overlap_at_least(population, top, draw, k);
    });
}

ssp_status ssp_cover_ratio_lower_bound(double p, double* out) {
    return guarded([&] {
        if (!out) throw ssp::param_error("null argument");
        *out = ssp::cover_ratio_lower_bound(p);
    });
}

ssp_status ssp_select(const ssp_graph* graph, const ssp_cascades* cascades,
                      const char* config_json, char** result_json) {
    return guarded([&] {
        if (!graph || !cascades || !config_json || !result_json)
            throw ssp::param_error("null argument");
        const json j = json::parse(config_json);
        const ssp::MethodSpec method = method_from_json(j);
        const auto budget = j.at("budget").get<std::uint32_t>();
        const auto seed = j.value("seed", 0ull);
        auto outcome = ssp::run_method(graph->graph, cascades->log, method, budget, seed);
        json result = json::parse(ssp::to_json(outcome.selection, graph->graph));
        result["method"] = method.label();
        result["build_cost"] = outcome.build_cost;
        result["total_cost"] = outcome.total_cost();
        *result_json = dup_string(result.dump(2));
    });
}

ssp_status ssp_evaluate(const ssp_graph* graph, const ssp_cascades* cascades,
                        const char* config_json, char** report_json) {
    return guarded([&] {
        if (!graph || !cascades || !config_json || !report_json)
            throw ssp::param_error("null argument");
        const json j = json::parse(config_json);
        const auto bucket_width = j.value("bucket_width", 1ull);
        const auto seed = j.value("seed", 0ull);
        json report;

        std::vector<ssp::NodeId> universe;
        if (j.contains("regularize")) {
            const json& reg = j.at("regularize");
            universe = ssp::regularize_universe(
                cascades->log, ssp::parse_regularize_rule(reg.at("rule").get<std::string>()),
                reg.at("threshold").get<double>(), reg.value("day_width", 1ull));
            report["universe_size"] = universe.size();
        }

        if (j.contains("split")) {
            if (!j.contains("method"))
                throw ssp::param_error("prediction runs need a 'method'");
            const json& s = j.at("split");
            ssp::TemporalSplit split;
            split.window_width = s.at("window_width").get<std::uint64_t>();
            split.train_begin = s.at("train_begin").get<std::uint32_t>();
            split.train_end = s.at("train_end").get<std::uint32_t>();
            split.test_window = s.at("test_window").get<std::uint32_t>();
            const auto method = method_from_json(j);
            const auto budget = j.at("budget").get<std::uint32_t>();
            const auto r = ssp::prediction_run(graph->graph, cascades->log, split, method, budget,
                                               seed, bucket_width);
            report["mode"] = "prediction";
            report["method"] = r.method;
            report["budget"] = r.budget;
            report["seed"] = r.seed;
            report["test_reward"] = r.reward;
            report["reward_ratio_vs_greedy"] = r.reward_ratio_vs_greedy;
            report["gain_evals"] = r.gain_evals;
            report["speedup"] = r.speedup;
            report["detects"] = r.detects;
            report["mean_lead_time"] = r.mean_lead_time;
            report["cover_ratio"] = r.cover_ratio;
            *report_json = dup_string(report.dump(2));
            return;
        }

        std::vector<ssp::NodeId> sensors;
        if (j.contains("sensors")) {
            for (const auto& ext : j.at("sensors")) {
                auto node = graph->graph.find(ext.get<std::uint64_t>());
                if (!node)
                    throw ssp::param_error("sensor id not in graph: " + ext.dump());
                sensors.push_back(*node);
            }
            report["method"] = "given";
        } else if (j.contains("method")) {
            const auto method = method_from_json(j);
            const auto budget = j.at("budget").get<std::uint32_t>();
            auto outcome = ssp::run_method(graph->graph, cascades->log, method, budget, seed,
                                           universe);
            sensors = outcome.selection.sensors;
            report["method"] = method.label();
            report["gain_evals"] = outcome.total_cost();
        } else {
            throw ssp::param_error("evaluate needs 'sensors' or 'method'");
        }
        const auto metrics = ssp::detection_metrics(sensors, cascades->log, bucket_width);
        ssp::SelectionState state(cascades->log);
        for (ssp::NodeId u : sensors) state.commit(u);
        report["mode"] = "detection";
        report["seed"] = seed;
        report["bucket_width"] = bucket_width;
        report["sensor_count"] = sensors.size();
        report["reward"] = state.total_reward();
        report["detects"] = metrics.detects;
        report["mean_lead_time"] = metrics.mean_lead_time;
        json sensor_ids = json::array();
        for (ssp::NodeId u : sensors) sensor_ids.push_back(graph->graph.external_id(u));
        report["sensors"] = std::move(sensor_ids);
        *report_json = dup_string(report.dump(2));
    });
}

ssp_status ssp_bench(const ssp_graph* graph, const ssp_cascades* cascades,
                     const char* config_json, char** csv_out, char** json_out) {
    return guarded([&] {
        if (!graph || !cascades || !config_json || !csv_out || !json_out)
            throw ssp::param_error("null argument");
        const json j = json::parse(config_json);
        ssp::BenchConfig config;
        for (const auto& m : j.at("methods")) {
            if (m.is_string())
                config.methods.push_back(ssp::MethodSpec::parse(m.get<std::string>()));
            else
                config.methods.push_back(method_from_json(m));
        }
        config.budget = j.at("budget").get<std::uint32_t>();
        config.replications = j.value("replications", 1u);
        if (j.contains("seeds")) config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (j.contains("seed")) config.seeds = {j.at("seed").get<std::uint64_t>()};
        config.bucket_width = j.value("bucket_width", 1ull);
        config.jobs = j.value("jobs", 1u);
        const auto output = ssp::bench(graph->graph, cascades->log, config);
        *csv_out = dup_string(output.csv);
        *json_out = dup_string(output.json);
    });
}

}  // extern "C"
