#include "eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "errors.hpp"
#include "sampling_math.hpp"
#include "tsv.hpp"

namespace ssp {

DetectionMetrics detection_metrics(std::span<const NodeId> sensors, const CascadeLog& log,
                                   Tick bucket_width) {
    DetectionMetrics out;
    if (sensors.empty()) return out;
    // earliest sensor participation per cascade
    std::vector<std::optional<Tick>> first_seen(log.cascade_count());
    for (NodeId s : sensors) {
        for (const auto& entry : log.participations(s)) {
            auto& cur = first_seen[entry.cascade];
            if (!cur || entry.tick < *cur) cur = entry.tick;
        }
    }
    double lead_sum = 0.0;
    for (CascadeIdx c = 0; c < log.cascade_count(); ++c) {
        if (!first_seen[c]) continue;
        ++out.detects;
        const Tick peak = log.stats(c, bucket_width).peak_time;
        const double lead =
            static_cast<double>(peak) - static_cast<double>(*first_seen[c]);
        out.lead_times.push_back(lead);
        lead_sum += lead;
    }
    if (out.detects > 0) out.mean_lead_time = lead_sum / static_cast<double>(out.detects);
    return out;
}

MethodSpec MethodSpec::parse(const std::string& text) {
    MethodSpec spec;
    std::string kind = text;
    std::string bias;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        kind = text.substr(0, colon);
        bias = text.substr(colon + 1);
    }
    if (kind == "greedy")
        spec.kind = Kind::Greedy;
    else if (kind == "lazy")
        spec.kind = Kind::Lazy;
    else if (kind == "framework")
        spec.kind = Kind::Framework;
    else if (kind == "vs")
        spec.kind = Kind::VertexSample;
    else if (kind == "rw")
        spec.kind = Kind::RandomWalk;
    else if (kind == "random")
        spec.kind = Kind::Random;
    else if (kind == "fp")
        spec.kind = Kind::FriendshipParadox;
    else
        throw param_error("unknown method: " + kind);
    if (!bias.empty()) spec.bias = parse_bias(bias);
    return spec;
}

std::string MethodSpec::label() const {
    switch (kind) {
        case Kind::Greedy: return "greedy";
        case Kind::Lazy: return "lazy";
        case Kind::Framework: return "framework";
        case Kind::VertexSample: return "vs:" + bias_name(bias);
        case Kind::RandomWalk: return "rw:" + bias_name(bias);
        case Kind::Random: return "random";
        case Kind::FriendshipParadox: return "fp";
    }
    return "?";
}

namespace {

SelectionResult baseline_as_result(const BaselineResult& base, const CascadeLog& log,
                                   std::string method, std::uint64_t seed) {
    SelectionResult result;
    result.method = std::move(method);
    result.seed = seed;
    result.early_stopped = base.partial;
    SelectionState state(log);
    for (NodeId u : base.sensors) {
        const double before = state.total_reward();
        state.commit(u);
        result.sensors.push_back(u);
        result.per_round_gain.push_back(state.total_reward() - before);
    }
    result.rounds = static_cast<std::uint32_t>(result.sensors.size());
    result.gain_evals = 0;  // baselines never look at gains
    return result;
}

}  // namespace

RunOutcome run_method(const Graph& graph, const CascadeLog& log, const MethodSpec& method,
                      std::uint32_t budget, std::uint64_t seed, std::span<const NodeId> universe) {
    RunOutcome out;
    switch (method.kind) {
        case MethodSpec::Kind::Greedy:
            out.selection = exact_greedy(graph, log, budget, universe);
            return out;
        case MethodSpec::Kind::Lazy:
            out.selection = lazy_greedy(graph, log, budget, universe);
            return out;
        case MethodSpec::Kind::Framework: {
            std::uint32_t xi = method.candidate_size;
            if (xi == 0) {
                double alpha = method.alpha;
                if (alpha <= 0.0)
                    alpha = 100.0 * static_cast<double>(budget) /
                            static_cast<double>(graph.node_count());
                alpha = std::min(alpha, 100.0);
                xi = min_candidate_size(method.p, alpha).xi;
            }
            xi = std::min<std::uint32_t>(xi, graph.node_count());
            FrameworkOptions options;
            options.budget = budget;
            options.memoize = method.memoize;
            options.seed = seed;
            options.method = "framework";
            std::vector<NodeId> pool(universe.begin(), universe.end());
            auto source = uniform_candidate_source(graph, xi, seed, std::move(pool));
            auto seen = std::make_shared<std::set<NodeId>>();
            CandidateSource recording = [source, seen](std::uint32_t round,
                                                       const SelectionState& state) {
                auto candidates = source(round, state);
                seen->insert(candidates.begin(), candidates.end());
                return candidates;
            };
            out.selection = framework_greedy(graph, log, recording, options);
            out.candidate_union.assign(seen->begin(), seen->end());
            return out;
        }
        case MethodSpec::Kind::VertexSample:
        case MethodSpec::Kind::RandomWalk: {
            std::uint32_t candidate_budget = method.candidate_budget;
            if (candidate_budget == 0)
                candidate_budget = std::min<std::uint32_t>(graph.node_count(), 4 * budget);
            CandidateSet candidates;
            if (method.kind == MethodSpec::Kind::VertexSample) {
                VertexSampleOptions options;
                options.candidate_budget = candidate_budget;
                options.bias = method.bias;
                options.neighbor_cap = method.neighbor_cap;
                options.seed = seed;
                candidates = vertex_sample_candidates(graph, log, options);
            } else {
                RandomWalkOptions options;
                options.candidate_budget = candidate_budget;
                options.bias = method.bias;
                options.neighbor_cap = method.neighbor_cap;
                options.seed = seed;
                candidates = random_walk_candidates(graph, log, options);
            }
            std::vector<NodeId> pool = candidates.nodes;
            if (!universe.empty()) {
                std::set<NodeId> allowed(universe.begin(), universe.end());
                std::erase_if(pool, [&](NodeId u) { return !allowed.contains(u); });
            }
            out.build_cost = candidates.build_cost;
            out.candidate_union = candidates.nodes;
            if (pool.empty()) {
                out.selection.method = method.label();
                out.selection.seed = seed;
                out.selection.early_stopped = true;
                out.selection.sampler_exhausted = true;
                return out;
            }
            FrameworkOptions options;
            options.budget = std::min<std::uint32_t>(budget, static_cast<std::uint32_t>(pool.size()));
            options.memoize = true;  // final pick over a fixed pool is plain lazy greedy
            options.seed = seed;
            options.method = method.label();
            auto source = [pool](std::uint32_t, const SelectionState&) { return pool; };
            out.selection = framework_greedy(graph, log, source, options);
            if (out.selection.sensors.size() < budget) out.selection.early_stopped = true;
            return out;
        }
        case MethodSpec::Kind::Random: {
            auto base = random_baseline(graph, std::min<std::uint32_t>(budget, graph.node_count()),
                                        seed);
            out.selection = baseline_as_result(base, log, "random", seed);
            out.candidate_union = out.selection.sensors;
            return out;
        }
        case MethodSpec::Kind::FriendshipParadox: {
            auto base = friendship_paradox_baseline(
                graph, std::min<std::uint32_t>(budget, graph.node_count()), seed);
            out.selection = baseline_as_result(base, log, "fp", seed);
            out.candidate_union = out.selection.sensors;
            return out;
        }
    }
    throw param_error("unhandled method");
}

double measured_cover_ratio(std::span<const NodeId> candidate_union, std::span<const NodeId> opt) {
    if (opt.empty()) throw param_error("cover ratio against an empty optimum");
    std::set<NodeId> in_union(candidate_union.begin(), candidate_union.end());
    std::uint64_t hit = 0;
    for (NodeId u : opt)
        if (in_union.contains(u)) ++hit;
    return static_cast<double>(hit) / static_cast<double>(opt.size());
}

ExperimentReport prediction_run(const Graph& graph, const CascadeLog& log,
                                const TemporalSplit& split, const MethodSpec& method,
                                std::uint32_t budget, std::uint64_t seed, Tick bucket_width) {
    if (split.window_width < 1) throw param_error("window width must be >= 1");
    if (split.train_begin > split.train_end) throw param_error("empty train range");
    if (split.test_window >= split.train_begin && split.test_window <= split.train_end)
        throw param_error("test window overlaps the train range");

    const Tick w = split.window_width;
    CascadeLog train = log.window(split.train_begin * w, (split.train_end + 1) * w, graph);
    if (train.cascade_count() == 0) throw param_error("train windows contain no cascades");
    CascadeLog test = log.window(split.test_window * w, (split.test_window + 1) * w, graph);

    RunOutcome outcome = run_method(graph, train, method, budget, seed);
    RunOutcome greedy_outcome = run_method(graph, train, MethodSpec{}, budget, seed);

    ExperimentReport report;
    report.method = method.label();
    report.seed = seed;
    report.budget = budget;
    SelectionState test_state(test);
    for (NodeId u : outcome.selection.sensors) test_state.commit(u);
    report.reward = test_state.total_reward();
    SelectionState greedy_test_state(test);
    for (NodeId u : greedy_outcome.selection.sensors) greedy_test_state.commit(u);
    const double greedy_test_reward = greedy_test_state.total_reward();
    report.reward_ratio_vs_greedy =
        greedy_test_reward > 0.0 ? report.reward / greedy_test_reward : 1.0;
    report.gain_evals = outcome.total_cost();
    const double denom = static_cast<double>(std::max<std::uint64_t>(1, outcome.total_cost()));
    report.speedup = static_cast<double>(greedy_outcome.total_cost()) / denom;
    const auto detection = detection_metrics(outcome.selection.sensors, test, bucket_width);
    report.detects = detection.detects;
    report.mean_lead_time = detection.mean_lead_time;
    if (!greedy_outcome.selection.sensors.empty()) {
        const auto& cover_base = outcome.candidate_union.empty() ? outcome.selection.sensors
                                                                 : outcome.candidate_union;
        report.cover_ratio = measured_cover_ratio(cover_base, greedy_outcome.selection.sensors);
    }
    return report;
}

RegularizeRule parse_regularize_rule(const std::string& name) {
    if (name == "min_cascades_per_window") return RegularizeRule::MinCascadesPerWindow;
    if (name == "min_active_days_per_window") return RegularizeRule::MinActiveDaysPerWindow;
    if (name == "min_cascades_per_day") return RegularizeRule::MinCascadesPerDay;
    throw param_error("unknown regularization rule: " + name);
}

std::vector<NodeId> regularize_universe(const CascadeLog& log, RegularizeRule rule, double threshold,
                                        Tick day_width) {
    if (threshold < 0.0) throw param_error("threshold must be >= 0");
    if (day_width < 1) throw param_error("day width must be >= 1");
    std::vector<NodeId> keep;
    for (NodeId u = 0; u < log.node_count(); ++u) {
        const auto part = log.participations(u);
        if (part.empty()) continue;
        double value = 0.0;
        switch (rule) {
            case RegularizeRule::MinCascadesPerWindow:
                value = static_cast<double>(part.size());
                break;
            case RegularizeRule::MinActiveDaysPerWindow:
            case RegularizeRule::MinCascadesPerDay: {
                std::set<Tick> days;
                for (const auto& entry : part) days.insert(entry.tick / day_width);
                if (rule == RegularizeRule::MinActiveDaysPerWindow)
                    value = static_cast<double>(days.size());
                else
                    value = static_cast<double>(part.size()) / static_cast<double>(days.size());
                break;
            }
        }
        if (value >= threshold) keep.push_back(u);
    }
    if (keep.empty()) throw param_error("regularization rule filtered out every node");
    return keep;
}

namespace {

std::string csv_row(const ExperimentReport& r) {
    std::ostringstream os;
    os << r.method << ',' << r.seed << ',' << r.budget << ',' << format_double(r.reward) << ','
       << format_double(r.reward_ratio_vs_greedy) << ',' << r.gain_evals << ','
       << format_double(r.speedup) << ',' << r.detects << ',' << format_double(r.mean_lead_time)
       << ',' << format_double(r.cover_ratio);
    return os.str();
}

}  // namespace

BenchOutput bench(const Graph& graph, const CascadeLog& log, const BenchConfig& config) {
    if (config.methods.empty()) throw param_error("bench requires at least one method");
    if (config.replications < 1) throw param_error("replications must be >= 1");

    std::vector<std::uint64_t> seeds = config.seeds;
    if (seeds.empty()) seeds.push_back(0);
    while (seeds.size() < config.replications)
        seeds.push_back(Rng::derive(seeds.front(), seeds.size()));

    // exact greedy is the denominator method: run once, deterministic
    RunOutcome greedy = run_method(graph, log, MethodSpec{}, config.budget, 0);
    const auto greedy_detection =
        detection_metrics(greedy.selection.sensors, log, config.bucket_width);
    const double greedy_reward = greedy.selection.total_reward();
    const double greedy_cost = static_cast<double>(std::max<std::uint64_t>(1, greedy.total_cost()));

    struct Task {
        std::size_t method_index;
        std::uint32_t replication;
    };
    std::vector<Task> tasks;
    for (std::size_t m = 0; m < config.methods.size(); ++m)
        for (std::uint32_t rep = 0; rep < config.replications; ++rep) tasks.push_back({m, rep});

    std::vector<ExperimentReport> reports(tasks.size());
    auto run_task = [&](std::size_t t) {
        const MethodSpec& method = config.methods[tasks[t].method_index];
        const std::uint64_t seed = seeds[tasks[t].replication];
        ExperimentReport report;
        report.method = method.label();
        report.seed = seed;
        report.budget = config.budget;
        if (method.kind == MethodSpec::Kind::Greedy) {
            report.reward = greedy_reward;
            report.reward_ratio_vs_greedy = 1.0;
            report.gain_evals = greedy.total_cost();
            report.speedup = 1.0;
            report.detects = greedy_detection.detects;
            report.mean_lead_time = greedy_detection.mean_lead_time;
            report.cover_ratio = 1.0;
        } else {
            RunOutcome outcome = run_method(graph, log, method, config.budget, seed);
            report.reward = outcome.selection.total_reward();
            report.reward_ratio_vs_greedy =
                greedy_reward > 0.0 ? report.reward / greedy_reward : 1.0;
            report.gain_evals = outcome.total_cost();
            report.speedup =
                greedy_cost / static_cast<double>(std::max<std::uint64_t>(1, outcome.total_cost()));
            const auto detection =
                detection_metrics(outcome.selection.sensors, log, config.bucket_width);
            report.detects = detection.detects;
            report.mean_lead_time = detection.mean_lead_time;
            const auto& cover_base = outcome.candidate_union.empty() ? outcome.selection.sensors
                                                                     : outcome.candidate_union;
            report.cover_ratio =
                greedy.selection.sensors.empty()
                    ? 0.0
                    : measured_cover_ratio(cover_base, greedy.selection.sensors);
        }
        reports[t] = std::move(report);
    };

    const std::uint32_t jobs = std::max<std::uint32_t>(1, config.jobs);
    if (jobs == 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::vector<std::thread> workers;
        std::atomic<std::size_t> next{0};
        for (std::uint32_t j = 0; j < jobs; ++j) {
            workers.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1))
                    run_task(t);
            });
        }
        for (auto& w : workers) w.join();
    }

    BenchOutput out;
    out.reports = std::move(reports);

    std::ostringstream csv;
    csv << "method,seed,B,reward,ratio,gain_evals,speedup,detects,mean_lead,cover_ratio\n";
    for (const auto& r : out.reports) csv << csv_row(r) << '\n';
    out.csv = csv.str();

    nlohmann::json j;
    j["budget"] = config.budget;
    j["bucket_width"] = config.bucket_width;
    j["replications"] = config.replications;
    j["seeds"] = seeds;
    j["opt_is_proxy"] = true;  // cover ratios are measured against exact greedy, not true OPT
    auto rows = nlohmann::json::array();
    for (const auto& r : out.reports) {
        nlohmann::json row;
        row["method"] = r.method;
        row["seed"] = r.seed;
        row["B"] = r.budget;
        row["reward"] = r.reward;
        row["ratio"] = r.reward_ratio_vs_greedy;
        row["gain_evals"] = r.gain_evals;
        row["speedup"] = r.speedup;
        row["detects"] = r.detects;
        row["mean_lead"] = r.mean_lead_time;
        row["cover_ratio"] = r.cover_ratio;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    // per-method mean and sample standard deviation of reward and speedup
    std::map<std::string, std::vector<const ExperimentReport*>> by_method;
    for (const auto& r : out.reports) by_method[r.method].push_back(&r);
    nlohmann::json aggregates;
    for (const auto& [name, rows_m] : by_method) {
        auto stats = [&](auto getter) {
            double mean = 0.0;
            for (const auto* r : rows_m) mean += getter(*r);
            mean /= static_cast<double>(rows_m.size());
            double var = 0.0;
            for (const auto* r : rows_m) {
                const double d = getter(*r) - mean;
                var += d * d;
            }
            var = rows_m.size() > 1 ? var / static_cast<double>(rows_m.size() - 1) : 0.0;
            return std::pair<double, double>{mean, std::sqrt(var)};
        };
        auto [reward_mean, reward_std] = stats([](const ExperimentReport& r) { return r.reward; });
        auto [speed_mean, speed_std] = stats([](const ExperimentReport& r) { return r.speedup; });
        auto [ratio_mean, ratio_std] =
            stats([](const ExperimentReport& r) { return r.reward_ratio_vs_greedy; });
        nlohmann::json agg;
        agg["reward_mean"] = reward_mean;
        agg["reward_std"] = reward_std;
        agg["speedup_mean"] = speed_mean;
        agg["speedup_std"] = speed_std;
        agg["ratio_mean"] = ratio_mean;
        agg["ratio_std"] = ratio_std;
        aggregates[name] = std::move(agg);
    }
    j["aggregates"] = std::move(aggregates);
    out.json = j.dump(2);
    return out;
}

}  // namespace ssp
