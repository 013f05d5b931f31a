#include <doctest.h>

#include <set>
#include <tuple>

#include "cascades.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "support/oracles.hpp"
#include "support/tmpdir.hpp"

using namespace ssp;

TEST_CASE("duplicate edges collapse and self-loops are skipped") {
    testutil::TmpDir tmp;
    auto edges = tmp.file("edges.tsv", "0\t1\n1\t2\n0\t1\n");
    GraphLoadStats stats;
    auto g = load_graph(edges, std::nullopt, false, &stats);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(stats.duplicate_edges == 1);

    auto loops = tmp.file("loops.tsv", "0\t0\n0\t1\n");
    auto g2 = load_graph(loops, std::nullopt, false, &stats);
    CHECK(g2.edge_count() == 1);
    CHECK(stats.self_loops_skipped == 1);
}

TEST_CASE("attr-only nodes are kept with empty adjacency") {
    testutil::TmpDir tmp;
    auto edges = tmp.file("edges.tsv", "");
    auto attrs = tmp.file("attrs.tsv", "0\t1\n1\t0\n2\t5\n3\t0\n4\t2\n");
    auto g = load_graph(edges, attrs, false);
    CHECK(g.node_count() == 5);
    CHECK(g.edge_count() == 0);
    CHECK(g.degree(0) == 0);
    CHECK(g.activity(2) == doctest::Approx(5.0));
}

TEST_CASE("malformed edge line reports its line number") {
    testutil::TmpDir tmp;
    auto edges = tmp.file("edges.tsv", "a\tb\n");
    CHECK_THROWS_WITH_AS(load_graph(edges, std::nullopt, false),
                         doctest::Contains(":1:"), input_error);
}

TEST_CASE("comment lines are ignored and ids remap densely") {
    testutil::TmpDir tmp;
    auto edges = tmp.file("edges.tsv", "# header\n100\t7\n7\t42\n");
    auto g = load_graph(edges, std::nullopt, false);
    CHECK(g.node_count() == 3);
    // dense ids ascend with external ids
    CHECK(g.external_id(0) == 7);
    CHECK(g.external_id(1) == 42);
    CHECK(g.external_id(2) == 100);
    CHECK(g.find(100).has_value());
    CHECK_FALSE(g.find(5).has_value());
}

TEST_CASE("directed graphs keep input orientation") {
    auto g = Graph::build({}, {{0, 1}, {1, 2}}, {}, true);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(2) == 0);
    CHECK(g.edge_count() == 2);
    auto u = Graph::build({}, {{0, 1}, {1, 2}}, {}, false);
    CHECK(u.degree(2) == 1);
}

TEST_CASE("neighbor iteration is ascending") {
    auto g = Graph::build({}, {{3, 0}, {3, 2}, {3, 1}}, {}, false);
    auto nb = g.neighbors(*g.find(3));
    REQUIRE(nb.size() == 3);
    CHECK(nb[0] < nb[1]);
    CHECK(nb[1] < nb[2]);
}

TEST_CASE("cascade duplicates collapse to the earliest tick") {
    auto g = Graph::build({0, 1}, {}, {}, false);
    CascadeLoadStats stats;
    auto log = CascadeLog::build(g, {{1, 0, 0}, {1, 1, 2}, {1, 0, 7}}, UnknownNodePolicy::Reject,
                                 &stats);
    REQUIRE(log.cascade_count() == 1);
    CHECK(log.size(0) == 2);
    CHECK(log.start_time(0) == 0);
    CHECK(stats.duplicates_collapsed == 1);
    auto ev = log.events(0);
    CHECK(ev[0].tick == 0);
    CHECK(ev[1].tick == 2);
}

TEST_CASE("empty cascade file gives zero cascades") {
    testutil::TmpDir tmp;
    auto g = Graph::build({0, 1}, {}, {}, false);
    auto path = tmp.file("cascades.tsv", "");
    auto log = load_cascades(path, g);
    CHECK(log.cascade_count() == 0);
    CHECK(oracle::naive_reward(log, {0, 1}) == 0.0);
}

TEST_CASE("unknown nodes follow the policy") {
    testutil::TmpDir tmp;
    auto g = Graph::build({0, 1}, {}, {}, false);
    auto path = tmp.file("cascades.tsv", "1\t0\t0\n1\t9\t3\n");
    CHECK_THROWS_AS(load_cascades(path, g, UnknownNodePolicy::Reject), input_error);
    CascadeLoadStats stats;
    auto log = load_cascades(path, g, UnknownNodePolicy::Drop, &stats);
    CHECK(stats.dropped_records == 1);
    CHECK(log.size(0) == 1);
}

TEST_CASE("negative tick is rejected") {
    testutil::TmpDir tmp;
    auto g = Graph::build({0}, {}, {}, false);
    auto path = tmp.file("cascades.tsv", "1\t0\t-3\n");
    CHECK_THROWS_AS(load_cascades(path, g), input_error);
}

TEST_CASE("cascade stats: size, start, peak") {
    auto g = Graph::build({0, 1, 2, 3, 4}, {}, {}, false);

    SUBCASE("peak at the densest tick") {
        auto log = CascadeLog::build(g, {{0, 0, 0}, {0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 5}});
        auto s = log.stats(0, 1);
        CHECK(s.size == 5);
        CHECK(s.start == 0);
        CHECK(s.peak_time == 1);
    }
    SUBCASE("single participant") {
        auto log = CascadeLog::build(g, {{0, 0, 3}});
        auto s = log.stats(0, 1);
        CHECK(s.size == 1);
        CHECK(s.start == 3);
        CHECK(s.peak_time == 3);
    }
    SUBCASE("earliest bucket wins ties") {
        auto log = CascadeLog::build(g, {{0, 0, 0}, {0, 1, 0}, {0, 2, 9}, {0, 3, 9}});
        CHECK(log.stats(0, 1).peak_time == 0);
    }
    SUBCASE("unknown cascade errors") {
        auto log = CascadeLog::build(g, {{0, 0, 0}});
        CHECK_THROWS_AS(log.stats(7, 1), param_error);
    }
}

TEST_CASE("round trip: write then load preserves collapsed records") {
    testutil::TmpDir tmp;
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        auto inst = oracle::random_instance(rng, 15, 10);
        auto path = tmp.path("roundtrip-" + std::to_string(i) + ".tsv");
        inst.log.write_tsv(path, inst.graph);
        auto reloaded = load_cascades(path, inst.graph);

        using Triple = std::tuple<std::uint64_t, ExternalId, Tick>;
        auto triples = [&](const CascadeLog& log) {
            std::set<Triple> out;
            for (CascadeIdx c = 0; c < log.cascade_count(); ++c)
                for (const auto& event : log.events(c))
                    out.insert({log.external_cascade_id(c), inst.graph.external_id(event.node),
                                event.tick});
            return out;
        };
        CHECK(triples(inst.log) == triples(reloaded));
    }
}

TEST_CASE("start time and peak bound every participation") {
    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        auto inst = oracle::random_instance(rng, 12, 8);
        for (CascadeIdx c = 0; c < inst.log.cascade_count(); ++c) {
            auto s = inst.log.stats(c, 1 + rng.pick_index(4));
            CHECK(s.start <= s.peak_time);
            for (const auto& event : inst.log.events(c)) CHECK(s.start <= event.tick);
        }
    }
}

TEST_CASE("inverted index is consistent with events") {
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        auto inst = oracle::random_instance(rng, 12, 8);
        const auto& log = inst.log;
        std::uint64_t via_events = 0, via_index = 0;
        for (CascadeIdx c = 0; c < log.cascade_count(); ++c) {
            for (const auto& event : log.events(c)) {
                ++via_events;
                bool found = false;
                for (const auto& entry : log.participations(event.node))
                    if (entry.cascade == c && entry.tick == event.tick) found = true;
                CHECK(found);
            }
        }
        for (NodeId u = 0; u < log.node_count(); ++u) {
            for (const auto& entry : log.participations(u)) {
                ++via_index;
                bool found = false;
                for (const auto& event : log.events(entry.cascade))
                    if (event.node == u && event.tick == entry.tick) found = true;
                CHECK(found);
            }
        }
        CHECK(via_events == via_index);
    }
}

TEST_CASE("graph write/load round trip") {
    testutil::TmpDir tmp;
    auto g = Graph::build({9}, {{5, 3}, {3, 7}}, {{5, 2.5}}, false);
    g.write_tsv(tmp.path("e.tsv"), tmp.path("a.tsv"));
    auto g2 = load_graph(tmp.path("e.tsv"), tmp.path("a.tsv"), false);
    CHECK(g2.node_count() == g.node_count());
    CHECK(g2.edge_count() == g.edge_count());
    CHECK(g2.activity(*g2.find(5)) == doctest::Approx(2.5));
    CHECK(g2.degree(*g2.find(3)) == 2);
    CHECK(g2.find(9).has_value());
}
