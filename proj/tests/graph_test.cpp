#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "interlace/euler.hpp"
#include "interlace/graph.hpp"
#include "test_support.hpp"

namespace interlace {
namespace {

using testing::Rng;

std::vector<std::pair<std::string, std::string>> doubled_triangle() {
    return {{"1", "2"}, {"1", "2"}, {"2", "3"}, {"2", "3"}, {"3", "1"}, {"3", "1"}};
}

TEST(EdgeList, TwoLoopsMakeOneVertex) {
    const auto g = Multigraph::from_edge_list({{"1", "1"}, {"1", "1"}});
    EXPECT_EQ(g.vertex_count(), 1U);
    EXPECT_EQ(g.edge_count(), 2U);
    EXPECT_EQ(g.half_edges_at(0), (std::array<HalfEdge, 4>{0, 1, 2, 3}));
}

TEST(EdgeList, DoubledTriangle) {
    const auto g = Multigraph::from_edge_list(doubled_triangle());
    EXPECT_EQ(g.vertex_count(), 3U);
    EXPECT_EQ(g.edge_count(), 6U);
    EXPECT_EQ(g.vertex_of(0), 0U);
    EXPECT_EQ(g.vertex_of(1), 1U);
}

TEST(EdgeList, DegreeErrorNamesVertex) {
    try {
        (void)Multigraph::from_edge_list({{"1", "2"}});
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("vertex 1 has degree 1"), std::string::npos) << e.what();
    }
}

TEST(EdgeList, NumericLabelsSortByValue) {
    const auto g = Multigraph::from_edge_list({{"10", "10"}, {"10", "10"}, {"9", "9"}, {"9", "9"}});
    EXPECT_EQ(g.labels(), (std::vector<std::string>{"9", "10"}));
    const auto h = Multigraph::from_edge_list({{"b", "b"}, {"b", "b"}, {"a1", "a1"}, {"a1", "a1"}});
    EXPECT_EQ(h.labels(), (std::vector<std::string>{"a1", "b"}));
}

TEST(EdgeList, ReadsFileFormat) {
    std::istringstream in("# doubled triangle\n1 2\n1 2\n\n2 3 # parallel\n2 3\n3 1\n3 1\n");
    EXPECT_EQ(read_edge_list(in), doubled_triangle());
    std::istringstream bad("1 2\n1 2 3\n");
    try {
        (void)read_edge_list(bad);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2U);
    }
}

TEST(Words, KFiveWord) {
    const auto es = from_double_occurrence_words({testing::chars("1234513524")});
    EXPECT_EQ(es.graph().vertex_count(), 5U);
    EXPECT_EQ(es.graph().edge_count(), 10U);
    EXPECT_EQ(es.word_labels(0), testing::chars("1234513524"));
    // K5: every pair of vertices is joined exactly once
    std::set<std::pair<std::string, std::string>> pairs;
    for (std::size_t e = 0; e < es.graph().edge_count(); ++e) {
        auto [u, v] = es.graph().edge_endpoints(e);
        if (v < u) std::swap(u, v);
        EXPECT_NE(u, v);
        pairs.emplace(u, v);
    }
    EXPECT_EQ(pairs.size(), 10U);
}

TEST(Words, SingleVertexTwoLoops) {
    const auto es = from_double_occurrence_words({{"a", "a"}});
    EXPECT_EQ(es.graph().vertex_count(), 1U);
    EXPECT_EQ(es.graph().edge_endpoints(0), std::make_pair(std::string("a"), std::string("a")));
    EXPECT_EQ(es.graph().edge_endpoints(1), std::make_pair(std::string("a"), std::string("a")));
}

TEST(Words, FourParallelEdges) {
    const auto es = from_double_occurrence_words({{"a", "b", "a", "b"}});
    const auto& g = es.graph();
    ASSERT_EQ(g.vertex_count(), 2U);
    for (std::size_t e = 0; e < 4; ++e) {
        auto [u, v] = g.edge_endpoints(e);
        EXPECT_NE(u, v);
    }
}

TEST(Words, ErrorsNameTheLabel) {
    auto message = [](const std::vector<std::vector<std::string>>& words) {
        try {
            (void)from_double_occurrence_words(words);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message({{"a", "b", "a"}}).find("label b"), std::string::npos);
    EXPECT_NE(message({{"a", "a", "a", "b", "b", "b"}}).find("label a"), std::string::npos);
    EXPECT_NE(message({{"a", "q"}, {"a", "q"}}).find("label a"), std::string::npos);
    EXPECT_FALSE(message({{}}).empty());
}

TEST(Components, Examples) {
    EXPECT_EQ(components(Multigraph::from_edge_list(doubled_triangle())).size(), 1U);
    auto two = doubled_triangle();
    for (const auto& [u, v] : doubled_triangle()) two.emplace_back(u + "'", v + "'");
    const auto g = Multigraph::from_edge_list(two);
    const auto comps = components(g);
    ASSERT_EQ(comps.size(), 2U);
    EXPECT_EQ(comps[0].size(), 3U);
    EXPECT_EQ(g.label(comps[0][0]), "1");
    EXPECT_TRUE(components(Multigraph::from_edge_list({})).empty());
}

TEST(Hierholzer, SingleVertexWord) {
    const auto es = euler_system(Multigraph::from_edge_list({{"v", "v"}, {"v", "v"}}));
    EXPECT_EQ(es.word_labels(0), (std::vector<std::string>{"v", "v"}));
}

TEST(Hierholzer, DoubledTriangleSmallestIdTieBreak) {
    // half-edges: 0@1 1@2 | 2@1 3@2 | 4@2 5@3 | 6@2 7@3 | 8@3 9@1 | 10@3 11@1
    // 1 -0-> 2 -3-> 1 -9-> 3 -5-> 2 -6-> 3 -10-> 1
    const auto es = euler_system(Multigraph::from_edge_list(doubled_triangle()));
    EXPECT_EQ(es.departures(0), (std::vector<HalfEdge>{0, 3, 9, 5, 6, 10}));
    EXPECT_EQ(es.word_labels(0), testing::chars("121323"));
}

TEST(Hierholzer, RebuildingFromWordGivesValidSystem) {
    const auto from_word = from_double_occurrence_words({testing::chars("1234513524")});
    const auto es = euler_system(from_word.graph_ptr());
    EXPECT_FALSE(es.find_problem().has_value());
    EXPECT_EQ(es.component_count(), 1U);
}

TEST(Hierholzer, RandomGraphsSatisfyInvariants) {
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const auto g = Multigraph::from_edge_list(testing::random_four_regular_edges(n, rng));
        const auto es = euler_system(g);
        ASSERT_FALSE(es.find_problem().has_value()) << *es.find_problem();
        EXPECT_EQ(es.component_count(), components(g).size());
        std::vector<int> count(n, 0);
        for (std::size_t c = 0; c < es.component_count(); ++c) {
            for (std::size_t v : es.word(c)) ++count[v];
            EXPECT_EQ(es.half_edge_sequence(c).size(), 2 * es.word(c).size());
        }
        for (int k : count) EXPECT_EQ(k, 2);
        // deterministic
        EXPECT_EQ(euler_system(g).circuits(), es.circuits());
    }
}

TEST(Hierholzer, RandomWordsRoundTrip) {
    Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const auto words = testing::random_words(1 + rng() % 8, rng, 3);
        const auto es = from_double_occurrence_words(words);
        EXPECT_FALSE(es.find_problem().has_value());
        for (std::size_t c = 0; c < words.size(); ++c) EXPECT_EQ(es.word_labels(c), words[c]);
        EXPECT_FALSE(euler_system(es.graph_ptr()).find_problem().has_value());
    }
}

TEST(Hierholzer, DirectedVariantRespectsOrientation) {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto words = testing::random_words(1 + rng() % 7, rng, 2);
        const auto es = from_double_occurrence_words(words);
        const auto mask = orient(es).outgoing_mask();
        const auto directed = euler_system(es.graph_ptr(), mask);
        for (const auto& circuit : directed.circuits())
            for (HalfEdge d : circuit) EXPECT_TRUE(mask[d]);
    }
}

TEST(Components, PartitionVertices) {
    Rng rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const auto g = Multigraph::from_edge_list(testing::random_four_regular_edges(n, rng));
        std::vector<int> seen(n, 0);
        for (const auto& comp : components(g))
            for (std::size_t v : comp) ++seen[v];
        for (int k : seen) EXPECT_EQ(k, 1);
    }
}

TEST(Orient, LoopsHaveOneInAndOneOutHalf) {
    const auto es = from_double_occurrence_words({{"v", "v"}});
    const auto d = orient(es);
    for (std::size_t e = 0; e < 2; ++e) EXPECT_NE(d.is_outgoing(2 * e), d.is_outgoing(2 * e + 1));
    EXPECT_EQ(d.incoming_at(0).size(), 2U);
    EXPECT_EQ(d.outgoing_at(0).size(), 2U);
}

TEST(Orient, FollowsConsecutiveWordEntries) {
    const auto es = from_double_occurrence_words({testing::chars("1234513524")});
    const auto d = orient(es);
    const auto& g = es.graph();
    const auto word = testing::chars("1234513524");
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        // edge e was built from word[e] -> word[e+1]
        EXPECT_TRUE(d.is_outgoing(2 * e));
        EXPECT_EQ(g.label(g.vertex_of(2 * e)), word[e]);
        EXPECT_EQ(g.label(g.vertex_of(2 * e + 1)), word[(e + 1) % word.size()]);
    }
}

TEST(Orient, TwoInTwoOutAndReversalSwaps) {
    Rng rng(25);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = Multigraph::from_edge_list(testing::random_four_regular_edges(1 + rng() % 8, rng));
        const auto es = euler_system(g);
        const auto d = orient(es);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            EXPECT_EQ(d.incoming_at(v).size(), 2U);
            EXPECT_EQ(d.outgoing_at(v).size(), 2U);
        }
        EulerSystem rev = es;
        for (std::size_t c = 0; c < es.component_count(); ++c) rev = reverse_circuit(rev, c);
        const auto r = orient(rev);
        for (HalfEdge h = 0; h < g.half_edge_count(); ++h) EXPECT_NE(d.is_outgoing(h), r.is_outgoing(h));
    }
}

TEST(EulerSystemValidation, RejectsBrokenCircuits) {
    const auto base = from_double_occurrence_words({{"a", "b", "a", "b"}});
    EXPECT_THROW(EulerSystem(base.graph_ptr(), {{0, 2, 4}}), InputError);
    EXPECT_THROW(EulerSystem(base.graph_ptr(), {{0, 2, 4, 6, 0}}), InputError);
    EXPECT_THROW(EulerSystem(base.graph_ptr(), {{0, 4, 2, 6}}), InputError);
}

}  // namespace
}  // namespace interlace
