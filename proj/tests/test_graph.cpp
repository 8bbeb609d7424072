#include "doctest.h"

#include <sstream>

#include "srrw/errors.hpp"
#include "srrw/graph.hpp"
#include "test_util.hpp"

using namespace srrw;

TEST_CASE("edge list parsing remaps ids ascending and drops duplicates") {
    std::istringstream in("# header comment\n"
                          "7 3\r\n"
                          "\n"
                          "3 9\n"
                          "9 3\n"
                          "  # indented comment\n"
                          "3 7\n");
    Graph g = load_edge_list(in);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    REQUIRE(g.original_ids().size() == 3);
    CHECK(g.original_ids()[0] == 3);
    CHECK(g.original_ids()[1] == 7);
    CHECK(g.original_ids()[2] == 9);
    // Internal node 0 is original id 3, adjacent to 7 and 9.
    CHECK(g.degree(0) == 2.0);
    CHECK(g.degree(1) == 1.0);
    CHECK(g.degree(2) == 1.0);
    CHECK(g.degree_total() == 4.0);
    CHECK(g.connected());
}

TEST_CASE("edge list parsing does not depend on line order") {
    std::istringstream a("1 2\n2 5\n5 1\n");
    std::istringstream b("5 1\n1 2\n2 5\n");
    Graph ga = load_edge_list(a);
    Graph gb = load_edge_list(b);
    REQUIRE(ga.node_count() == gb.node_count());
    CHECK(ga.original_ids() == gb.original_ids());
    REQUIRE(ga.edge_count() == gb.edge_count());
    for (std::size_t e = 0; e < ga.edge_count(); ++e) {
        CHECK(ga.edges()[e].a == gb.edges()[e].a);
        CHECK(ga.edges()[e].b == gb.edges()[e].b);
    }
}

TEST_CASE("edge list parse errors carry the line number") {
    auto expect_parse_error = [](const std::string& text, const std::string& fragment) {
        std::istringstream in(text);
        try {
            load_edge_list(in);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_parse_error("1 1\n", "line 1");
    expect_parse_error("0 1\nx 2\n", "line 2");
    expect_parse_error("0 1 2\n", "line 1");
    expect_parse_error("# nothing but comments\n", "no edges");
}

TEST_CASE("from_edges rejects malformed input") {
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0, 1.0}}), DomainError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1, 1.0}, {1, 0, 1.0}}), DomainError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3, 1.0}}), DomainError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1, 0.0}}), DomainError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1, -2.0}}), DomainError);
}

TEST_CASE("weighted degrees and sorted neighbor lists") {
    Graph g = Graph::from_edges(4, {{2, 1, 0.5}, {0, 1, 2.0}, {3, 1, 1.0}});
    CHECK(g.degree(1) == 3.5);
    CHECK(g.degree_total() == doctest::Approx(7.0));
    const auto& nb = g.neighbors(1);
    REQUIRE(nb.size() == 3);
    CHECK(nb[0].first == 0);
    CHECK(nb[1].first == 2);
    CHECK(nb[2].first == 3);
    CHECK(nb[0].second == 2.0);
    CHECK_THROWS_AS(g.degree(4), DomainError);
    CHECK_THROWS_AS(g.neighbors(-1), DomainError);
}

TEST_CASE("largest connected component keeps the bigger side") {
    // Components {0,1,2} and {3,4}.
    Graph g = Graph::from_edges(5, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}});
    CHECK_FALSE(g.connected());
    Graph lcc = largest_connected_component(g);
    CHECK(lcc.node_count() == 3);
    CHECK(lcc.edge_count() == 2);
    CHECK(lcc.connected());
    REQUIRE(lcc.original_ids().size() == 3);
    CHECK(lcc.original_ids()[0] == 0);
    CHECK(lcc.original_ids()[1] == 1);
    CHECK(lcc.original_ids()[2] == 2);
}

TEST_CASE("largest connected component breaks ties toward the smallest id") {
    // Two components of size 2: {1,3} and {0,2}. The one containing node 0
    // wins even though it appears second in the edge list.
    Graph g = Graph::from_edges(4, {{1, 3, 1.0}, {0, 2, 1.0}});
    Graph lcc = largest_connected_component(g);
    REQUIRE(lcc.node_count() == 2);
    CHECK(lcc.original_ids()[0] == 0);
    CHECK(lcc.original_ids()[1] == 2);
}

TEST_CASE("lcc composes original ids through a file-loaded graph") {
    std::istringstream in("10 20\n20 30\n40 50\n");
    Graph g = load_edge_list(in);
    Graph lcc = largest_connected_component(g);
    REQUIRE(lcc.node_count() == 3);
    CHECK(lcc.original_ids()[0] == 10);
    CHECK(lcc.original_ids()[1] == 20);
    CHECK(lcc.original_ids()[2] == 30);
}

TEST_CASE("erdos_renyi is deterministic and connected") {
    Graph a = erdos_renyi(30, 60, 42);
    Graph b = erdos_renyi(30, 60, 42);
    REQUIRE(a.node_count() == b.node_count());
    REQUIRE(a.edge_count() == b.edge_count());
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        CHECK(a.edges()[e].a == b.edges()[e].a);
        CHECK(a.edges()[e].b == b.edges()[e].b);
    }
    CHECK(a.connected());
    CHECK(a.edge_count() <= 60);

    // Different seeds give a different draw for this size.
    auto signature = [](const Graph& g) {
        std::ostringstream ss;
        for (const auto& e : g.edges()) ss << e.a << '-' << e.b << ';';
        return ss.str();
    };
    Graph c = erdos_renyi(30, 60, 43);
    CHECK(signature(a) != signature(c));
}

TEST_CASE("erdos_renyi rejects infeasible edge counts") {
    CHECK_THROWS_AS(erdos_renyi(4, 7, 1), DomainError);
    CHECK_THROWS_AS(erdos_renyi(1, 0, 1), DomainError);
    CHECK_THROWS_AS(erdos_renyi(5, 0, 1), DomainError);
}

TEST_CASE("edge list file loader reports missing files") {
    CHECK_THROWS_AS(load_edge_list_file("/no/such/file.edges"), ParseError);
    testutil::ScratchDir dir;
    testutil::write_text(dir.file("g.edges"), "4 5\n5 6\n");
    Graph g = load_edge_list_file(dir.file("g.edges"));
    CHECK(g.node_count() == 3);
}
