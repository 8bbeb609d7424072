#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace srrw {

struct Edge {
    int a = 0;
    int b = 0;
    double w = 1.0;
};

// Undirected weighted graph with nodes 0..N-1. Immutable after construction;
// no self-loops, no parallel edges. Edge weights default to 1.
class Graph {
public:
    // Builds a graph from an explicit edge list over nodes 0..n-1.
    // Throws DomainError on self-loops, duplicate pairs, ids out of range,
    // or nonpositive weights.
    static Graph from_edges(int n, const std::vector<Edge>& edges);

    int node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    // Weighted degree: sum of incident edge weights. Throws DomainError on an
    // out-of-range id.
    double degree(int i) const;

    // Neighbors of i in ascending node order, with edge weights.
    const std::vector<std::pair<int, double>>& neighbors(int i) const;

    // Each undirected edge appears once with a < b.
    const std::vector<Edge>& edges() const { return edges_; }

    // Sum of weighted degrees over all nodes (twice the total edge weight).
    double degree_total() const { return degree_total_; }

    // Node ids as they appeared in the original input, indexed by internal id.
    const std::vector<std::int64_t>& original_ids() const { return original_ids_; }

    bool connected() const;

private:
    // Takes ownership of canonical (a < b, deduplicated) edges and wires up
    // the adjacency and degree tables.
    static Graph assemble(int n, std::vector<Edge> edges, std::vector<std::int64_t> ids);

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<double> degree_;
    double degree_total_ = 0.0;
    std::vector<std::int64_t> original_ids_;

    friend Graph largest_connected_component(const Graph&);
    friend Graph load_edge_list(std::istream&);
};

// Reads a whitespace-separated edge list: one "u v" pair of integer node ids
// per data line. Lines whose first nonblank character is '#' are comments;
// blank lines are skipped; CRLF endings are accepted. Node ids are remapped
// to 0..N-1 in ascending order of the original ids, so the result does not
// depend on line order. Duplicate and reversed duplicate pairs collapse to a
// single edge. Throws ParseError (with line number) on malformed lines or
// self-loops, and on an empty edge set.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

// Largest connected component; ties broken toward the component containing
// the smallest original id. Kept nodes are renumbered contiguously in
// ascending order of their previous ids; original ids are carried through.
Graph largest_connected_component(const Graph& g);

// G(n, m): m distinct edges drawn uniformly among the n(n-1)/2 unordered
// pairs, then reduced to the largest connected component. Deterministic for a
// given (n, m, seed). Throws DomainError when m is infeasible.
Graph erdos_renyi(int n, std::int64_t m, std::uint64_t seed);

} // namespace srrw
