#include "srrw/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "srrw/errors.hpp"
#include "srrw/rng.hpp"

namespace srrw {

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    if (n <= 0) throw DomainError("graph: node count must be positive");
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
            throw DomainError("graph: edge endpoint out of range");
        if (e.a == e.b) throw DomainError("graph: self-loop rejected");
        if (!(e.w > 0.0)) throw DomainError("graph: edge weight must be positive");
        auto key = std::minmax(e.a, e.b);
        if (!seen.insert(key).second) throw DomainError("graph: parallel edge rejected");
        canon.push_back({key.first, key.second, e.w});
    }
    std::vector<std::int64_t> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), std::int64_t{0});
    return assemble(n, std::move(canon), std::move(ids));
}

Graph Graph::assemble(int n, std::vector<Edge> edges, std::vector<std::int64_t> ids) {
    Graph g;
    g.n_ = n;
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    g.edges_ = std::move(edges);
    g.adj_.assign(static_cast<std::size_t>(n), {});
    g.degree_.assign(static_cast<std::size_t>(n), 0.0);
    for (const Edge& e : g.edges_) {
        g.adj_[static_cast<std::size_t>(e.a)].emplace_back(e.b, e.w);
        g.adj_[static_cast<std::size_t>(e.b)].emplace_back(e.a, e.w);
        g.degree_[static_cast<std::size_t>(e.a)] += e.w;
        g.degree_[static_cast<std::size_t>(e.b)] += e.w;
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    g.degree_total_ = std::accumulate(g.degree_.begin(), g.degree_.end(), 0.0);
    g.original_ids_ = std::move(ids);
    return g;
}

namespace {

std::vector<int> component_of(const Graph& g, int start, std::vector<char>& visited) {
    std::vector<int> comp;
    std::vector<int> stack{start};
    visited[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (const auto& [v, w] : g.neighbors(u)) {
            (void)w;
            if (!visited[static_cast<std::size_t>(v)]) {
                visited[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
        }
    }
    return comp;
}

} // namespace

double Graph::degree(int i) const {
    if (i < 0 || i >= n_) throw DomainError("graph: node id out of range");
    return degree_[static_cast<std::size_t>(i)];
}

const std::vector<std::pair<int, double>>& Graph::neighbors(int i) const {
    if (i < 0 || i >= n_) throw DomainError("graph: node id out of range");
    return adj_[static_cast<std::size_t>(i)];
}

bool Graph::connected() const {
    if (n_ == 0) return false;
    std::vector<char> visited(static_cast<std::size_t>(n_), 0);
    return static_cast<int>(component_of(*this, 0, visited).size()) == n_;
}

Graph load_edge_list(std::istream& in) {
    std::set<std::pair<std::int64_t, std::int64_t>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t pos = 0;
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos == line.size()) continue;
        if (line[pos] == '#') continue;
        std::istringstream ls(line.substr(pos));
        std::string ta, tb, extra;
        if (!(ls >> ta >> tb) || (ls >> extra))
            throw ParseError("edge list line " + std::to_string(line_no) +
                             ": expected two node ids");
        std::int64_t u = 0, v = 0;
        auto ra = std::from_chars(ta.data(), ta.data() + ta.size(), u);
        auto rb = std::from_chars(tb.data(), tb.data() + tb.size(), v);
        if (ra.ec != std::errc{} || ra.ptr != ta.data() + ta.size() ||
            rb.ec != std::errc{} || rb.ptr != tb.data() + tb.size())
            throw ParseError("edge list line " + std::to_string(line_no) +
                             ": non-integer node id");
        if (u == v)
            throw ParseError("edge list line " + std::to_string(line_no) + ": self-loop");
        pairs.insert(std::minmax(u, v));
    }
    if (pairs.empty()) throw ParseError("edge list: no edges");

    std::map<std::int64_t, int> remap;
    for (const auto& [u, v] : pairs) {
        remap.emplace(u, 0);
        remap.emplace(v, 0);
    }
    std::vector<std::int64_t> original;
    original.reserve(remap.size());
    int next = 0;
    for (auto& [orig, id] : remap) {
        id = next++;
        original.push_back(orig);
    }
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs) {
        int a = remap[u], b = remap[v];
        if (a > b) std::swap(a, b);
        edges.push_back({a, b, 1.0});
    }
    return Graph::assemble(next, std::move(edges), std::move(original));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list file: " + path);
    return load_edge_list(in);
}

Graph largest_connected_component(const Graph& g) {
    std::vector<char> visited(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<int> best;
    for (int i = 0; i < g.node_count(); ++i) {
        if (visited[static_cast<std::size_t>(i)]) continue;
        std::vector<int> comp = component_of(g, i, visited);
        // Scanning from node 0 upward, a strictly larger component is needed
        // to displace the current best, so ties keep the smallest-id one.
        if (comp.size() > best.size()) best = std::move(comp);
    }
    std::sort(best.begin(), best.end());
    std::vector<int> to_new(static_cast<std::size_t>(g.node_count()), -1);
    std::vector<std::int64_t> original;
    original.reserve(best.size());
    for (std::size_t k = 0; k < best.size(); ++k) {
        to_new[static_cast<std::size_t>(best[k])] = static_cast<int>(k);
        original.push_back(g.original_ids()[static_cast<std::size_t>(best[k])]);
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int a = to_new[static_cast<std::size_t>(e.a)];
        int b = to_new[static_cast<std::size_t>(e.b)];
        if (a >= 0 && b >= 0) edges.push_back({a, b, e.w});
    }
    return Graph::assemble(static_cast<int>(best.size()), std::move(edges), std::move(original));
}

Graph erdos_renyi(int n, std::int64_t m, std::uint64_t seed) {
    if (n < 2) throw DomainError("erdos_renyi: need at least two nodes");
    const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (m < 1 || m > total) throw DomainError("erdos_renyi: infeasible edge count");

    // Floyd's sampling over the triangular pair indexing: exactly m distinct
    // unordered pairs, each m-subset equally likely.
    std::mt19937_64 rng(seed);
    std::set<std::int64_t> chosen;
    for (std::int64_t k = total - m; k < total; ++k) {
        std::int64_t r = static_cast<std::int64_t>(
            uniform_below(rng, static_cast<std::uint64_t>(k + 1)));
        if (!chosen.insert(r).second) chosen.insert(k);
    }

    // Pair index e maps to (i, j), i < j, counting pairs row by row.
    std::vector<std::int64_t> row_start(static_cast<std::size_t>(n), 0);
    for (int i = 1; i < n; ++i)
        row_start[static_cast<std::size_t>(i)] =
            row_start[static_cast<std::size_t>(i - 1)] + (n - i);
    std::vector<Edge> edges;
    edges.reserve(chosen.size());
    for (std::int64_t e : chosen) {
        auto it = std::upper_bound(row_start.begin(), row_start.end(), e);
        int i = static_cast<int>(it - row_start.begin()) - 1;
        int j = i + 1 + static_cast<int>(e - row_start[static_cast<std::size_t>(i)]);
        edges.push_back({i, j, 1.0});
    }
    return largest_connected_component(Graph::from_edges(n, edges));
}

} // namespace srrw
