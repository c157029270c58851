#include "lcol/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace lcol {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw Error("graph: negative vertex count");
    adj_.resize(n);
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error("graph: edge endpoint out of range: (" + std::to_string(u) + "," +
                        std::to_string(v) + ") with n=" + std::to_string(n));
        if (u == v) throw Error("graph: self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw Error("graph: parallel edge (" + std::to_string(edges[i].first) + "," +
                        std::to_string(edges[i].second) + ")");
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u == v) return false;
    const auto& nb = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(nb.begin(), nb.end(), other);
}

int Graph::min_degree() const {
    int d = n_ == 0 ? 0 : num_vertices();
    for (Vertex v = 0; v < n_; ++v) d = std::min(d, degree(v));
    return n_ == 0 ? 0 : d;
}

int Graph::max_degree() const {
    int d = 0;
    for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

bool Graph::is_complete() const {
    return static_cast<long long>(num_edges()) * 2 == static_cast<long long>(n_) * (n_ - 1);
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    auto dist = bfs_distances({0});
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::vector<std::vector<Vertex>> Graph::components() const {
    std::vector<Vertex> all(n_);
    for (Vertex v = 0; v < n_; ++v) all[v] = v;
    return induced_components(all);
}

std::vector<std::vector<Vertex>> Graph::induced_components(const std::vector<Vertex>& sub) const {
    std::vector<char> in_sub(n_, 0), seen(n_, 0);
    for (Vertex v : sub) in_sub[v] = 1;
    std::vector<Vertex> order(sub);
    std::sort(order.begin(), order.end());
    std::vector<std::vector<Vertex>> comps;
    for (Vertex start : order) {
        if (seen[start]) continue;
        std::vector<Vertex> comp;
        std::deque<Vertex> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (Vertex w : adj_[v])
                if (in_sub[w] && !seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::pair<Graph, std::vector<Vertex>> Graph::induced_subgraph(const std::vector<Vertex>& verts) const {
    std::vector<Vertex> mapping(verts);
    std::sort(mapping.begin(), mapping.end());
    std::vector<int> index(n_, -1);
    for (size_t i = 0; i < mapping.size(); ++i) index[mapping[i]] = static_cast<int>(i);
    std::vector<Edge> sub_edges;
    for (const auto& [u, v] : edges_)
        if (index[u] >= 0 && index[v] >= 0) sub_edges.emplace_back(index[u], index[v]);
    return {Graph(static_cast<int>(mapping.size()), std::move(sub_edges)), mapping};
}

std::vector<int> Graph::bfs_distances(const std::vector<Vertex>& sources) const {
    std::vector<int> dist(n_, -1);
    std::deque<Vertex> queue;
    for (Vertex s : sources) {
        dist[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : adj_[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

ListAssignment::ListAssignment(std::vector<std::vector<Color>> lists) : lists_(std::move(lists)) {
    for (size_t v = 0; v < lists_.size(); ++v) {
        auto& l = lists_[v];
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        if (l.empty())
            throw Error("list assignment: empty list at vertex " + std::to_string(v));
        if (l.front() < 0)
            throw Error("list assignment: negative color at vertex " + std::to_string(v));
    }
}

bool ListAssignment::contains(Vertex v, Color c) const {
    const auto& l = lists_[v];
    return std::binary_search(l.begin(), l.end(), c);
}

bool Coloring::is_total() const {
    return std::none_of(colors_.begin(), colors_.end(),
                        [](Color c) { return c == kUncolored; });
}

bool validate_f_assignment(const Graph& g, const ListAssignment& l, int k) {
    if (l.num_vertices() != g.num_vertices()) return false;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (l.list_size(v) != std::min(g.degree(v), k)) return false;
    return true;
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> small_big_split(const Graph& g, int k) {
    std::vector<Vertex> small, big;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        (g.degree(v) < k ? small : big).push_back(v);
    return {small, big};
}

int component_distance(const Graph& g, const std::vector<Vertex>& s) {
    auto comps = g.induced_components(s);
    if (comps.size() <= 1) return 0;
    std::vector<int> comp_of(g.num_vertices(), -1);
    for (size_t i = 0; i < comps.size(); ++i)
        for (Vertex v : comps[i]) comp_of[v] = static_cast<int>(i);
    int best = -1;
    // Multi-source BFS from each component through the whole graph.
    for (size_t i = 0; i + 1 < comps.size(); ++i) {
        auto dist = g.bfs_distances(comps[i]);
        for (size_t j = i + 1; j < comps.size(); ++j)
            for (Vertex v : comps[j])
                if (dist[v] >= 0 && (best < 0 || dist[v] < best)) best = dist[v];
    }
    return best < 0 ? 0 : best;
}

bool check_coloring(const Graph& g, const ListAssignment& l, const Coloring& c) {
    if (c.num_vertices() != g.num_vertices()) return false;
    return c.is_total() && is_valid_partial_coloring(g, l, c);
}

bool is_valid_partial_coloring(const Graph& g, const ListAssignment& l, const Coloring& c) {
    if (c.num_vertices() != g.num_vertices()) return false;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (c.is_colored(v) && !l.contains(v, c.color(v))) return false;
    for (const auto& [u, v] : g.edges())
        if (c.is_colored(u) && c.is_colored(v) && c.color(u) == c.color(v)) return false;
    return true;
}

} // namespace lcol
