#ifndef LCOL_GRAPH_HPP
#define LCOL_GRAPH_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcol {

using Vertex = int;
using Color = int;
using Edge = std::pair<Vertex, Vertex>;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& msg) : Error(msg) {}
};

/// Undirected simple graph on vertex ids 0..n-1. Immutable after construction.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(Vertex u, Vertex v) const;

    int min_degree() const;
    int max_degree() const;
    bool is_complete() const;
    bool is_connected() const;

    /// Connected components as sorted vertex lists, ordered by smallest member.
    std::vector<std::vector<Vertex>> components() const;

    /// Components of the subgraph induced by `sub` (sub need not be sorted).
    std::vector<std::vector<Vertex>> induced_components(const std::vector<Vertex>& sub) const;

    /// Subgraph induced by `verts`; mapping[i] = original id of new vertex i.
    std::pair<Graph, std::vector<Vertex>> induced_subgraph(const std::vector<Vertex>& verts) const;

    /// BFS distances from a set of sources (-1 = unreachable).
    std::vector<int> bfs_distances(const std::vector<Vertex>& sources) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

/// Per-vertex color lists. Lists are sorted, deduplicated, non-empty.
class ListAssignment {
public:
    ListAssignment() = default;
    explicit ListAssignment(std::vector<std::vector<Color>> lists);

    int num_vertices() const { return static_cast<int>(lists_.size()); }
    const std::vector<Color>& list(Vertex v) const { return lists_[v]; }
    int list_size(Vertex v) const { return static_cast<int>(lists_[v].size()); }
    bool contains(Vertex v, Color c) const;

    const std::vector<std::vector<Color>>& lists() const { return lists_; }

private:
    std::vector<std::vector<Color>> lists_;
};

/// Partial vertex coloring; kUncolored marks unassigned vertices.
class Coloring {
public:
    static constexpr Color kUncolored = -1;

    Coloring() = default;
    explicit Coloring(int n) : colors_(n, kUncolored) {}
    explicit Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {}

    int num_vertices() const { return static_cast<int>(colors_.size()); }
    Color color(Vertex v) const { return colors_[v]; }
    bool is_colored(Vertex v) const { return colors_[v] != kUncolored; }
    bool is_total() const;
    void set(Vertex v, Color c) { colors_[v] = c; }
    const std::vector<Color>& colors() const { return colors_; }

private:
    std::vector<Color> colors_;
};

/// |L(v)| == min{d(v), k} for every vertex.
bool validate_f_assignment(const Graph& g, const ListAssignment& l, int k);

/// Partition of V into (S_k, B_k): degrees < k vs >= k. Both sorted.
std::pair<std::vector<Vertex>, std::vector<Vertex>> small_big_split(const Graph& g, int k);

/// Minimum distance in G between distinct components of G[S]; 0 when G[S]
/// has at most one component.
int component_distance(const Graph& g, const std::vector<Vertex>& s);

/// Total, proper, and within lists.
bool check_coloring(const Graph& g, const ListAssignment& l, const Coloring& c);

/// Proper-so-far and within lists on the colored part (coloring may be partial).
bool is_valid_partial_coloring(const Graph& g, const ListAssignment& l, const Coloring& c);

} // namespace lcol

#endif
