#include "lcol/structure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stack>

namespace lcol {

bool BlockDecomposition::is_cut_vertex(Vertex v) const {
    return std::binary_search(cut_vertices.begin(), cut_vertices.end(), v);
}

std::vector<Vertex> BlockDecomposition::block_cut_vertices(int b) const {
    std::vector<Vertex> out;
    for (Vertex v : blocks[b])
        if (is_cut_vertex(v)) out.push_back(v);
    return out;
}

std::vector<int> BlockDecomposition::leaf_blocks() const {
    std::vector<int> out;
    for (size_t b = 0; b < blocks.size(); ++b)
        if (block_cut_vertices(static_cast<int>(b)).size() <= 1) out.push_back(static_cast<int>(b));
    return out;
}

BlockDecomposition block_decomposition(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<Edge> edge_stack;
    BlockDecomposition out;
    int timer = 0;

    // Iterative lowpoint DFS; child counts decide cut vertices, the edge
    // stack delimits biconnected components.
    struct Frame {
        Vertex v;
        size_t next_child = 0;
        int children = 0;
    };

    auto pop_block = [&](Vertex u, Vertex v) {
        std::set<Vertex> verts;
        int edge_count = 0;
        while (!edge_stack.empty()) {
            Edge e = edge_stack.back();
            edge_stack.pop_back();
            ++edge_count;
            verts.insert(e.first);
            verts.insert(e.second);
            if ((e.first == u && e.second == v) || (e.first == v && e.second == u)) break;
        }
        out.blocks.emplace_back(verts.begin(), verts.end());
        out.block_edge_count.push_back(edge_count);
    };

    for (Vertex root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        if (g.degree(root) == 0) {
            disc[root] = timer++;
            out.blocks.push_back({root});
            out.block_edge_count.push_back(0);
            continue;
        }
        std::stack<Frame> stack;
        stack.push({root});
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.top();
            Vertex v = f.v;
            const auto& nb = g.neighbors(v);
            if (f.next_child < nb.size()) {
                Vertex w = nb[f.next_child++];
                if (disc[w] < 0) {
                    parent[w] = v;
                    disc[w] = low[w] = timer++;
                    edge_stack.push_back({v, w});
                    ++f.children;
                    stack.push({w});
                } else if (w != parent[v] && disc[w] < disc[v]) {
                    edge_stack.push_back({v, w});
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                stack.pop();
                if (!stack.empty()) {
                    Vertex u = parent[v];
                    low[u] = std::min(low[u], low[v]);
                    if (low[v] >= disc[u]) pop_block(u, v);
                }
            }
        }
    }

    // Cut vertices are exactly the vertices lying in more than one block.
    std::vector<int> block_count(n, 0);
    out.blocks_of_vertex.assign(n, {});
    for (size_t b = 0; b < out.blocks.size(); ++b)
        for (Vertex v : out.blocks[b]) {
            ++block_count[v];
            out.blocks_of_vertex[v].push_back(static_cast<int>(b));
        }
    out.cut_vertices.clear();
    for (Vertex v = 0; v < n; ++v)
        if (block_count[v] > 1) out.cut_vertices.push_back(v);
    return out;
}

std::string block_kind_name(BlockKind k) {
    switch (k) {
        case BlockKind::K1: return "K1";
        case BlockKind::K2: return "K2";
        case BlockKind::K3: return "K3";
        case BlockKind::K4: return "K4";
        case BlockKind::OddCycle: return "odd-cycle";
        case BlockKind::Other: return "other";
    }
    return "?";
}

bool block_is_complete(const std::vector<Vertex>& block, int edge_count) {
    long long s = static_cast<long long>(block.size());
    return 2 * static_cast<long long>(edge_count) == s * (s - 1);
}

bool block_is_odd_cycle(const Graph& g, const std::vector<Vertex>& block, int edge_count) {
    size_t s = block.size();
    if (s < 5 || s % 2 == 0) return false;
    if (edge_count != static_cast<int>(s)) return false;
    std::set<Vertex> in_block(block.begin(), block.end());
    for (Vertex v : block) {
        int d = 0;
        for (Vertex w : g.neighbors(v))
            if (in_block.count(w)) ++d;
        if (d != 2) return false;
    }
    return true;
}

BlockKind classify_block(const Graph& g, const std::vector<Vertex>& block, int edge_count) {
    if (block.size() == 1) return BlockKind::K1;
    if (block_is_complete(block, edge_count)) {
        switch (block.size()) {
            case 2: return BlockKind::K2;
            case 3: return BlockKind::K3;
            case 4: return BlockKind::K4;
            default: return BlockKind::Other;
        }
    }
    if (block_is_odd_cycle(g, block, edge_count)) return BlockKind::OddCycle;
    return BlockKind::Other;
}

GallaiResult is_gallai_tree(const Graph& g) {
    auto dec = block_decomposition(g);
    for (size_t b = 0; b < dec.blocks.size(); ++b) {
        if (block_is_complete(dec.blocks[b], dec.block_edge_count[b])) continue;
        if (block_is_odd_cycle(g, dec.blocks[b], dec.block_edge_count[b])) continue;
        return {false, dec.blocks[b]};
    }
    return {true, {}};
}

std::vector<EndBlockClass> classify_end_blocks(const Graph& g) {
    auto dec = block_decomposition(g);
    std::vector<EndBlockClass> out;
    for (int b : dec.leaf_blocks()) {
        EndBlockClass e;
        e.label = classify_block(g, dec.blocks[b], dec.block_edge_count[b]);
        e.block = dec.blocks[b];
        auto cuts = dec.block_cut_vertices(b);
        if (!cuts.empty()) e.attachment = cuts.front();
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

// Unit-capacity vertex-split max flow, capped: stops once flow reaches cap.
// Nodes: 2v = in, 2v+1 = out.
class VertexFlow {
public:
    explicit VertexFlow(const Graph& g) : g_(g), n_(g.num_vertices()) {}

    int max_flow(Vertex s, Vertex t, int cap) {
        const int big = 1 << 28;
        head_.assign(2 * n_, -1);
        to_.clear();
        capv_.clear();
        next_.clear();
        for (Vertex v = 0; v < n_; ++v) add(2 * v, 2 * v + 1, v == s || v == t ? big : 1);
        for (const auto& [u, v] : g_.edges()) {
            add(2 * u + 1, 2 * v, big);
            add(2 * v + 1, 2 * u, big);
        }
        int source = 2 * s + 1, sink = 2 * t;
        int flow = 0;
        std::vector<int> prev_edge(2 * n_);
        while (flow < cap) {
            std::fill(prev_edge.begin(), prev_edge.end(), -1);
            std::deque<int> queue{source};
            prev_edge[source] = -2;
            while (!queue.empty() && prev_edge[sink] == -1) {
                int x = queue.front();
                queue.pop_front();
                for (int e = head_[x]; e != -1; e = next_[e])
                    if (capv_[e] > 0 && prev_edge[to_[e]] == -1) {
                        prev_edge[to_[e]] = e;
                        queue.push_back(to_[e]);
                    }
            }
            if (prev_edge[sink] == -1) break;
            for (int x = sink; x != source;) {
                int e = prev_edge[x];
                capv_[e] -= 1;
                capv_[e ^ 1] += 1;
                x = to_[e ^ 1];
            }
            ++flow;
        }
        return flow;
    }

private:
    void add(int a, int b, int c) {
        to_.push_back(b);
        capv_.push_back(c);
        next_.push_back(head_[a]);
        head_[a] = static_cast<int>(to_.size()) - 1;
        to_.push_back(a);
        capv_.push_back(0);
        next_.push_back(head_[b]);
        head_[b] = static_cast<int>(to_.size()) - 1;
    }

    const Graph& g_;
    int n_;
    std::vector<int> head_, to_, capv_, next_;
};

} // namespace

int vertex_connectivity(const Graph& g) {
    const int n = g.num_vertices();
    if (n <= 1) return 0;
    if (g.is_complete()) return n - 1;
    if (!g.is_connected()) return 0;

    Vertex pivot = 0;
    for (Vertex v = 1; v < n; ++v)
        if (g.degree(v) < g.degree(pivot)) pivot = v;
    int best = g.degree(pivot);

    VertexFlow flow(g);
    // If some minimum cut avoids the pivot, a flow from the pivot finds it;
    // otherwise the pivot lies in every minimum cut and a pair of its
    // neighbors on opposite sides does.
    for (Vertex u = 0; u < n; ++u) {
        if (u == pivot || g.has_edge(pivot, u)) continue;
        best = std::min(best, flow.max_flow(pivot, u, best));
        if (best == 0) return 0;
    }
    const auto& nb = g.neighbors(pivot);
    for (size_t i = 0; i < nb.size(); ++i)
        for (size_t j = i + 1; j < nb.size(); ++j) {
            if (g.has_edge(nb[i], nb[j])) continue;
            best = std::min(best, flow.max_flow(nb[i], nb[j], best));
            if (best == 0) return 0;
        }
    return best;
}

namespace {

// Deficiency-directed search for a K5 model: grow five disjoint connected
// branch sets; at each node pick the first non-adjacent set pair and branch
// on every way to extend either side by an adjacent unassigned vertex.
// Complete, deterministic, memoized on the assignment.
class MinorSearch {
public:
    MinorSearch(const Graph& g, long long budget) : budget_(budget) {
        // Preprocess: iteratively delete degree<=1 vertices and contract
        // degree-2 vertices into a neighbor. Both preserve the existence of
        // a K5 minor, and contraction classes are tracked so witnesses name
        // original vertices.
        const int n = g.num_vertices();
        std::vector<std::set<Vertex>> nbrs(n);
        classes_.assign(n, {});
        for (Vertex v = 0; v < n; ++v) {
            classes_[v] = {v};
            nbrs[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
        }
        std::vector<char> dead(n, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (Vertex v = 0; v < n; ++v) {
                if (dead[v]) continue;
                if (nbrs[v].size() <= 1) {
                    for (Vertex w : nbrs[v]) nbrs[w].erase(v);
                    nbrs[v].clear();
                    dead[v] = 1;
                    changed = true;
                } else if (nbrs[v].size() == 2) {
                    Vertex into = *nbrs[v].begin();
                    classes_[into].insert(classes_[into].end(), classes_[v].begin(),
                                          classes_[v].end());
                    for (Vertex w : nbrs[v]) nbrs[w].erase(v);
                    for (Vertex w : nbrs[v])
                        if (w != into) {
                            nbrs[into].insert(w);
                            nbrs[w].insert(into);
                        }
                    nbrs[v].clear();
                    dead[v] = 1;
                    changed = true;
                }
            }
        }
        for (Vertex v = 0; v < n; ++v)
            if (!dead[v]) keep_.push_back(v);
        index_.assign(n, -1);
        for (size_t i = 0; i < keep_.size(); ++i) index_[keep_[i]] = static_cast<int>(i);
        adj_.resize(keep_.size());
        for (size_t i = 0; i < keep_.size(); ++i)
            for (Vertex w : nbrs[keep_[i]]) adj_[i].push_back(index_[w]);
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    MinorResult run() {
        MinorResult res;
        const int n = static_cast<int>(keep_.size());
        long long m = 0;
        for (const auto& a : adj_) m += static_cast<long long>(a.size());
        m /= 2;
        if (n < 5 || m < 10) {
            res.status = MinorResult::Status::No;
            res.nodes = 0;
            return res;
        }
        assign_.assign(n, -1);
        sets_.assign(5, {});
        bool found = search();
        res.status = found ? MinorResult::Status::Yes
                           : (exceeded_ ? MinorResult::Status::BudgetExceeded
                                        : MinorResult::Status::No);
        res.nodes = nodes_;
        if (found) {
            res.branch_sets.assign(5, {});
            for (int s = 0; s < 5; ++s) {
                for (int i : sets_[s])
                    for (Vertex orig : classes_[keep_[i]]) res.branch_sets[s].push_back(orig);
                std::sort(res.branch_sets[s].begin(), res.branch_sets[s].end());
            }
        }
        return res;
    }

private:
    bool sets_adjacent(int a, int b) const {
        for (int i : sets_[a])
            for (int j : sets_[b])
                if (std::binary_search(adj_[i].begin(), adj_[i].end(), j)) return true;
        return false;
    }

    // Unassigned vertices adjacent to the set; for an empty set every
    // unassigned vertex past the previous set's seed (symmetry breaking).
    std::vector<int> extension_candidates(int s) const {
        std::vector<int> out;
        if (sets_[s].empty()) {
            int floor = s == 0 ? -1 : (sets_[s - 1].empty() ? 1 << 29 : sets_[s - 1].front());
            for (int v = floor + 1; v < static_cast<int>(adj_.size()); ++v)
                if (assign_[v] < 0) out.push_back(v);
            return out;
        }
        std::set<int> seen;
        for (int i : sets_[s])
            for (int w : adj_[i])
                if (assign_[w] < 0) seen.insert(w);
        out.assign(seen.begin(), seen.end());
        return out;
    }

    // Every unsatisfied pair of nonempty sets must still be connectable
    // through unassigned vertices; otherwise the node is dead.
    bool pairs_feasible() const {
        const int n = static_cast<int>(adj_.size());
        for (int a = 0; a < 5; ++a) {
            if (sets_[a].empty()) continue;
            std::vector<char> reach(n, 0);
            std::vector<int> queue;
            for (int i : sets_[a])
                for (int w : adj_[i])
                    if (assign_[w] < 0 && !reach[w]) {
                        reach[w] = 1;
                        queue.push_back(w);
                    }
            while (!queue.empty()) {
                int v = queue.back();
                queue.pop_back();
                for (int w : adj_[v])
                    if (assign_[w] < 0 && !reach[w]) {
                        reach[w] = 1;
                        queue.push_back(w);
                    }
            }
            for (int b = a + 1; b < 5; ++b) {
                if (sets_[b].empty() || sets_adjacent(a, b)) continue;
                bool ok = false;
                for (int i : sets_[b]) {
                    for (int w : adj_[i])
                        if (assign_[w] < 0 && reach[w]) {
                            ok = true;
                            break;
                        }
                    if (ok) break;
                }
                if (!ok) return false;
            }
        }
        return true;
    }

    bool adjacent_to_set(int v, int s) const {
        for (int i : sets_[s])
            if (std::binary_search(adj_[v].begin(), adj_[v].end(), i)) return true;
        return false;
    }

    bool search() {
        if (exceeded_) return false;
        if (++nodes_ > budget_) {
            exceeded_ = true;
            return false;
        }
        // Fail-first: among unsatisfied pairs of nonempty sets pick the one
        // with the fewest extension moves; seed the first empty set only
        // when no such pair remains.
        int pi = -1, pj = -1, empty_set = -1;
        size_t best_cost = 1 << 30;
        bool any_deficiency = false;
        for (int a = 0; a < 5; ++a) {
            if (sets_[a].empty()) {
                if (empty_set < 0) empty_set = a;
                any_deficiency = true;
            }
        }
        for (int a = 0; a < 5; ++a) {
            if (sets_[a].empty()) continue;
            for (int b = a + 1; b < 5; ++b) {
                if (sets_[b].empty() || sets_adjacent(a, b)) continue;
                any_deficiency = true;
                size_t cost =
                    extension_candidates(a).size() + extension_candidates(b).size();
                if (cost == 0) return false;
                if (cost < best_cost) {
                    best_cost = cost;
                    pi = a;
                    pj = b;
                }
            }
        }
        if (!any_deficiency) return true;
        if (!pairs_feasible()) return false;

        std::string key(assign_.begin(), assign_.end());
        for (char& c : key) c += 2;
        if (failed_.count(key)) return false;

        auto try_side = [&](int side, int other) -> bool {
            auto cands = extension_candidates(side);
            // Moves that satisfy the pair immediately go first.
            if (other >= 0)
                std::stable_sort(cands.begin(), cands.end(), [&](int x, int y) {
                    return adjacent_to_set(x, other) > adjacent_to_set(y, other);
                });
            for (int v : cands) {
                assign_[v] = static_cast<signed char>(side);
                sets_[side].push_back(v);
                if (search()) return true;
                sets_[side].pop_back();
                assign_[v] = -1;
                if (exceeded_) return false;
            }
            return false;
        };

        bool found;
        if (pi >= 0)
            found = try_side(pi, pj) || (!exceeded_ && try_side(pj, pi));
        else
            found = try_side(empty_set, -1);
        if (found) return true;
        if (!exceeded_ && failed_.size() < 4'000'000) failed_.insert(std::move(key));
        return false;
    }

    long long budget_;
    long long nodes_ = 0;
    bool exceeded_ = false;
    std::vector<Vertex> keep_;
    std::vector<int> index_;
    std::vector<std::vector<Vertex>> classes_;
    std::vector<std::vector<int>> adj_;
    std::vector<signed char> assign_;
    std::vector<std::vector<int>> sets_;
    std::set<std::string> failed_;
};

} // namespace

MinorResult has_k5_minor(const Graph& g, long long node_budget) {
    MinorSearch search(g, node_budget);
    return search.run();
}

} // namespace lcol
