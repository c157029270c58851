#include "lcol/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "lcol/structure.hpp"

namespace lcol {

long long default_max_nodes() {
    if (const char* env = std::getenv("LCOL_MAX_NODES")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 100'000'000;
}

long long SolveBudget::effective_max_nodes() const {
    return max_nodes > 0 ? max_nodes : default_max_nodes();
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Colorable: return "colorable";
        case Verdict::Uncolorable: return "uncolorable";
        case Verdict::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

namespace {

// Backtracking search on one connected component with colors remapped to a
// dense palette and availability kept as bitmask words. The uncolored part
// is re-split into connected pieces as the search descends: independent
// pieces are solved independently, which keeps gadget faces from
// multiplying each other's search spaces.
class ComponentSolver {
public:
    ComponentSolver(const Graph& g, const std::vector<Vertex>& comp, const ListAssignment& l,
                    long long node_limit, long long& nodes)
        : g_(g), node_limit_(node_limit), nodes_(nodes) {
        verts_ = comp;
        index_.assign(g.num_vertices(), -1);
        for (size_t i = 0; i < verts_.size(); ++i) index_[verts_[i]] = static_cast<int>(i);
        std::set<Color> palette_set;
        for (Vertex v : verts_)
            palette_set.insert(l.list(v).begin(), l.list(v).end());
        palette_.assign(palette_set.begin(), palette_set.end());
        words_ = (palette_.size() + 63) / 64;
        std::map<Color, int> color_index;
        for (size_t i = 0; i < palette_.size(); ++i) color_index[palette_[i]] = static_cast<int>(i);
        avail_.assign(verts_.size() * words_, 0);
        for (size_t i = 0; i < verts_.size(); ++i)
            for (Color c : l.list(verts_[i])) {
                int ci = color_index[c];
                avail_[i * words_ + ci / 64] |= 1ULL << (ci % 64);
            }
        color_.assign(verts_.size(), -1);
        adj_.resize(verts_.size());
        for (size_t i = 0; i < verts_.size(); ++i)
            for (Vertex w : g.neighbors(verts_[i]))
                if (index_[w] >= 0) adj_[i].push_back(index_[w]);
    }

    // Returns verdict; fills `out` with original-id colors when colorable.
    Verdict solve(Coloring& out) {
        std::vector<int> all(verts_.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        Verdict v = search(all);
        if (v == Verdict::Colorable)
            for (size_t i = 0; i < verts_.size(); ++i) out.set(verts_[i], palette_[color_[i]]);
        return v;
    }

private:
    int avail_count(int i) const {
        int c = 0;
        for (size_t w = 0; w < words_; ++w) c += __builtin_popcountll(avail_[i * words_ + w]);
        return c;
    }

    bool has_color(int i, int ci) const {
        return avail_[i * words_ + ci / 64] >> (ci % 64) & 1;
    }

    size_t trail_mark() const { return trail_.size(); }

    void rollback(size_t mark) {
        while (trail_.size() > mark) {
            auto [kind, i, ci] = trail_.back();
            trail_.pop_back();
            if (kind == 0)
                color_[i] = -1;
            else
                avail_[i * words_ + ci / 64] |= 1ULL << (ci % 64);
        }
    }

    // Assign i := ci, removing ci from uncolored neighbors. False when some
    // neighbor's list empties.
    bool assign(int i, int ci) {
        color_[i] = ci;
        trail_.push_back({0, i, ci});
        for (int w : adj_[i]) {
            if (color_[w] >= 0 || !has_color(w, ci)) continue;
            avail_[w * words_ + ci / 64] &= ~(1ULL << (ci % 64));
            trail_.push_back({1, w, ci});
            if (avail_count(w) == 0) return false;
        }
        return true;
    }

    // Connected pieces of the uncolored set, each sorted, ordered by first
    // member.
    std::vector<std::vector<int>> split(const std::vector<int>& set) const {
        std::vector<char> in_set(verts_.size(), 0), seen(verts_.size(), 0);
        for (int i : set) in_set[i] = 1;
        std::vector<std::vector<int>> out;
        for (int start : set) {
            if (seen[start]) continue;
            std::vector<int> comp, queue{start};
            seen[start] = 1;
            while (!queue.empty()) {
                int v = queue.back();
                queue.pop_back();
                comp.push_back(v);
                for (int w : adj_[v])
                    if (in_set[w] && !seen[w]) {
                        seen[w] = 1;
                        queue.push_back(w);
                    }
            }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        return out;
    }

    Verdict search(const std::vector<int>& set) {
        if (set.empty()) return Verdict::Colorable;
        auto comps = split(set);
        if (comps.size() > 1) {
            size_t mark = trail_mark();
            for (const auto& comp : comps) {
                Verdict v = search(comp);
                if (v != Verdict::Colorable) {
                    rollback(mark);
                    return v;
                }
            }
            return Verdict::Colorable;
        }

        const std::vector<int>& comp = comps.front();
        // Forced vertices (one or zero remaining colors) take priority;
        // otherwise pick the smallest remaining-colors-to-degree ratio, with
        // ties by remaining colors then index. High-degree hub vertices get
        // decided before the short-list leaves that hang off them.
        int best = -1, best_count = 0, best_deg = 0;
        for (int i : comp) {
            int c = avail_count(i);
            if (c <= 1) {
                best = i;
                best_count = c;
                break;
            }
            int d = 0;
            for (int w : adj_[i])
                if (color_[w] < 0) ++d;
            if (best < 0 ||
                static_cast<long long>(c) * (1 + best_deg) <
                    static_cast<long long>(best_count) * (1 + d) ||
                (static_cast<long long>(c) * (1 + best_deg) ==
                     static_cast<long long>(best_count) * (1 + d) &&
                 c < best_count)) {
                best = i;
                best_count = c;
                best_deg = d;
            }
        }
        if (best_count == 0) return Verdict::Uncolorable;

        std::vector<int> rest;
        rest.reserve(comp.size() - 1);
        for (int i : comp)
            if (i != best) rest.push_back(i);

        for (size_t ci = 0; ci < palette_.size(); ++ci) {
            if (!has_color(best, static_cast<int>(ci))) continue;
            if (++nodes_ > node_limit_) return Verdict::BudgetExceeded;
            size_t mark = trail_mark();
            if (assign(best, static_cast<int>(ci))) {
                Verdict v = search(rest);
                if (v == Verdict::Colorable) return v;
                rollback(mark);
                if (v == Verdict::BudgetExceeded) return v;
            } else {
                rollback(mark);
            }
        }
        return Verdict::Uncolorable;
    }

    const Graph& g_;
    long long node_limit_;
    long long& nodes_;
    std::vector<Vertex> verts_;
    std::vector<int> index_;
    std::vector<std::vector<int>> adj_;
    std::vector<Color> palette_;
    size_t words_ = 1;
    std::vector<unsigned long long> avail_;
    std::vector<int> color_;
    std::vector<std::tuple<int, int, int>> trail_;
};

} // namespace

SolveResult solve_exact(const Graph& g, const ListAssignment& l, const SolveBudget& budget) {
    if (l.num_vertices() != g.num_vertices())
        throw PreconditionError("solve_exact: list assignment size mismatch");
    SolveResult res;
    res.coloring = Coloring(g.num_vertices());
    res.nodes = 0;
    long long limit = budget.effective_max_nodes();

    for (const auto& comp : g.components()) {
        ComponentSolver solver(g, comp, l, limit, res.nodes);
        Verdict v = solver.solve(res.coloring);
        if (v == Verdict::BudgetExceeded) {
            res.verdict = v;
            return res;
        }
        if (v == Verdict::Uncolorable) {
            res.verdict = v;
            res.coloring = Coloring(g.num_vertices());
            // Attach a certificate opportunistically for connected inputs in
            // the degree-list regime.
            if (g.is_connected()) {
                bool degree_lists = true;
                for (Vertex u = 0; u < g.num_vertices(); ++u)
                    if (l.list_size(u) < g.degree(u)) degree_lists = false;
                if (degree_lists) res.certificate = uncolorability_certificate(g, l);
            }
            return res;
        }
    }
    res.verdict = Verdict::Colorable;
    return res;
}

bool check_certificate(const Graph& g, const ListAssignment& l, const BlockListCertificate& cert) {
    if (cert.blocks.size() != cert.block_lists.size()) return false;
    auto dec = block_decomposition(g);
    // Blocks must be exactly the graph's blocks with the right list sizes.
    if (cert.blocks.size() != dec.blocks.size()) return false;
    std::set<std::vector<Vertex>> declared(cert.blocks.begin(), cert.blocks.end());
    std::set<std::vector<Vertex>> actual(dec.blocks.begin(), dec.blocks.end());
    if (declared != actual) return false;

    for (size_t b = 0; b < cert.blocks.size(); ++b) {
        const auto& blk = cert.blocks[b];
        int edge_count = 0;
        for (size_t i = 0; i < dec.blocks.size(); ++i)
            if (dec.blocks[i] == blk) edge_count = dec.block_edge_count[i];
        size_t expected;
        if (block_is_complete(blk, edge_count))
            expected = blk.size() - 1;
        else if (block_is_odd_cycle(g, blk, edge_count))
            expected = 2;
        else
            return false;
        if (cert.block_lists[b].size() != expected) return false;
    }

    // Disjointness across blocks sharing a vertex, and union per vertex.
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        std::vector<Color> acc;
        for (size_t b = 0; b < cert.blocks.size(); ++b) {
            if (!std::binary_search(cert.blocks[b].begin(), cert.blocks[b].end(), v)) continue;
            for (Color c : cert.block_lists[b]) {
                if (std::find(acc.begin(), acc.end(), c) != acc.end()) return false;  // overlap
                acc.push_back(c);
            }
        }
        std::sort(acc.begin(), acc.end());
        if (acc != l.list(v)) return false;
    }
    return true;
}

std::optional<BlockListCertificate> uncolorability_certificate(const Graph& g,
                                                              const ListAssignment& l) {
    if (!g.is_connected())
        throw PreconditionError("uncolorability_certificate: graph must be connected");
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (l.list_size(v) < g.degree(v)) return std::nullopt;

    auto dec = block_decomposition(g);
    const size_t nb = dec.blocks.size();
    std::vector<size_t> target(nb);
    for (size_t b = 0; b < nb; ++b) {
        if (dec.blocks[b].size() >= 2 && block_is_complete(dec.blocks[b], dec.block_edge_count[b]))
            target[b] = dec.blocks[b].size() - 1;
        else if (block_is_odd_cycle(g, dec.blocks[b], dec.block_edge_count[b]))
            target[b] = 2;
        else
            return std::nullopt;  // K1 block or non-Gallai block: no certificate
    }

    std::vector<std::vector<Color>> current(l.lists());
    std::vector<char> done(nb, 0);
    std::vector<int> open_blocks(g.num_vertices(), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        open_blocks[v] = static_cast<int>(dec.blocks_of_vertex[v].size());

    BlockListCertificate cert;
    cert.blocks.resize(nb);
    cert.block_lists.resize(nb);

    // Leaf-first propagation: a leaf block's color set is forced to equal
    // the common current list of its non-attachment vertices.
    size_t processed = 0;
    while (processed < nb) {
        int pick = -1;
        for (size_t b = 0; b < nb; ++b) {
            if (done[b]) continue;
            int open_cuts = 0;
            for (Vertex v : dec.blocks[b])
                if (open_blocks[v] > 1) ++open_cuts;
            if (open_cuts <= 1) {
                pick = static_cast<int>(b);
                break;
            }
        }
        if (pick < 0) throw InternalError("certificate search: no leaf block found");

        const auto& blk = dec.blocks[pick];
        std::optional<Vertex> attach;
        std::vector<Vertex> members;
        for (Vertex v : blk) {
            if (open_blocks[v] > 1)
                attach = v;
            else
                members.push_back(v);
        }
        if (members.empty()) throw InternalError("certificate search: block with no free vertex");

        const std::vector<Color>& forced = current[members.front()];
        if (forced.size() != target[pick]) return std::nullopt;
        for (Vertex v : members)
            if (current[v] != forced) return std::nullopt;
        if (attach) {
            // forced must sit inside the attachment's remaining list.
            std::vector<Color> rest;
            std::set_difference(current[*attach].begin(), current[*attach].end(), forced.begin(),
                                forced.end(), std::back_inserter(rest));
            if (current[*attach].size() - rest.size() != forced.size()) return std::nullopt;
            current[*attach] = std::move(rest);
        }
        cert.blocks[pick] = blk;
        cert.block_lists[pick] = forced;
        done[pick] = 1;
        ++processed;
        for (Vertex v : blk) --open_blocks[v];
    }
    return cert;
}

namespace {

// Working state for the degree-choosable construction: alive subset of the
// original graph with shrunken lists.
struct ChoosState {
    const Graph& g;
    std::vector<char> alive;
    std::vector<std::vector<Color>> lists;
    Coloring coloring;
    ChoosableColoring* out;

    int deg(Vertex v) const {
        int d = 0;
        for (Vertex w : g.neighbors(v))
            if (alive[w]) ++d;
        return d;
    }

    void assign(Vertex v, Color c) {
        coloring.set(v, c);
        alive[v] = 0;
        for (Vertex w : g.neighbors(v)) {
            if (!alive[w]) continue;
            auto& lw = lists[w];
            auto it = std::lower_bound(lw.begin(), lw.end(), c);
            if (it != lw.end() && *it == c) lw.erase(it);
        }
    }

    std::vector<Vertex> alive_vertices() const {
        std::vector<Vertex> out_v;
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (alive[v]) out_v.push_back(v);
        return out_v;
    }
};

// Color all alive vertices greedily in reverse-BFS order from root; valid
// whenever the root has list surplus and everything else has list >= degree.
void reverse_bfs_greedy(ChoosState& st, Vertex root) {
    auto verts = st.alive_vertices();
    auto [sub, mapping] = st.g.induced_subgraph(verts);
    int root_local = static_cast<int>(
        std::lower_bound(mapping.begin(), mapping.end(), root) - mapping.begin());
    auto dist = sub.bfs_distances({root_local});
    std::vector<int> order(mapping.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] > dist[b]; });
    for (int i : order) {
        Vertex v = mapping[i];
        Color pick = -1;
        for (Color c : st.lists[v]) {
            bool clash = false;
            for (Vertex w : st.g.neighbors(v))
                if (st.coloring.color(w) == c) {
                    clash = true;
                    break;
                }
            if (!clash) {
                pick = c;
                break;
            }
        }
        if (pick < 0) throw InternalError("degree-choosable greedy ran out of colors");
        st.assign(v, pick);
    }
}

bool is_connected_without(const Graph& g, const std::vector<char>& alive, Vertex skip1,
                          Vertex skip2) {
    std::vector<Vertex> verts;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (alive[v] && v != skip1 && v != skip2) verts.push_back(v);
    if (verts.empty()) return false;
    auto comps = g.induced_components(verts);
    return comps.size() == 1;
}

void choose_step(ChoosState& st) {
    for (;;) {
        auto verts = st.alive_vertices();
        if (verts.empty()) return;
        auto [sub, mapping] = st.g.induced_subgraph(verts);
        if (!sub.is_connected())
            throw InternalError("degree-choosable: working graph disconnected");

        if (verts.size() == 1) {
            Vertex v = verts[0];
            if (st.lists[v].empty()) throw InternalError("degree-choosable: empty list");
            st.assign(v, st.lists[v].front());
            return;
        }

        // (i) a vertex with more colors than uncolored neighbors.
        for (Vertex v : verts)
            if (static_cast<int>(st.lists[v].size()) > st.deg(v)) {
                st.out->steps.push_back("surplus@" + std::to_string(v));
                reverse_bfs_greedy(st, v);
                return;
            }

        auto dec = block_decomposition(sub);
        auto is_cut_local = [&](int i) { return dec.is_cut_vertex(i); };

        // (ii) adjacent non-cut vertices with different lists: color one from
        // the difference, leaving surplus behind.
        for (const auto& [a, b] : sub.edges()) {
            if (is_cut_local(a) || is_cut_local(b)) continue;
            Vertex u = mapping[a], v = mapping[b];
            if (st.lists[u] == st.lists[v]) continue;
            std::vector<Color> diff;
            std::set_difference(st.lists[u].begin(), st.lists[u].end(), st.lists[v].begin(),
                                st.lists[v].end(), std::back_inserter(diff));
            Vertex chosen = u;
            if (diff.empty()) {
                std::set_difference(st.lists[v].begin(), st.lists[v].end(), st.lists[u].begin(),
                                    st.lists[u].end(), std::back_inserter(diff));
                chosen = v;
            }
            st.out->steps.push_back("unequal-pair@" + std::to_string(chosen));
            st.assign(chosen, diff.front());
            goto next_round;
        }

        // A bare even cycle reaches this point with equal 2-lists; color it
        // alternately. (Removing any two nonadjacent cycle vertices
        // disconnects it, so the reduction below never applies to cycles.)
        if (sub.num_edges() == sub.num_vertices() && sub.num_vertices() % 2 == 0 &&
            sub.max_degree() == 2) {
            std::vector<Vertex> order{mapping[0]};
            Vertex prev = -1, cur = mapping[0];
            while (order.size() < mapping.size()) {
                Vertex next = -1;
                for (Vertex w : st.g.neighbors(cur))
                    if (st.alive[w] && w != prev && next < 0) next = w;
                order.push_back(next);
                prev = cur;
                cur = next;
            }
            const auto lst = st.lists[order[0]];
            st.out->steps.push_back("even-cycle");
            for (size_t i = 0; i < order.size(); ++i)
                st.assign(order[i], lst[i % 2]);
            return;
        }

        // (iii) classic reduction inside a block that is neither complete nor
        // an odd cycle: two nonadjacent neighbors of a common vertex get the
        // same color; removing them leaves the graph connected with surplus.
        {
            for (size_t b = 0; b < dec.blocks.size(); ++b) {
                if (block_is_complete(dec.blocks[b], dec.block_edge_count[b])) continue;
                if (block_is_odd_cycle(sub, dec.blocks[b], dec.block_edge_count[b])) continue;
                for (Vertex mid : dec.blocks[b]) {
                    if (is_cut_local(mid)) continue;
                    const auto& nbm = sub.neighbors(mid);
                    for (size_t i = 0; i < nbm.size(); ++i)
                        for (size_t j = i + 1; j < nbm.size(); ++j) {
                            int a = nbm[i], c = nbm[j];
                            if (is_cut_local(a) || is_cut_local(c)) continue;
                            if (sub.has_edge(a, c)) continue;
                            if (!is_connected_without(st.g, st.alive, mapping[a], mapping[c]))
                                continue;
                            Vertex ua = mapping[a], uc = mapping[c];
                            std::vector<Color> common;
                            std::set_intersection(st.lists[ua].begin(), st.lists[ua].end(),
                                                  st.lists[uc].begin(), st.lists[uc].end(),
                                                  std::back_inserter(common));
                            if (common.empty()) continue;
                            st.out->steps.push_back("same-color-pair@" + std::to_string(ua) + "," +
                                                    std::to_string(uc));
                            Color col = common.front();
                            st.assign(ua, col);
                            st.assign(uc, col);
                            goto next_round;
                        }
                }
            }
        }

        // (iv) Gallai tree with tight equal-list structure: either a
        // certificate exists (uncolorable) or the oracle finds a coloring.
        {
            std::vector<std::vector<Color>> sub_lists(mapping.size());
            for (size_t i = 0; i < mapping.size(); ++i) sub_lists[i] = st.lists[mapping[i]];
            ListAssignment sl((std::vector<std::vector<Color>>(sub_lists)));
            if (auto cert = uncolorability_certificate(sub, sl))
                throw PreconditionError(
                    "color_degree_choosable: the certificate obstruction holds (certificate exists)");
            auto res = solve_exact(sub, sl, {});
            if (res.verdict != Verdict::Colorable)
                throw InternalError("degree-choosable fallback: oracle failed to color");
            st.out->used_exact_fallback = true;
            st.out->steps.push_back("exact-fallback");
            for (size_t i = 0; i < mapping.size(); ++i)
                st.assign(mapping[i], res.coloring.color(static_cast<int>(i)));
            return;
        }
    next_round:;
    }
}

} // namespace

ChoosableColoring color_degree_choosable(const Graph& g, const ListAssignment& l) {
    if (!g.is_connected())
        throw PreconditionError("color_degree_choosable: graph must be connected");
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (l.list_size(v) < g.degree(v))
            throw PreconditionError("color_degree_choosable: |L(v)| < d(v) at vertex " +
                                    std::to_string(v));
    ChoosableColoring out;
    out.coloring = Coloring(g.num_vertices());
    ChoosState st{g, std::vector<char>(g.num_vertices(), 1),
                  std::vector<std::vector<Color>>(l.lists()), Coloring(g.num_vertices()), &out};
    while (!st.alive_vertices().empty()) choose_step(st);
    out.coloring = st.coloring;
    if (!check_coloring(g, l, out.coloring))
        throw InternalError("color_degree_choosable produced an invalid coloring");
    return out;
}

} // namespace lcol
