#include "lcol/peel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lcol/structure.hpp"

namespace lcol {

std::string peel_mode_name(PeelMode m) { return m == PeelMode::K8 ? "k8" : "3conn"; }

int PeelTrace::max_deletions_per_big_vertex() const {
    int best = 0;
    for (const auto& rec : components)
        for (const auto& [v, n] : rec.deleted_from_big) best = std::max(best, n);
    for (const auto& child : children) best = std::max(best, child.max_deletions_per_big_vertex());
    return best;
}

namespace {

void trace_text(const PeelTrace& t, std::ostringstream& out, int depth) {
    std::string pad(2 * depth, ' ');
    out << pad << "peel mode=" << peel_mode_name(t.mode) << " k=" << t.k
        << " minor-check=" << (t.minor_freeness_verified ? "verified" : "assumed")
        << " solver-nodes=" << t.solver_nodes << "\n";
    for (const auto& n : t.notes) out << pad << "note " << n << "\n";
    for (const auto& rec : t.components) {
        out << pad << "component [";
        for (size_t i = 0; i < rec.component.size(); ++i)
            out << (i ? "," : "") << rec.component[i];
        out << "] case=" << rec.label.id << " (" << rec.label.justification << ")";
        if (!rec.precolored.empty()) {
            out << " colored";
            for (auto [v, c] : rec.precolored) out << " " << v << ":" << c;
        }
        for (const auto& [v, cols] : rec.reservations) {
            out << " reserve " << v << ":{";
            for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
            out << "}";
        }
        if (!rec.deleted_from_big.empty()) {
            out << " deleted";
            for (const auto& [v, n] : rec.deleted_from_big) out << " " << v << "-=" << n;
        }
        if (!rec.aux_edges.empty()) {
            out << " aux";
            for (const auto& [u, v] : rec.aux_edges) out << " " << u << "-" << v;
        }
        if (!rec.deferred.empty()) {
            out << " deferred=[";
            for (size_t i = 0; i < rec.deferred.size(); ++i)
                out << (i ? "," : "") << rec.deferred[i];
            out << "] condition=" << rec.reinsert_condition;
        }
        out << "\n";
    }
    for (const auto& child : t.children) trace_text(child, out, depth + 1);
}

} // namespace

std::string PeelTrace::to_text() const {
    std::ostringstream out;
    trace_text(*this, out, 0);
    return out.str();
}

namespace {

struct Work {
    const Graph& g;
    int k;
    PeelMode mode;
    PeelOptions opts;
    int deletion_limit;
    std::vector<char> alive;
    std::vector<std::vector<Color>> lists;
    Coloring coloring;

    Work(const Graph& gr, const ListAssignment& l, int kk, PeelMode m, const PeelOptions& o)
        : g(gr),
          k(kk),
          mode(m),
          opts(o),
          deletion_limit(m == PeelMode::K8 ? 3 : (kk == 6 ? 1 : 2)),
          alive(gr.num_vertices(), 1),
          lists(l.lists()),
          coloring(gr.num_vertices()) {}

    int deg(Vertex v) const {
        int d = 0;
        for (Vertex w : g.neighbors(v))
            if (alive[w]) ++d;
        return d;
    }

    std::vector<Vertex> alive_nbrs(Vertex v) const {
        std::vector<Vertex> out;
        for (Vertex w : g.neighbors(v))
            if (alive[w]) out.push_back(w);
        return out;
    }

    void erase_color(Vertex w, Color c, ComponentRecord* rec, const std::set<Vertex>* big) {
        auto& lw = lists[w];
        auto it = std::lower_bound(lw.begin(), lw.end(), c);
        if (it == lw.end() || *it != c) return;
        lw.erase(it);
        if (rec && big && big->count(w)) {
            int& n = rec->deleted_from_big[w];
            if (++n > deletion_limit)
                throw InternalError("peel: big vertex " + std::to_string(w) + " lost " +
                                    std::to_string(n) + " colors (limit " +
                                    std::to_string(deletion_limit) + ")");
        }
    }

    void assign(Vertex v, Color c, ComponentRecord* rec = nullptr,
                const std::set<Vertex>* big = nullptr) {
        coloring.set(v, c);
        alive[v] = 0;
        for (Vertex w : g.neighbors(v))
            if (alive[w] && !coloring.is_colored(w)) erase_color(w, c, rec, big);
        if (rec) rec->precolored.push_back({v, c});
    }
};

// Execution plan produced by classification.
struct CasePlan {
    CaseLabel label;
    std::vector<Vertex> block;         // the relevant block / cycle, sorted
    std::optional<Vertex> attachment;  // its cut vertex in H, when present
    std::vector<Vertex> free_path;     // cycle order minus the excluded vertex
    std::vector<Vertex> cycle_order;   // full cycle order (case 2 deep)
    Vertex to_color = -1;
    Color use_color = -1;
    Vertex witness = -1;
    Vertex reserve_at = -1;
    int reserve_count = 0;
    Vertex aux_w = -1;
    Vertex aux_target = -1;
    std::vector<Vertex> trio;
};

std::vector<Vertex> cycle_walk(const Graph& hg, const std::vector<Vertex>& mapping,
                               const std::vector<Vertex>& block, std::optional<Vertex> start_opt) {
    // Returns the block's vertices (original ids) in cycle order, starting at
    // `start` and moving toward its smaller-id neighbor.
    std::set<Vertex> in_block(block.begin(), block.end());
    Vertex start = start_opt ? *start_opt : block.front();
    std::vector<Vertex> order{start};
    std::map<Vertex, int> to_local;
    for (size_t i = 0; i < mapping.size(); ++i) to_local[mapping[i]] = static_cast<int>(i);
    Vertex prev = -1, cur = start;
    while (order.size() < block.size()) {
        std::vector<Vertex> nbrs;
        for (int wl : hg.neighbors(to_local.at(cur))) {
            Vertex w = mapping[wl];
            if (in_block.count(w) && w != prev) nbrs.push_back(w);
        }
        std::sort(nbrs.begin(), nbrs.end());
        if (nbrs.empty()) throw InternalError("cycle walk failed");
        order.push_back(nbrs.front());
        prev = cur;
        cur = nbrs.front();
    }
    return order;
}

class Machine {
public:
    Machine(Work& w, PeelTrace& trace) : w_(w), trace_(trace) {}

    void run_component(const std::vector<Vertex>& comp);
    CasePlan classify(const std::vector<Vertex>& H) const;

private:
    Work& w_;
    PeelTrace& trace_;

    CasePlan classify_k8(const Graph& hg, const std::vector<Vertex>& mapping,
                         const std::vector<Vertex>& H, const BlockDecomposition& dec) const;
    CasePlan classify_3conn(const Graph& hg, const std::vector<Vertex>& mapping,
                            const std::vector<Vertex>& H, const BlockDecomposition& dec) const;

    bool find_prep_pair(const std::vector<std::pair<Vertex, Vertex>>& pairs, CasePlan& plan) const;
    bool find_aux(const std::vector<std::pair<Vertex, Vertex>>& ordered_pairs,
                  const std::set<Vertex>& big, CasePlan& plan) const;

    void act(const CasePlan& plan, const std::vector<Vertex>& H, ComponentRecord& rec,
             const std::set<Vertex>& big, std::vector<Edge>& aux_edges);
    void solve_remainder(const std::vector<Vertex>& big_side, const std::vector<Edge>& aux_edges);
    void reinsert(ComponentRecord& rec);
    void finish_degree_lists(const std::vector<Vertex>& comp);
    void solve_oracle(const std::vector<Vertex>& comp);

    friend struct PeelRunner;
};

CasePlan Machine::classify(const std::vector<Vertex>& H) const {
    auto [hg, mapping] = w_.g.induced_subgraph(H);
    CasePlan plan;
    plan.label.mode = w_.mode;

    auto gall = is_gallai_tree(hg);
    if (!gall.is_gallai_tree) {
        plan.label.id = "defer-i";
        plan.label.justification = "component is not a Gallai tree";
        return plan;
    }
    for (Vertex v : H)
        if (static_cast<int>(w_.lists[v].size()) > w_.deg(v)) {
            plan.label.id = "defer-surplus";
            plan.label.justification =
                "vertex " + std::to_string(v) + " has more colors than neighbors";
            return plan;
        }
    auto dec = block_decomposition(hg);
    return w_.mode == PeelMode::K8 ? classify_k8(hg, mapping, H, dec)
                                   : classify_3conn(hg, mapping, H, dec);
}

bool Machine::find_prep_pair(const std::vector<std::pair<Vertex, Vertex>>& pairs,
                             CasePlan& plan) const {
    for (auto [u, v] : pairs) {
        std::vector<Color> diff;
        std::set_difference(w_.lists[u].begin(), w_.lists[u].end(), w_.lists[v].begin(),
                            w_.lists[v].end(), std::back_inserter(diff));
        if (!diff.empty()) {
            plan.to_color = u;
            plan.use_color = diff.front();
            plan.witness = v;
            return true;
        }
    }
    return false;
}

bool Machine::find_aux(const std::vector<std::pair<Vertex, Vertex>>& ordered_pairs,
                       const std::set<Vertex>& big, CasePlan& plan) const {
    for (auto [vi, vj] : ordered_pairs) {
        for (Vertex w : w_.alive_nbrs(vi)) {
            if (!big.count(w)) continue;
            if (!w_.g.has_edge(w, vj)) {
                plan.aux_w = w;
                plan.aux_target = vj;
                plan.to_color = vi;  // the pair member adjacent to w
                plan.witness = vj;
                return true;
            }
        }
    }
    return false;
}

CasePlan Machine::classify_k8(const Graph& hg, const std::vector<Vertex>& mapping,
                              const std::vector<Vertex>& H, const BlockDecomposition& dec) const {
    CasePlan plan;
    plan.label.mode = PeelMode::K8;
    std::set<Vertex> big;
    for (Vertex v : H)
        for (Vertex w : w_.alive_nbrs(v))
            if (w_.deg(w) >= w_.k) big.insert(w);

    auto block_orig = [&](int b) {
        std::vector<Vertex> out;
        for (int lv : dec.blocks[b]) out.push_back(mapping[lv]);
        std::sort(out.begin(), out.end());
        return out;
    };

    if (dec.blocks.size() == 1) {
        const auto& blk = dec.blocks[0];
        if (block_is_complete(blk, dec.block_edge_count[0])) {
            if (blk.size() >= 5)
                throw PreconditionError("peel: component contains a K5 subgraph");
            plan.label.id = "1";
            plan.label.justification = "component is complete K" + std::to_string(blk.size());
            plan.block = H;
            return plan;
        }
        // Odd cycle.
        plan.label.id = "2";
        plan.block = H;
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (const auto& [a, b] : hg.edges()) {
            pairs.push_back({mapping[a], mapping[b]});
            pairs.push_back({mapping[b], mapping[a]});
        }
        std::sort(pairs.begin(), pairs.end());
        if (find_prep_pair(pairs, plan)) {
            plan.label.justification = "odd cycle with unequal adjacent lists";
        } else {
            plan.label.justification = "odd cycle with equal lists, 3-coloring";
            plan.cycle_order = cycle_walk(hg, mapping, H, H.front());
        }
        return plan;
    }

    // Case 3: an end block hanging off a single cut vertex of the whole graph.
    for (int b : dec.leaf_blocks()) {
        auto cuts = dec.block_cut_vertices(b);
        if (cuts.empty()) throw InternalError("peel: leaf block without attachment");
        Vertex att = mapping[cuts.front()];
        bool pendant = true;
        for (int lv : dec.blocks[b]) {
            Vertex v = mapping[lv];
            if (v == att) continue;
            std::set<Vertex> in_block;
            for (int bv : dec.blocks[b]) in_block.insert(mapping[bv]);
            for (Vertex nb : w_.alive_nbrs(v))
                if (!in_block.count(nb)) pendant = false;
        }
        if (pendant) {
            plan.label.id = "3";
            plan.label.justification = "end block pendant at cut vertex " + std::to_string(att);
            plan.block = block_orig(b);
            plan.attachment = att;
            return plan;
        }
    }

    auto leaf_of_kind = [&](BlockKind kind) -> int {
        for (int b : dec.leaf_blocks())
            if (classify_block(hg, dec.blocks[b], dec.block_edge_count[b]) == kind) return b;
        return -1;
    };

    if (int b = leaf_of_kind(BlockKind::OddCycle); b >= 0) {
        plan.label.id = "4";
        plan.block = block_orig(b);
        Vertex att = mapping[dec.block_cut_vertices(b).front()];
        plan.attachment = att;
        auto order = cycle_walk(hg, mapping, plan.block, att);
        plan.free_path.assign(order.begin() + 1, order.end());
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (size_t i = 0; i + 1 < plan.free_path.size(); ++i) {
            pairs.push_back({plan.free_path[i], plan.free_path[i + 1]});
            pairs.push_back({plan.free_path[i + 1], plan.free_path[i]});
        }
        if (find_prep_pair(pairs, plan))
            plan.label.justification = "end-block odd cycle, unequal adjacent lists";
        else
            plan.label.justification = "end-block odd cycle, matched-end 3-coloring";
        return plan;
    }
    if (int b = leaf_of_kind(BlockKind::K2); b >= 0) {
        plan.label.id = "5";
        plan.block = block_orig(b);
        Vertex att = mapping[dec.block_cut_vertices(b).front()];
        plan.attachment = att;
        plan.reserve_at = plan.block[0] == att ? plan.block[1] : plan.block[0];
        plan.reserve_count = 2;
        plan.label.justification = "end block K2, reserving two colors at " +
                                   std::to_string(plan.reserve_at);
        return plan;
    }
    if (int b = leaf_of_kind(BlockKind::K3); b >= 0) {
        plan.label.id = "6";
        plan.block = block_orig(b);
        Vertex att = mapping[dec.block_cut_vertices(b).front()];
        plan.attachment = att;
        for (Vertex v : plan.block) {
            if (v == att) continue;
            if (w_.lists[v].size() >= 3) {
                plan.reserve_at = v;
                break;
            }
        }
        if (plan.reserve_at < 0)
            throw InternalError("peel case 6: no end-block vertex with three colors");
        plan.reserve_count = 3;
        plan.label.justification = "end block K3, reserving three colors at " +
                                   std::to_string(plan.reserve_at);
        return plan;
    }

    // All end blocks are K4.
    int b = leaf_of_kind(BlockKind::K4);
    if (b < 0) throw InternalError("peel k8: unclassifiable Gallai component");
    plan.block = block_orig(b);
    Vertex att = mapping[dec.block_cut_vertices(b).front()];
    plan.attachment = att;
    for (Vertex v : plan.block)
        if (v != att) plan.trio.push_back(v);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex x : plan.trio)
        for (Vertex y : plan.trio)
            if (x != y) pairs.push_back({x, y});
    std::sort(pairs.begin(), pairs.end());
    if (find_prep_pair(pairs, plan)) {
        plan.label.id = "7";
        plan.label.justification = "K4 end blocks, unequal trio lists";
        return plan;
    }
    if (w_.lists[plan.trio.front()].size() == 3)
        throw InternalError("peel case 7: size-3 trio lists should have matched case 3");
    if (find_aux(pairs, big, plan)) {
        plan.label.id = "7a";
        plan.label.justification = "big vertex " + std::to_string(plan.aux_w) +
                                   " distinguishes trio vertices " + std::to_string(plan.to_color) +
                                   " and " + std::to_string(plan.aux_target);
        return plan;
    }
    plan.label.id = "7b";
    plan.label.justification = "every big neighbor of the trio sees all of it";
    return plan;
}

CasePlan Machine::classify_3conn(const Graph& hg, const std::vector<Vertex>& mapping,
                                 const std::vector<Vertex>& H,
                                 const BlockDecomposition& dec) const {
    CasePlan plan;
    plan.label.mode = PeelMode::ThreeConn;
    std::set<Vertex> big;
    for (Vertex v : H)
        for (Vertex w : w_.alive_nbrs(v))
            if (w_.deg(w) >= w_.k) big.insert(w);

    auto block_orig = [&](int b) {
        std::vector<Vertex> out;
        for (int lv : dec.blocks[b]) out.push_back(mapping[lv]);
        std::sort(out.begin(), out.end());
        return out;
    };

    const bool single_block = dec.blocks.size() == 1;
    if (single_block && H.size() == 1) {
        plan.label.id = "1";
        plan.label.justification = "single vertex";
        plan.block = H;
        return plan;
    }

    // Case 2: H itself is K2, or an end block K3 exists.
    std::vector<Vertex> pair;
    std::optional<Vertex> att2;
    std::vector<Vertex> block2;
    if (single_block && H.size() == 2) {
        pair = H;
        block2 = H;
    } else if (!single_block) {
        for (int b : dec.leaf_blocks())
            if (classify_block(hg, dec.blocks[b], dec.block_edge_count[b]) == BlockKind::K3) {
                block2 = block_orig(b);
                att2 = mapping[dec.block_cut_vertices(b).front()];
                for (Vertex v : block2)
                    if (v != *att2) pair.push_back(v);
                break;
            }
    }
    if (!pair.empty()) {
        plan.label.id = "2";
        plan.block = block2;
        plan.attachment = att2;
        std::vector<std::pair<Vertex, Vertex>> pairs{{pair[0], pair[1]}, {pair[1], pair[0]}};
        if (find_prep_pair(pairs, plan)) {
            plan.label.justification = att2 ? "end block K3, unequal pair lists"
                                            : "K2 component, unequal lists";
            return plan;
        }
        if (find_aux(pairs, big, plan)) {
            plan.label.id = "2a";
            plan.label.justification = "big vertex " + std::to_string(plan.aux_w) +
                                       " adjacent to " + std::to_string(plan.to_color) +
                                       " but not " + std::to_string(plan.aux_target);
            return plan;
        }
        plan.label.id = "2b";
        plan.label.justification =
            "every big neighbor of the pair sees both (contradiction branch)";
        return plan;
    }

    // Case 3: H is an odd cycle or has an end-block odd cycle.
    {
        int cyc = -1;
        std::optional<Vertex> att;
        if (single_block && block_is_odd_cycle(hg, dec.blocks[0], dec.block_edge_count[0]))
            cyc = 0;
        else if (!single_block)
            for (int b : dec.leaf_blocks())
                if (classify_block(hg, dec.blocks[b], dec.block_edge_count[b]) ==
                    BlockKind::OddCycle) {
                    cyc = b;
                    att = mapping[dec.block_cut_vertices(b).front()];
                    break;
                }
        if (cyc >= 0) {
            plan.label.id = "3";
            plan.block = block_orig(cyc);
            Vertex excluded = att ? *att : plan.block.back();  // highest id when no cut vertex
            plan.attachment = att;
            auto order = cycle_walk(hg, mapping, plan.block, excluded);
            plan.free_path.assign(order.begin() + 1, order.end());
            std::vector<std::pair<Vertex, Vertex>> pairs;
            for (size_t i = 0; i + 1 < plan.free_path.size(); ++i) {
                pairs.push_back({plan.free_path[i], plan.free_path[i + 1]});
                pairs.push_back({plan.free_path[i + 1], plan.free_path[i]});
            }
            if (find_prep_pair(pairs, plan)) {
                plan.label.justification = "odd cycle, unequal adjacent free lists";
                return plan;
            }
            if (find_aux(pairs, big, plan)) {
                plan.label.justification = "odd cycle, big vertex " + std::to_string(plan.aux_w) +
                                           " distinguishes consecutive free vertices";
                return plan;
            }
            plan.label.justification =
                "odd cycle contradiction branch: all big neighbors see every free vertex";
            plan.to_color = -1;
            return plan;
        }
    }

    // Case 4: H is K3/K4 or has an end-block K4.
    {
        int blk = -1;
        std::optional<Vertex> att;
        if (single_block && block_is_complete(dec.blocks[0], dec.block_edge_count[0])) {
            if (H.size() >= 5)
                throw PreconditionError("peel: component contains a K5 subgraph");
            blk = 0;
        } else if (!single_block) {
            for (int b : dec.leaf_blocks())
                if (classify_block(hg, dec.blocks[b], dec.block_edge_count[b]) == BlockKind::K4) {
                    blk = b;
                    att = mapping[dec.block_cut_vertices(b).front()];
                    break;
                }
        }
        if (blk >= 0) {
            plan.label.id = "4";
            plan.block = block_orig(blk);
            plan.attachment = att;
            Vertex excluded = att ? *att
                                  : (plan.block.size() == 4 ? plan.block.back() : Vertex{-1});
            for (Vertex v : plan.block)
                if (v != excluded) plan.trio.push_back(v);
            std::vector<std::pair<Vertex, Vertex>> pairs;
            for (Vertex x : plan.trio)
                for (Vertex y : plan.trio)
                    if (x != y) pairs.push_back({x, y});
            std::sort(pairs.begin(), pairs.end());
            if (find_prep_pair(pairs, plan)) {
                plan.label.justification = "complete block, unequal trio lists";
                return plan;
            }
            if (find_aux(pairs, big, plan)) {
                plan.label.justification = "complete block, big vertex " +
                                           std::to_string(plan.aux_w) + " distinguishes " +
                                           std::to_string(plan.to_color) + " and " +
                                           std::to_string(plan.aux_target);
                return plan;
            }
            plan.label.justification =
                "complete-block contradiction branch: all big neighbors see the whole trio";
            plan.to_color = -1;
            return plan;
        }
    }

    // Case 5: all end blocks are K2.
    for (int b : dec.leaf_blocks())
        if (classify_block(hg, dec.blocks[b], dec.block_edge_count[b]) != BlockKind::K2)
            throw InternalError("peel 3conn: unclassifiable Gallai component");
    plan.label.id = "5";
    int b = dec.leaf_blocks().front();
    plan.block = block_orig(b);
    Vertex att = mapping[dec.block_cut_vertices(b).front()];
    plan.attachment = att;
    plan.reserve_at = plan.block[0] == att ? plan.block[1] : plan.block[0];
    plan.reserve_count = 2;
    plan.label.justification =
        "all end blocks K2, reserving two colors at " + std::to_string(plan.reserve_at);
    return plan;
}

void Machine::act(const CasePlan& plan, const std::vector<Vertex>& H, ComponentRecord& rec,
                  const std::set<Vertex>& big, std::vector<Edge>& aux_edges) {
    const std::string& id = plan.label.id;
    if (id == "defer-i" || id == "defer-surplus") {
        rec.deferred = H;
        return;
    }
    auto block_text = [&]() {
        std::string s = "{";
        for (size_t i = 0; i < plan.block.size(); ++i)
            s += (i ? "," : "") + std::to_string(plan.block[i]);
        return s + "}";
    };
    if (w_.mode == PeelMode::ThreeConn && id == "2b")
        throw InternalError(
            "peel 3conn case 2b: every big neighbor of the pair in block " + block_text() +
            " sees both vertices, so the big side, the pair, and their common neighbors "
            "contract to a K5 (or 3-connectivity fails); the input is outside the "
            "procedure's class");
    if (w_.mode == PeelMode::ThreeConn && (id == "3" || id == "4") && plan.to_color == -1 &&
        plan.reserve_at == -1 && plan.aux_w == -1 && plan.use_color == -1 &&
        plan.label.justification.find("contradiction") != std::string::npos)
        throw InternalError(
            "peel 3conn case " + id + ": every big neighbor of block " + block_text() +
            " sees all of its free vertices, which yields a K5 minor from two such neighbors "
            "and three block vertices; the input is outside the procedure's class");

    if (id == "1") {
        if (w_.mode == PeelMode::ThreeConn) {
            Vertex v = H.front();
            if (w_.lists[v].empty()) throw InternalError("peel case 1: empty list");
            w_.assign(v, w_.lists[v].front(), &rec, &big);
            return;
        }
        // Complete component: no big vertex may see all of a K4, otherwise a
        // K5 subgraph is present.
        if (H.size() == 4)
            for (Vertex w : big) {
                int count = 0;
                for (Vertex v : H)
                    if (w_.g.has_edge(w, v)) ++count;
                if (count >= 4)
                    throw PreconditionError(
                        "peel case 1: big vertex adjacent to a whole K4 component (K5 subgraph)");
            }
        std::vector<Vertex> order(H);
        std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            return w_.lists[a].size() < w_.lists[b].size();
        });
        for (Vertex v : order) {
            Color pick = -1;
            for (Color c : w_.lists[v]) {
                bool used = false;
                for (Vertex u : H)
                    if (u != v && w_.coloring.color(u) == c && w_.g.has_edge(u, v)) used = true;
                if (!used) {
                    pick = c;
                    break;
                }
            }
            if (pick < 0) throw InternalError("peel case 1: clique coloring failed");
            w_.assign(v, pick, &rec, &big);
        }
        return;
    }

    if (plan.aux_w >= 0) {  // 7a / 2a / 3 aux / 4 aux
        rec.deferred = H;
        for (Vertex x : w_.alive_nbrs(plan.aux_target)) {
            if (!big.count(x) || x == plan.aux_w) continue;
            if (!w_.g.has_edge(plan.aux_w, x)) {
                Edge e{std::min(plan.aux_w, x), std::max(plan.aux_w, x)};
                if (std::find(aux_edges.begin(), aux_edges.end(), e) == aux_edges.end()) {
                    aux_edges.push_back(e);
                    rec.aux_edges.push_back(e);
                }
            }
        }
        return;
    }

    if (plan.to_color >= 0 && plan.use_color >= 0) {  // prep branches
        w_.assign(plan.to_color, plan.use_color, &rec, &big);
        for (Vertex v : H)
            if (v != plan.to_color) rec.deferred.push_back(v);
        return;
    }

    if (id == "2" && !plan.cycle_order.empty()) {  // k8 equal-list odd cycle
        const auto& lst = w_.lists[plan.cycle_order.front()];
        if (lst.size() < 3)
            throw InternalError("peel case 2: equal-list cycle with fewer than three colors");
        Color c1 = lst[0], c2 = lst[1], c3 = lst[2];
        const auto& ord = plan.cycle_order;
        for (size_t i = 0; i + 1 < ord.size(); ++i)
            w_.assign(ord[i], (i % 2 == 0 ? c1 : c2), &rec, &big);
        w_.assign(ord.back(), c3, &rec, &big);
        return;
    }

    if (id == "4" && w_.mode == PeelMode::K8) {  // matched-end 3-coloring
        const auto& path = plan.free_path;
        const auto& lst = w_.lists[path.front()];
        if (lst.size() < 3) throw InternalError("peel case 4: fewer than three colors");
        Color c1 = lst[0], c2 = lst[1], c3 = lst[2];
        for (size_t i = 0; i < path.size(); ++i) {
            Color c = (i == 0 || i + 1 == path.size()) ? c1 : (i % 2 == 1 ? c2 : c3);
            w_.assign(path[i], c, &rec, &big);
        }
        for (Vertex v : H)
            if (!w_.coloring.is_colored(v)) rec.deferred.push_back(v);
        return;
    }

    if (plan.reserve_at >= 0) {  // cases 5 and 6
        Vertex u = plan.reserve_at;
        if (w_.mode == PeelMode::ThreeConn && w_.k == 6)
            throw PreconditionError(
                "peel 3conn with k=6 cannot handle K2 end blocks (experimental mode limit)");
        if (static_cast<int>(w_.lists[u].size()) < plan.reserve_count)
            throw InternalError("peel reserve: list too small at " + std::to_string(u));
        std::vector<Color> keep(w_.lists[u].begin(), w_.lists[u].begin() + plan.reserve_count);
        for (Color c : keep)
            for (Vertex x : w_.alive_nbrs(u))
                if (big.count(x)) w_.erase_color(x, c, &rec, &big);
        w_.lists[u] = keep;
        rec.reservations.push_back({u, keep});
        rec.deferred = H;
        return;
    }

    throw InternalError("peel: no action for case " + id);
}

void Machine::solve_oracle(const std::vector<Vertex>& comp) {
    auto [sub, mapping] = w_.g.induced_subgraph(comp);
    std::vector<std::vector<Color>> lists(mapping.size());
    for (size_t i = 0; i < mapping.size(); ++i) lists[i] = w_.lists[mapping[i]];
    auto res = solve_exact(sub, ListAssignment(std::move(lists)), w_.opts.budget);
    trace_.solver_nodes += res.nodes;
    if (res.verdict == Verdict::BudgetExceeded)
        throw BudgetError("peel: inner solve exceeded the node budget");
    if (res.verdict == Verdict::Uncolorable)
        throw PreconditionError(
            "peel: remainder with lists of size >= 5 is uncolorable; the input cannot be "
            "K5-minor-free");
    for (size_t i = 0; i < mapping.size(); ++i)
        w_.assign(mapping[i], res.coloring.color(static_cast<int>(i)));
}

void Machine::finish_degree_lists(const std::vector<Vertex>& comp) {
    auto [sub, mapping] = w_.g.induced_subgraph(comp);
    std::vector<std::vector<Color>> lists(mapping.size());
    for (size_t i = 0; i < mapping.size(); ++i) lists[i] = w_.lists[mapping[i]];
    auto res = color_degree_choosable(sub, ListAssignment(std::move(lists)));
    if (res.used_exact_fallback) trace_.notes.push_back("degree-list finish used exact fallback");
    for (size_t i = 0; i < mapping.size(); ++i)
        w_.assign(mapping[i], res.coloring.color(static_cast<int>(i)));
}

void Machine::solve_remainder(const std::vector<Vertex>& big_side,
                              const std::vector<Edge>& aux_edges) {
    if (big_side.empty()) {
        if (!aux_edges.empty()) throw InternalError("peel: aux edges without a big side");
        return;
    }
    for (Vertex v : big_side)
        if (w_.lists[v].size() < 5)
            throw InternalError("peel: big vertex " + std::to_string(v) +
                                " has fewer than 5 colors before the remainder solve");
    auto [sub, mapping] = w_.g.induced_subgraph(big_side);
    std::vector<Edge> edges(sub.edges());
    std::map<Vertex, int> index;
    for (size_t i = 0; i < mapping.size(); ++i) index[mapping[i]] = static_cast<int>(i);
    for (const auto& [u, v] : aux_edges) edges.push_back({index.at(u), index.at(v)});
    Graph solved_graph(sub.num_vertices(), std::move(edges));

    if (!aux_edges.empty() && w_.opts.verify_minor_free != MinorCheck::Never &&
        solved_graph.num_vertices() <= w_.opts.minor_check_max_vertices) {
        auto minor = has_k5_minor(solved_graph, w_.opts.minor_node_budget);
        if (minor.status == MinorResult::Status::Yes)
            throw PreconditionError(
                "peel: auxiliary edges produced a K5 minor; the input cannot be K5-minor-free");
        trace_.notes.push_back(minor.status == MinorResult::Status::No
                                   ? "aux-edge graph verified K5-minor-free"
                                   : "aux-edge minor check hit its budget; assumed");
    } else if (!aux_edges.empty()) {
        trace_.notes.push_back("aux-edge graph minor-freeness trusted (not checked)");
    }

    std::vector<std::vector<Color>> lists(mapping.size());
    for (size_t i = 0; i < mapping.size(); ++i) lists[i] = w_.lists[mapping[i]];
    auto res = solve_exact(solved_graph, ListAssignment(std::move(lists)), w_.opts.budget);
    trace_.solver_nodes += res.nodes;
    if (res.verdict == Verdict::BudgetExceeded)
        throw BudgetError("peel: remainder solve exceeded the node budget");
    if (res.verdict == Verdict::Uncolorable)
        throw PreconditionError(
            "peel: big-side remainder uncolorable on lists of size >= 5; input cannot be "
            "K5-minor-free");
    for (size_t i = 0; i < mapping.size(); ++i)
        w_.assign(mapping[i], res.coloring.color(static_cast<int>(i)));
}

void Machine::reinsert(ComponentRecord& rec) {
    if (rec.deferred.empty()) return;
    auto [sub, mapping] = w_.g.induced_subgraph(rec.deferred);
    if (!sub.is_connected()) throw InternalError("peel: deferred subgraph is disconnected");

    auto gall = is_gallai_tree(sub);
    std::string cond;
    if (!gall.is_gallai_tree) {
        cond = "i";
    } else {
        for (size_t i = 0; i < mapping.size() && cond.empty(); ++i)
            if (static_cast<int>(w_.lists[mapping[i]].size()) > sub.degree(static_cast<int>(i)))
                cond = "ii";
        if (cond.empty()) {
            auto dec = block_decomposition(sub);
            for (const auto& [a, b] : sub.edges()) {
                if (dec.is_cut_vertex(a) || dec.is_cut_vertex(b)) continue;
                if (w_.lists[mapping[a]] != w_.lists[mapping[b]]) {
                    cond = "iii";
                    break;
                }
            }
        }
    }
    if (cond.empty())
        throw InternalError("peel: deferred component satisfies none of (i)/(ii)/(iii)");
    rec.reinsert_condition = cond;

    std::vector<std::vector<Color>> lists(mapping.size());
    for (size_t i = 0; i < mapping.size(); ++i) lists[i] = w_.lists[mapping[i]];
    auto res = color_degree_choosable(sub, ListAssignment(std::move(lists)));
    if (res.used_exact_fallback)
        trace_.notes.push_back("reinsertion used exact fallback");
    for (size_t i = 0; i < mapping.size(); ++i)
        w_.assign(mapping[i], res.coloring.color(static_cast<int>(i)));
}

void Machine::run_component(const std::vector<Vertex>& comp) {
    // Regime A: every list covers the degree; the degree-choosable machinery applies.
    bool degree_lists = true;
    for (Vertex v : comp)
        if (static_cast<int>(w_.lists[v].size()) < w_.deg(v)) degree_lists = false;
    if (degree_lists) {
        finish_degree_lists(comp);
        return;
    }
    // Regime B: every list has at least 5 colors; the oracle stands in for
    // the 5-list-colorability theorem.
    bool big_lists = true;
    for (Vertex v : comp)
        if (w_.lists[v].size() < 5) big_lists = false;
    if (big_lists) {
        solve_oracle(comp);
        return;
    }

    std::vector<Vertex> small_side, big_side;
    for (Vertex v : comp)
        (w_.deg(v) < w_.k ? small_side : big_side).push_back(v);
    auto comps = w_.g.induced_components(small_side);

    std::vector<CasePlan> plans;
    for (const auto& H : comps) plans.push_back(classify(H));

    // Recursion-shaped cases first: an end block pendant at a cut vertex
    // (k8 case 3), then the split case (k8 case 7b).
    for (size_t i = 0; i < comps.size(); ++i) {
        if (plans[i].label.id != "3" || w_.mode != PeelMode::K8) continue;
        const CasePlan& plan = plans[i];
        ComponentRecord rec;
        rec.component = comps[i];
        rec.label = plan.label;
        std::set<Vertex> big(big_side.begin(), big_side.end());
        Vertex att = *plan.attachment;
        // Color the pendant part with the attachment still uncolored. A
        // clique pendant colors greedily in any order; a path pendant (from
        // an odd-cycle block) must be colored along the path.
        std::vector<Vertex> pendant;
        for (Vertex v : plan.block)
            if (v != att) pendant.push_back(v);
        auto [pg, pmap] = w_.g.induced_subgraph(pendant);
        std::vector<Vertex> order;
        if (pg.is_complete()) {
            order = pendant;
        } else {
            Vertex end = -1;
            for (size_t j = 0; j < pmap.size(); ++j)
                if (pg.degree(static_cast<int>(j)) <= 1 && end < 0) end = pmap[j];
            if (end < 0) throw InternalError("peel case 3: pendant is neither clique nor path");
            order = cycle_walk(pg, pmap, pendant, end);
        }
        for (Vertex v : order) {
            Color pick = -1;
            for (Color c : w_.lists[v]) {
                bool used = false;
                for (Vertex u : pendant)
                    if (u != v && w_.coloring.color(u) == c && w_.g.has_edge(u, v)) used = true;
                if (!used) {
                    pick = c;
                    break;
                }
            }
            if (pick < 0) throw InternalError("peel case 3: pendant coloring failed");
            w_.assign(v, pick, &rec, &big);
        }
        trace_.components.push_back(std::move(rec));
        // Recurse on the remaining graph.
        std::vector<Vertex> rest;
        for (Vertex v : comp)
            if (w_.alive[v]) rest.push_back(v);
        trace_.children.emplace_back();
        PeelTrace& child = trace_.children.back();
        child.mode = w_.mode;
        child.k = w_.k;
        Machine sub(w_, child);
        for (const auto& c : w_.g.induced_components(rest)) sub.run_component(c);
        return;
    }
    for (size_t i = 0; i < comps.size(); ++i) {
        if (plans[i].label.id != "7b") continue;
        const CasePlan& plan = plans[i];
        ComponentRecord rec;
        rec.component = comps[i];
        rec.label = plan.label;
        Vertex att = *plan.attachment;
        // Removing the attachment-trio edges must split the component.
        std::set<Edge> removed;
        for (Vertex t : plan.trio)
            removed.insert({std::min(att, t), std::max(att, t)});
        std::vector<Vertex> reach;
        {
            // BFS from att avoiding the removed edges.
            std::set<Vertex> seen{att};
            std::vector<Vertex> queue{att};
            while (!queue.empty()) {
                Vertex v = queue.back();
                queue.pop_back();
                reach.push_back(v);
                for (Vertex u : w_.alive_nbrs(v)) {
                    Edge e{std::min(v, u), std::max(v, u)};
                    if (removed.count(e) || seen.count(u)) continue;
                    seen.insert(u);
                    queue.push_back(u);
                }
            }
        }
        std::sort(reach.begin(), reach.end());
        for (Vertex t : plan.trio)
            if (std::binary_search(reach.begin(), reach.end(), t))
                throw PreconditionError(
                    "peel case 7b: the attachment stays connected to the trio, so the input "
                    "contains a K5 minor");
        trace_.components.push_back(std::move(rec));

        std::vector<Vertex> side2;
        for (Vertex v : comp)
            if (w_.alive[v] && !std::binary_search(reach.begin(), reach.end(), v))
                side2.push_back(v);

        trace_.children.emplace_back();
        {
            PeelTrace& child = trace_.children.back();
            child.mode = w_.mode;
            child.k = w_.k;
            Machine sub(w_, child);
            for (const auto& c : w_.g.induced_components(reach)) sub.run_component(c);
        }
        // Coloring the attachment's side already removed the attachment's
        // color from the trio lists through the shared edges.
        trace_.children.emplace_back();
        {
            PeelTrace& child = trace_.children.back();
            child.mode = w_.mode;
            child.k = w_.k;
            Machine sub(w_, child);
            for (const auto& c : w_.g.induced_components(side2)) sub.run_component(c);
        }
        return;
    }

    // One pass: act on every component, solve the big side, reinsert.
    std::set<Vertex> big(big_side.begin(), big_side.end());
    std::vector<Edge> aux_edges;
    std::vector<ComponentRecord> records;
    for (size_t i = 0; i < comps.size(); ++i) {
        ComponentRecord rec;
        rec.component = comps[i];
        rec.label = plans[i].label;
        act(plans[i], comps[i], rec, big, aux_edges);
        records.push_back(std::move(rec));
    }
    solve_remainder(big_side, aux_edges);
    for (auto& rec : records) reinsert(rec);
    for (auto& rec : records) trace_.components.push_back(std::move(rec));
}

struct PeelRunner {
    static PeelResult run(const Graph& g, const ListAssignment& l, int k, PeelMode mode,
                          const PeelOptions& options) {
        Work w(g, l, k, mode, options);
        PeelResult result;
        result.trace.mode = mode;
        result.trace.k = k;

        if (options.verify_minor_free == MinorCheck::Always ||
            (options.verify_minor_free == MinorCheck::Auto &&
             g.num_vertices() <= options.minor_check_max_vertices)) {
            auto minor = has_k5_minor(g, options.minor_node_budget);
            if (minor.status == MinorResult::Status::Yes)
                throw PreconditionError("peel: input has a K5 minor");
            result.trace.minor_freeness_verified = minor.status == MinorResult::Status::No;
            if (minor.status == MinorResult::Status::BudgetExceeded)
                result.trace.notes.push_back("minor check hit its budget; assumed minor-free");
        } else {
            result.trace.notes.push_back("minor-freeness assumed (not checked)");
        }

        Machine machine(w, result.trace);
        for (const auto& comp : g.components()) machine.run_component(comp);

        if (!check_coloring(g, l, w.coloring))
            throw InternalError("peel: produced an invalid coloring");
        int limit = mode == PeelMode::K8 ? 3 : (k == 6 ? 1 : 2);
        if (result.trace.max_deletions_per_big_vertex() > limit)
            throw InternalError("peel: per-vertex deletion bound violated");
        result.coloring = w.coloring;
        return result;
    }
};

void require_f_assignment(const Graph& g, const ListAssignment& l, int k, const char* who) {
    if (!validate_f_assignment(g, l, k))
        throw PreconditionError(std::string(who) + ": lists are not an f-assignment for k=" +
                                std::to_string(k));
}

void require_dsk(const Graph& g, int k, int minimum, const char* who) {
    auto [small, big] = small_big_split(g, k);
    int d = component_distance(g, small);
    if (d != 0 && d < minimum)
        throw PreconditionError(std::string(who) + ": d(S_k) = " + std::to_string(d) +
                                " but the procedure needs 0 or >= " + std::to_string(minimum));
}

} // namespace

CaseLabel classify_component_case(const Graph& g, const ListAssignment& l,
                                  const std::vector<Vertex>& component, int k, PeelMode mode) {
    PeelOptions options;
    Work w(g, l, k, mode, options);
    PeelTrace scratch;
    scratch.mode = mode;
    scratch.k = k;
    Machine machine(w, scratch);
    std::vector<Vertex> H(component);
    std::sort(H.begin(), H.end());
    return machine.classify(H).label;
}

Coloring color_distance3(const Graph& g, const ListAssignment& l, const PeelOptions& options) {
    require_f_assignment(g, l, 6, "color_distance3");

    bool all_big = true;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (l.list_size(v) < 5) all_big = false;
    if (!all_big) {
        // Small-degree vertices must be pairwise at distance >= 3.
        std::vector<Vertex> small;
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (g.degree(v) <= 5) small.push_back(v);
        for (Vertex v : small) {
            auto dist = g.bfs_distances({v});
            for (Vertex u : small)
                if (u != v && dist[u] >= 0 && dist[u] < 3)
                    throw PreconditionError(
                        "color_distance3: small-degree vertices " + std::to_string(v) + " and " +
                        std::to_string(u) + " are at distance " + std::to_string(dist[u]));
        }
    }

    Work w(g, l, 6, PeelMode::K8, options);
    // Color every vertex of S_6 with its first list color, then solve the
    // rest on lists of size >= 5.
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) < 6)
            w.assign(v, w.lists[v].front());
        else
            rest.push_back(v);
    }
    if (!rest.empty()) {
        auto [sub, mapping] = g.induced_subgraph(rest);
        std::vector<std::vector<Color>> lists(mapping.size());
        for (size_t i = 0; i < mapping.size(); ++i) {
            lists[i] = w.lists[mapping[i]];
            if (lists[i].size() < 5)
                throw InternalError("color_distance3: reduced list below 5 colors");
        }
        auto res = solve_exact(sub, ListAssignment(std::move(lists)), options.budget);
        if (res.verdict == Verdict::BudgetExceeded)
            throw BudgetError("color_distance3: remainder solve exceeded budget");
        if (res.verdict == Verdict::Uncolorable)
            throw PreconditionError(
                "color_distance3: remainder uncolorable; input cannot be K5-minor-free");
        for (size_t i = 0; i < mapping.size(); ++i)
            w.assign(mapping[i], res.coloring.color(static_cast<int>(i)));
    }
    if (!check_coloring(g, l, w.coloring))
        throw InternalError("color_distance3 produced an invalid coloring");
    return w.coloring;
}

Coloring color_far_components(const Graph& g, const ListAssignment& l, int k,
                              const PeelOptions& options) {
    if (k < 6) throw PreconditionError("color_far_components: k must be >= 6");
    require_f_assignment(g, l, k, "color_far_components");
    require_dsk(g, k, 5, "color_far_components");

    Work w(g, l, k, PeelMode::K8, options);
    auto [small, big] = small_big_split(g, k);
    auto comps = g.induced_components(small);

    // One helper big vertex per small component, colored away from its
    // contact vertex's list.
    std::set<Vertex> helpers;
    for (const auto& comp : comps) {
        Vertex contact = -1, helper = -1;
        for (Vertex v : comp) {
            for (Vertex u : g.neighbors(v))
                if (g.degree(u) >= k) {
                    contact = v;
                    helper = u;
                    break;
                }
            if (helper >= 0) break;
        }
        if (helper < 0)
            throw InternalError(
                "color_far_components: no big neighbor for a small component (is the graph "
                "connected with nonempty big side?)");
        std::vector<Color> diff;
        std::set_difference(w.lists[helper].begin(), w.lists[helper].end(),
                            w.lists[contact].begin(), w.lists[contact].end(),
                            std::back_inserter(diff));
        if (diff.empty())
            throw InternalError("color_far_components: helper list does not exceed contact list");
        w.assign(helper, diff.front());
        helpers.insert(helper);
    }

    // Solve the remaining big side.
    std::vector<Vertex> rest;
    for (Vertex v : big)
        if (w.alive[v]) rest.push_back(v);
    if (!rest.empty()) {
        auto [sub, mapping] = g.induced_subgraph(rest);
        std::vector<std::vector<Color>> lists(mapping.size());
        for (size_t i = 0; i < mapping.size(); ++i) {
            lists[i] = w.lists[mapping[i]];
            if (lists[i].size() < 5)
                throw InternalError("color_far_components: reduced big list below 5 colors");
        }
        auto res = solve_exact(sub, ListAssignment(std::move(lists)), options.budget);
        if (res.verdict == Verdict::BudgetExceeded)
            throw BudgetError("color_far_components: remainder solve exceeded budget");
        if (res.verdict == Verdict::Uncolorable)
            throw PreconditionError(
                "color_far_components: remainder uncolorable; input cannot be K5-minor-free");
        for (size_t i = 0; i < mapping.size(); ++i)
            w.assign(mapping[i], res.coloring.color(static_cast<int>(i)));
    }

    // Finish each small component; the helper coloring left surplus inside.
    for (const auto& comp : comps) {
        auto [sub, mapping] = g.induced_subgraph(comp);
        std::vector<std::vector<Color>> lists(mapping.size());
        for (size_t i = 0; i < mapping.size(); ++i) lists[i] = w.lists[mapping[i]];
        auto res = color_degree_choosable(sub, ListAssignment(std::move(lists)));
        for (size_t i = 0; i < mapping.size(); ++i)
            w.assign(mapping[i], res.coloring.color(static_cast<int>(i)));
    }
    if (!check_coloring(g, l, w.coloring))
        throw InternalError("color_far_components produced an invalid coloring");
    return w.coloring;
}

PeelResult peel_color_k8(const Graph& g, const ListAssignment& l, int k,
                         const PeelOptions& options) {
    if (k < 8) throw PreconditionError("peel_color_k8: k must be >= 8");
    require_f_assignment(g, l, k, "peel_color_k8");
    for (const auto& comp : g.components()) {
        auto [sub, mapping] = g.induced_subgraph(comp);
        if (is_gallai_tree(sub).is_gallai_tree)
            throw PreconditionError("peel_color_k8: component containing vertex " +
                                    std::to_string(comp.front()) + " is a Gallai tree");
    }
    require_dsk(g, k, 3, "peel_color_k8");
    return PeelRunner::run(g, l, k, PeelMode::K8, options);
}

PeelResult peel_color_3connected(const Graph& g, const ListAssignment& l, int k,
                                 const PeelOptions& options) {
    if (k < 7 && !(k == 6 && options.allow_k6_experimental))
        throw PreconditionError("peel_color_3connected: k must be >= 7 (k=6 is experimental)");
    if (g.is_complete())
        throw PreconditionError("peel_color_3connected: input graph is complete");
    if (vertex_connectivity(g) < 3)
        throw PreconditionError("peel_color_3connected: input graph is not 3-connected");
    require_f_assignment(g, l, k, "peel_color_3connected");
    require_dsk(g, k, 3, "peel_color_3connected");
    return PeelRunner::run(g, l, k, PeelMode::ThreeConn, options);
}

} // namespace lcol
