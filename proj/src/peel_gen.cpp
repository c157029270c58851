#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "lcol/gadgets.hpp"
#include "lcol/structure.hpp"

namespace lcol {

namespace {

// Local description of one plantable S_k shape: internal edges plus the
// exposed boundary sequence with host spans. Exposed vertices appear in
// planar boundary order; a span of m attaches the vertex to m consecutive
// hosts, advancing the host cursor by m-1.
struct ShapeSpec {
    int nverts = 0;
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> exposed;  // (local vertex, span)
    std::vector<int> equal_orbit;              // same-list steering targets
};

ShapeSpec shape_spec(ShapeKind kind) {
    ShapeSpec s;
    switch (kind) {
        case ShapeKind::Singleton:
            s.nverts = 1;
            s.exposed = {{0, 3}};
            break;
        case ShapeKind::PairK2:
            s.nverts = 2;
            s.edges = {{0, 1}};
            s.exposed = {{0, 2}, {1, 2}};
            s.equal_orbit = {0, 1};
            break;
        case ShapeKind::TriangleK3:
            s.nverts = 3;
            s.edges = {{0, 1}, {1, 2}, {0, 2}};
            s.exposed = {{0, 2}, {1, 2}, {2, 2}};
            s.equal_orbit = {0, 1, 2};
            break;
        case ShapeKind::CliqueK4:
            // 3 on the boundary, vertex 3 enclosed by them.
            s.nverts = 4;
            s.edges = {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 3}, {2, 3}};
            s.exposed = {{0, 2}, {1, 2}, {2, 2}};
            s.equal_orbit = {0, 1, 2};
            break;
        case ShapeKind::CycleC9:
            s.nverts = 9;
            for (int i = 0; i < 9; ++i) s.edges.push_back({i, (i + 1) % 9});
            for (int i = 0; i < 9; ++i) s.exposed.push_back({i, 2});
            s.equal_orbit = {0, 1, 2, 3, 4, 5, 6, 7, 8};
            break;
        case ShapeKind::TadpoleC7:
            // cycle 0..6, tail vertex 7 off vertex 6 (the cut vertex).
            s.nverts = 8;
            for (int i = 0; i < 7; ++i) s.edges.push_back({i, (i + 1) % 7});
            s.edges.push_back({6, 7});
            for (int i = 0; i < 8; ++i) s.exposed.push_back({i, 2});
            s.equal_orbit = {0, 1, 2, 3, 4, 5};  // the cycle minus its cut vertex
            break;
        case ShapeKind::PathP6:
            s.nverts = 6;
            for (int i = 0; i < 5; ++i) s.edges.push_back({i, i + 1});
            for (int i = 0; i < 6; ++i) s.exposed.push_back({i, 2});
            break;
        case ShapeKind::BowtieK3:
            // triangles (0,1,2) and (2,3,4); 2 is the cut vertex.
            s.nverts = 5;
            s.edges = {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}};
            s.exposed = {{0, 2}, {1, 2}, {2, 1}, {3, 2}, {4, 2}};
            s.equal_orbit = {0, 1};
            break;
        case ShapeKind::K4PathK4:
            // K4 {0,1,2,3} with 2 enclosed and joint 3; bridge 3-4-5;
            // K4 {5,6,7,8} with 8 enclosed and joint 5.
            s.nverts = 9;
            s.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                       {3, 4}, {4, 5},
                       {5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}, {7, 8}};
            s.exposed = {{0, 2}, {1, 1}, {3, 1}, {4, 2}, {5, 1}, {6, 1}, {7, 2}};
            break;
        case ShapeKind::NestedK4Tail:
            // K4 {0,1,2,3}: 0,1,2 have no outside edges (2 enclosed); the
            // graph hangs off vertex 3 through the tail 3-4-5-6-7.
            s.nverts = 8;
            s.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                       {3, 4}, {4, 5}, {5, 6}, {6, 7}};
            s.exposed = {{3, 2}, {4, 1}, {5, 2}, {6, 1}, {7, 2}};
            break;
    }
    return s;
}

std::vector<Color> pick_colors(std::mt19937_64& rng, const std::vector<Color>& palette, int count) {
    std::vector<Color> pool(palette);
    for (size_t i = pool.size(); i > 1; --i) {
        std::uniform_int_distribution<size_t> d(0, i - 1);
        std::swap(pool[i - 1], pool[d(rng)]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

GadgetInstance build_sphere(unsigned long long seed, int k, int spacing,
                            const PeelGenOptions& options);
GadgetInstance build_caterpillar(unsigned long long seed, int k, int spacing,
                                 const PeelGenOptions& options);
GadgetInstance build_lens(unsigned long long seed, int k, const PeelGenOptions& options);

// ---------------------------------------------------------------------------
// Subdivided icosahedron: 12 vertices of degree 5 at pairwise distance nu,
// all other degrees 6. Serves the k=6 fast paths.

const int kIcosaFaces[20][3] = {
    {0, 1, 2},  {0, 2, 3},  {0, 3, 4},  {0, 4, 5},  {0, 5, 1},
    {1, 6, 2},  {2, 6, 7},  {2, 7, 3},  {3, 7, 8},  {3, 8, 4},
    {4, 8, 9},  {4, 9, 5},  {5, 9, 10}, {5, 10, 1}, {1, 10, 6},
    {6, 11, 7}, {7, 11, 8}, {8, 11, 9}, {9, 11, 10}, {10, 11, 6}};

GadgetInstance build_sphere(unsigned long long seed, int k, int spacing,
                            const PeelGenOptions& options) {
    const int nu = spacing;
    std::map<std::vector<int>, Vertex> ids;
    int next_id = 0;
    auto vertex_key = [&](int fa, int fb, int fc, int i, int j) {
        // Barycentric point i*(B-A)/nu + j*(C-A)/nu on face (A,B,C), with
        // canonical keys for corners and shared edge points.
        int a = nu - i - j, b = i, c = j;
        std::vector<int> key;
        if (b == 0 && c == 0) key = {0, fa};
        else if (a == 0 && c == 0) key = {0, fb};
        else if (a == 0 && b == 0) key = {0, fc};
        else if (c == 0) key = fa < fb ? std::vector<int>{1, fa, fb, b}
                                       : std::vector<int>{1, fb, fa, a};
        else if (b == 0) key = fa < fc ? std::vector<int>{1, fa, fc, c}
                                       : std::vector<int>{1, fc, fa, a};
        else if (a == 0) key = fb < fc ? std::vector<int>{1, fb, fc, c}
                                       : std::vector<int>{1, fc, fb, b};
        else key = {2, fa, fb, fc, i, j};
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        ids[key] = next_id;
        return next_id++;
    };

    std::set<Edge> edge_set;
    auto add_edge = [&](Vertex u, Vertex v) {
        if (u > v) std::swap(u, v);
        edge_set.insert({u, v});
    };
    for (const auto& f : kIcosaFaces) {
        for (int i = 0; i + 1 <= nu; ++i)
            for (int j = 0; i + j + 1 <= nu; ++j) {
                Vertex p = vertex_key(f[0], f[1], f[2], i, j);
                Vertex right = vertex_key(f[0], f[1], f[2], i + 1, j);
                Vertex up = vertex_key(f[0], f[1], f[2], i, j + 1);
                add_edge(p, right);
                add_edge(p, up);
                add_edge(right, up);
            }
    }
    Graph g(next_id, std::vector<Edge>(edge_set.begin(), edge_set.end()));

    std::mt19937_64 rng(seed);
    std::vector<Color> palette;
    for (Color c = 1; c <= k + options.palette_extra; ++c) palette.push_back(c);
    std::vector<std::vector<Color>> lists(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        lists[v] = pick_colors(rng, palette, std::min(g.degree(v), k));

    GadgetInstance inst{std::move(g), ListAssignment(std::move(lists)), {}};
    inst.meta.k = k;
    inst.meta.family = "peel-sphere";
    inst.meta.claimed_verdict = "colorable";
    inst.meta.minor_free_trusted = true;
    inst.meta.kappa = 5;
    inst.meta.kappa_trusted = true;
    inst.meta.delta = inst.graph.min_degree();
    auto [small, big] = small_big_split(inst.graph, k);
    inst.meta.d_sk = component_distance(inst.graph, small);
    inst.meta.f_assignment = validate_f_assignment(inst.graph, inst.lists, k);
    if (inst.graph.num_vertices() != 10 * nu * nu + 2 || !inst.meta.f_assignment)
        throw InternalError("peel sphere: construction audit failed");
    // At depth 1 the small vertices form one component (distance 0).
    if (inst.meta.d_sk != (nu == 1 ? 0 : nu))
        throw InternalError("peel sphere: d(S_k) audit failed");
    return inst;
}

// ---------------------------------------------------------------------------
// Layered caterpillar frame: a host row g carrying the shape islands, a
// middle row h, and a far low-degree row b, joined by planar staircase
// strips. Every vertex within distance 2 of a shape is topped up to degree
// exactly k; the b row stays small-degree at distance 3.

struct Rows {
    std::vector<Edge> edges;
    int n = 0;
    int add_vertex() { return n++; }
    void add_edge(Vertex u, Vertex v) { edges.push_back({std::min(u, v), std::max(u, v)}); }
};

GadgetInstance build_caterpillar(unsigned long long seed, int k, int spacing,
                                 const PeelGenOptions& options) {
    if (options.shapes.empty())
        throw InfeasibleError("gen_peel_instance: shaped frame needs at least one shape");
    const bool wrap = options.three_connected;
    // The far row sits at distance exactly 3 from every shape, so d(S_k)
    // cannot exceed 3; the island gap controls shape-to-shape distance
    // (gap -1 shares a boundary host, giving distance 2).
    const int gap = spacing - 3;
    if (gap < 0 && (options.shapes.size() < 2 || wrap))
        throw InfeasibleError(
            "gen_peel_instance: spacing 2 needs at least two shapes on an open frame");

    Rows rows;
    // Shape vertices first (consecutive per island), then g, h, b rows.
    struct Island {
        ShapeKind kind;
        ShapeSpec spec;
        int base = 0;   // first global vertex id
        int arc = 0;    // host arc start index
        int arc_len = 0;
    };
    std::vector<Island> islands;
    for (ShapeKind kind : options.shapes) {
        Island isl;
        isl.kind = kind;
        isl.spec = shape_spec(kind);
        isl.base = rows.n;
        for (int i = 0; i < isl.spec.nverts; ++i) rows.add_vertex();
        for (auto [a, b] : isl.spec.edges) rows.add_edge(isl.base + a, isl.base + b);
        islands.push_back(std::move(isl));
    }

    // Host arcs along the g row; every frame vertex is topped up to degree
    // k+1 so that its list (of size k) stays short of its degree and the
    // peeling strategy engages.
    const int target = k + 1;
    int host_count = wrap ? 0 : 1;
    for (size_t idx = 0; idx < islands.size(); ++idx) {
        auto& isl = islands[idx];
        isl.arc = host_count;
        int span = 1;
        for (auto [local, mult] : isl.spec.exposed) span += mult - 1;
        isl.arc_len = span;
        host_count += span;
        if (idx + 1 < islands.size() || wrap) host_count += gap;
    }
    if (!wrap) host_count += 1;
    if (host_count < 3) host_count = 3;

    const int g0 = rows.n;
    for (int i = 0; i < host_count; ++i) rows.add_vertex();
    std::vector<int> g_extra(host_count, 0);  // spokes received

    for (const auto& isl : islands) {
        int cursor = isl.arc;
        for (auto [local, mult] : isl.spec.exposed) {
            for (int m = 0; m < mult; ++m) {
                rows.add_edge(isl.base + local, g0 + cursor + m);
                ++g_extra[cursor + m];
            }
            cursor += mult - 1;
        }
    }

    auto row_degree = [&](int idx, int len) { return wrap ? 2 : (idx == 0 || idx == len - 1) ? 1 : 2; };

    for (int i = 0; i + 1 < host_count; ++i) rows.add_edge(g0 + i, g0 + i + 1);
    if (wrap && host_count >= 3) rows.add_edge(g0 + host_count - 1, g0);

    // g -> h staircase: window widths top every host up to degree exactly k.
    std::vector<int> h_of_g_start(host_count), h_of_g_width(host_count);
    int h_cursor = 0, h_len = 1;
    for (int i = 0; i < host_count; ++i) {
        int have = row_degree(i, host_count) + g_extra[i];
        int w = target - have;
        if (w < 1) w = 1;
        h_of_g_start[i] = h_cursor;
        h_of_g_width[i] = w;
        h_cursor += w - 1;
        h_len = std::max(h_len, h_cursor + 1);
    }
    const int h0 = rows.n;
    for (int i = 0; i < h_len; ++i) rows.add_vertex();
    std::vector<int> h_cov(h_len, 0);
    for (int i = 0; i < host_count; ++i)
        for (int m = 0; m < h_of_g_width[i]; ++m) {
            rows.add_edge(g0 + i, h0 + h_of_g_start[i] + m);
            ++h_cov[h_of_g_start[i] + m];
        }
    for (int i = 0; i + 1 < h_len; ++i) rows.add_edge(h0 + i, h0 + i + 1);
    if (wrap && h_len >= 3) rows.add_edge(h0 + h_len - 1, h0);

    // h -> b staircase. The b row is the far low-degree region; coverage is
    // capped so every b vertex stays below degree k.
    const int b_cap = k - 3;  // b degree <= 2 + b_cap < k
    std::vector<std::pair<int, int>> h_windows(h_len, {0, -1});
    int b_cursor = 0, b_len = 1;
    std::vector<int> b_cov(1, 0);
    for (int i = 0; i < h_len; ++i) {
        int have = row_degree(i, h_len) + h_cov[i];
        int need = target - have;
        if (need <= 0) continue;
        if (b_cov[b_cursor] >= b_cap) {
            ++b_cursor;
            b_cov.resize(b_cursor + 1, 0);
        }
        int start = b_cursor;
        while (need > 0) {
            ++b_cov[b_cursor];
            --need;
            if (need > 0) {
                ++b_cursor;
                b_cov.resize(b_cursor + 1, 0);
            }
        }
        h_windows[i] = {start, b_cursor};
        b_len = std::max(b_len, b_cursor + 1);
    }
    const int b0 = rows.n;
    for (int i = 0; i < b_len; ++i) rows.add_vertex();
    for (int i = 0; i < h_len; ++i)
        for (int x = h_windows[i].first; x <= h_windows[i].second; ++x)
            rows.add_edge(h0 + i, b0 + x);
    for (int i = 0; i + 1 < b_len; ++i) rows.add_edge(b0 + i, b0 + i + 1);
    if (wrap && b_len >= 3) rows.add_edge(b0 + b_len - 1, b0);

    Graph g(rows.n, std::move(rows.edges));

    // Lists: degree-sized below k, exactly k otherwise; equal-list steering
    // reuses one drawn list across a shape's designated orbit.
    std::mt19937_64 rng(seed);
    std::vector<Color> palette;
    for (Color c = 1; c <= k + options.palette_extra; ++c) palette.push_back(c);
    std::vector<std::vector<Color>> lists(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        lists[v] = pick_colors(rng, palette, std::min(g.degree(v), k));
    if (options.equal_lists) {
        for (const auto& isl : islands) {
            if (isl.spec.equal_orbit.empty()) continue;
            Vertex rep = isl.base + isl.spec.equal_orbit.front();
            for (int local : isl.spec.equal_orbit) {
                if (g.degree(isl.base + local) != g.degree(rep))
                    throw InternalError("peel caterpillar: unequal orbit degrees");
                lists[isl.base + local] = lists[rep];
            }
        }
    }

    GadgetInstance inst{std::move(g), ListAssignment(std::move(lists)), {}};
    inst.meta.k = k;
    inst.meta.family = "peel-frame";
    inst.meta.claimed_verdict = "colorable";
    inst.meta.minor_free_trusted = true;  // layered staircase embedding
    inst.meta.delta = inst.graph.min_degree();
    auto [small, big] = small_big_split(inst.graph, k);
    inst.meta.d_sk = component_distance(inst.graph, small);
    inst.meta.f_assignment = validate_f_assignment(inst.graph, inst.lists, k);

    // Construction audits: S_k must be exactly the islands plus the b row.
    std::set<std::vector<Vertex>> expected;
    for (const auto& isl : islands) {
        std::vector<Vertex> verts;
        for (int i = 0; i < isl.spec.nverts; ++i) verts.push_back(isl.base + i);
        expected.insert(verts);
    }
    {
        std::vector<Vertex> far;
        for (int i = 0; i < b_len; ++i) far.push_back(b0 + i);
        expected.insert(far);
    }
    auto comps = inst.graph.induced_components(small);
    std::set<std::vector<Vertex>> actual(comps.begin(), comps.end());
    if (actual != expected)
        throw InternalError("peel caterpillar: S_k components differ from the planted shapes");
    if (!inst.meta.f_assignment)
        throw InternalError("peel caterpillar: not an f-assignment");
    if (inst.meta.d_sk != spacing)
        throw InternalError("peel caterpillar: d(S_k) = " + std::to_string(inst.meta.d_sk) +
                            ", wanted " + std::to_string(spacing));
    if (inst.graph.num_vertices() <= 130) {
        int kappa = vertex_connectivity(inst.graph);
        inst.meta.kappa = kappa;
        if (wrap && kappa != 3)
            throw InternalError("peel caterpillar: kappa = " + std::to_string(kappa) +
                                " in three-connected mode");
        if (!wrap && (kappa < 1 || kappa > 2))
            throw InternalError("peel caterpillar: kappa = " + std::to_string(kappa) +
                                " in open mode");
    } else {
        inst.meta.kappa = wrap ? 3 : 2;
        inst.meta.kappa_trusted = true;
    }
    for (const auto& isl : islands)
        inst.meta.notes.push_back("island " + shape_name(isl.kind));
    return inst;
}

// A single shape strung between two poles adjacent to its whole exposed
// boundary. The unique S_k component is the shape; d(S_k)=0 by convention.
GadgetInstance build_lens(unsigned long long seed, int k, const PeelGenOptions& options) {
    if (options.shapes.size() != 1)
        throw InfeasibleError("gen_peel_instance: lens mode needs exactly one shape");
    const ShapeKind kind = options.shapes.front();

    std::vector<Edge> edges;
    int n = 0;
    std::vector<Vertex> lens_exposed;  // vertices the poles see
    std::vector<int> orbit;            // equal-list steering targets
    switch (kind) {
        case ShapeKind::PathP6: {
            int len = k;  // pole degree len+1 = k+1
            n = len;
            for (int i = 0; i + 1 < len; ++i) edges.push_back({i, i + 1});
            for (int i = 0; i < len; ++i) lens_exposed.push_back(i);
            break;
        }
        case ShapeKind::CycleC9: {
            if (k > 8)
                throw InfeasibleError("gen_peel_instance: C9 lens needs k <= 8");
            n = 9;
            for (int i = 0; i < 9; ++i) {
                edges.push_back({i, (i + 1) % 9});
                lens_exposed.push_back(i);
                orbit.push_back(i);
            }
            break;
        }
        case ShapeKind::NestedK4Tail: {
            if (options.three_connected)
                throw InfeasibleError(
                    "gen_peel_instance: the nested-K4 lens has a cut vertex");
            int tail = k;  // t0..t_{k-1}
            n = tail + 3;
            for (int i = 0; i + 1 < tail; ++i) edges.push_back({i, i + 1});
            int q1 = tail, q2 = tail + 1, q3 = tail + 2;
            edges.push_back({q1, q2});
            edges.push_back({q1, q3});
            edges.push_back({q2, q3});
            edges.push_back({0, q1});
            edges.push_back({0, q2});
            edges.push_back({0, q3});
            for (int i = 0; i < tail; ++i) lens_exposed.push_back(i);
            break;
        }
        default:
            throw InfeasibleError("gen_peel_instance: shape " + shape_name(kind) +
                                  " has no lens form");
    }
    const Vertex X = n, Y = n + 1;
    for (Vertex v : lens_exposed) {
        edges.push_back({X, v});
        edges.push_back({Y, v});
    }
    if (kind != ShapeKind::CycleC9) edges.push_back({X, Y});
    Graph g(n + 2, std::move(edges));

    std::mt19937_64 rng(seed);
    std::vector<Color> palette;
    for (Color c = 1; c <= k + options.palette_extra; ++c) palette.push_back(c);
    std::vector<std::vector<Color>> lists(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        lists[v] = pick_colors(rng, palette, std::min(g.degree(v), k));
    if (options.equal_lists && !orbit.empty())
        for (int v : orbit) lists[v] = lists[orbit.front()];

    GadgetInstance inst{std::move(g), ListAssignment(std::move(lists)), {}};
    inst.meta.k = k;
    inst.meta.family = "peel-lens";
    inst.meta.claimed_verdict = "colorable";
    inst.meta.delta = inst.graph.min_degree();
    auto [small, big] = small_big_split(inst.graph, k);
    inst.meta.d_sk = component_distance(inst.graph, small);
    inst.meta.f_assignment = validate_f_assignment(inst.graph, inst.lists, k);
    if (!inst.meta.f_assignment || inst.meta.d_sk != 0 ||
        static_cast<int>(small.size()) != n || inst.graph.degree(X) < k + 1)
        throw InternalError("peel lens: construction audit failed");
    // The layered drawing is planar; the bounded exact check is a backstop.
    auto minor = has_k5_minor(inst.graph, 500'000);
    if (minor.status == MinorResult::Status::Yes)
        throw InternalError("peel lens: construction has a K5 minor");
    inst.meta.minor_free_trusted = minor.status != MinorResult::Status::No;
    inst.meta.kappa = vertex_connectivity(inst.graph);
    if (options.three_connected && *inst.meta.kappa < 3)
        throw InternalError("peel lens: not 3-connected");
    inst.meta.notes.push_back("lens " + shape_name(kind));
    return inst;
}

} // namespace

GadgetInstance gen_peel_instance(unsigned long long seed, int k, int spacing,
                                 const PeelGenOptions& options) {
    if (k < 5) throw PreconditionError("gen_peel_instance: k must be >= 5");
    if (spacing < 1) throw PreconditionError("gen_peel_instance: spacing must be positive");

    if (options.lens) {
        if (k < 7) throw InfeasibleError("gen_peel_instance: lens mode needs k >= 7");
        return build_lens(seed, k, options);
    }
    bool singletons_only = std::all_of(options.shapes.begin(), options.shapes.end(),
                                       [](ShapeKind s) { return s == ShapeKind::Singleton; });
    if (k == 6 && (options.shapes.empty() || singletons_only))
        return build_sphere(seed, k, spacing, options);
    if (spacing < 2) throw PreconditionError("gen_peel_instance: spacing must be >= 2");
    if (k < 7)
        throw InfeasibleError(
            "gen_peel_instance: shaped frames need k >= 7 (k=6 supports singleton spheres only)");
    if (spacing > 3)
        throw InfeasibleError(
            "gen_peel_instance: shaped frames support spacing <= 3; wider separation is not "
            "constructible with all moat degrees >= k in a planar frame");
    return build_caterpillar(seed, k, spacing, options);
}

} // namespace lcol
