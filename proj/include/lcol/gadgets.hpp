#ifndef LCOL_GADGETS_HPP
#define LCOL_GADGETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "lcol/graph.hpp"

namespace lcol {

struct GadgetMeta {
    int k = 0;
    std::string family;             // fig1, kplus, thm7, h5, g5, peel
    std::string claimed_verdict;    // "uncolorable" | "colorable" | "unknown"
    int delta = -1;                 // recomputed minimum degree
    int d_sk = -1;                  // recomputed component distance of S_k
    std::optional<int> kappa;       // recomputed when small enough
    bool kappa_trusted = false;     // by construction, not recomputed
    bool minor_free_trusted = false;
    bool f_assignment = false;      // validate_f_assignment(graph, lists, k)
    std::vector<std::string> notes;
};

struct GadgetInstance {
    Graph graph;
    ListAssignment lists;
    GadgetMeta meta;
};

/// Pages u_i,v_i over an edge xy; lists {i,j,0} over all pairs of {1..k}.
/// Planar, 2-connected, uncolorable f-assignment with d(S_k)=2 for k>=4.
GadgetInstance gen_fig1(int k);

/// K_{s+3} minus the edges among the s independent vertices; lists are all
/// triples from {1..k}. 3-connected, K5-minor-free, uncolorable.
GadgetInstance gen_complete_minus_clique(int k);

/// Attach a fresh (k-4)-clique with fresh colors to every base vertex.
/// Output is an f-assignment for k; uncolorable iff the base is.
GadgetInstance gen_triangle_augmented(const Graph& base, const ListAssignment& base_lists, int k);

/// The 30-vertex frame-and-faces gadget with precolored poles a,b.
GadgetInstance gen_H_k5(Color a, Color b);

/// 25 chained copies with identified poles; f-assignment for k=5, d(S_5)=4.
GadgetInstance gen_G_k5();

/// The copy subinstance of gen_G_k5 with the poles precolored by the copy's
/// own color pair; vertices: x*, y*, and the copy's 28 internals.
GadgetInstance g5_copy_subinstance(const GadgetInstance& g5, int copy_index);

/// Built-in augmentation bases.
Graph base_k5();
ListAssignment base_k5_lists();     // all {1,2,3,4}
Graph base_octahedron();
ListAssignment base_octahedron_lists();

enum class ShapeKind {
    Singleton,   // K1 component
    PairK2,      // K2 component
    TriangleK3,  // K3 component
    CliqueK4,    // K4 component
    CycleC9,     // odd cycle component
    TadpoleC7,   // C7 with a pendant tail vertex
    PathP6,      // path, all end blocks K2
    BowtieK3,    // two triangles glued at a cut vertex
    K4PathK4,    // two K4 end blocks joined by a two-edge bridge path
    NestedK4Tail // pendant K4 (enclosed trio) plus an exposed tail
};

std::string shape_name(ShapeKind s);

struct PeelGenOptions {
    std::vector<ShapeKind> shapes;
    bool three_connected = false;  // wrap the frame rows into cycles
    bool equal_lists = false;      // steer deep case branches via equal lists
    int palette_extra = 2;         // palette = {1..k+palette_extra}
    bool lens = false;             // tiny single-component instance: one shape
                                   // between two high-degree poles, d(S_k)=0
};

/// Seeded positive instances for the peeling algorithms: a planar layered
/// frame whose S_k components are the requested Gallai shapes plus one far
/// low-degree region, at pairwise distance >= spacing. For k=6 the frame is
/// a subdivided icosahedron (spacing = subdivision depth) and shapes must be
/// empty or singletons.
GadgetInstance gen_peel_instance(unsigned long long seed, int k, int spacing,
                                 const PeelGenOptions& options = {});

/// Glue two gadget instances at a single shared vertex (connectivity 1).
GadgetInstance compose_one_sum(const GadgetInstance& a, const GadgetInstance& b, Vertex va,
                               Vertex vb);

/// Glue two instances along a shared triangle (connectivity 3 when both
/// sides are 3-connected). Triangles given as vertex triples.
GadgetInstance compose_triangle_sum(const GadgetInstance& a, const GadgetInstance& b,
                                    const std::vector<Vertex>& ta, const std::vector<Vertex>& tb);

} // namespace lcol

#endif
