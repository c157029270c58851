#ifndef LCOL_PEEL_HPP
#define LCOL_PEEL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcol/graph.hpp"
#include "lcol/solver.hpp"

namespace lcol {

class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

enum class PeelMode { K8, ThreeConn };

std::string peel_mode_name(PeelMode m);

enum class MinorCheck { Auto, Always, Never };

struct PeelOptions {
    SolveBudget budget;
    MinorCheck verify_minor_free = MinorCheck::Auto;
    bool allow_k6_experimental = false;  // ThreeConn only; errors on case 5
    long long minor_node_budget = 2'000'000;
    int minor_check_max_vertices = 26;
};

struct CaseLabel {
    PeelMode mode = PeelMode::K8;
    std::string id;             // k8: defer-i, defer-surplus, 1..7, 7a, 7b
                                // threeconn: defer-i, defer-surplus, 1..5, 2a, 2b
    std::string justification;  // matched structural predicate
};

struct ComponentRecord {
    std::vector<Vertex> component;
    CaseLabel label;
    std::vector<std::pair<Vertex, Color>> precolored;
    std::vector<std::pair<Vertex, std::vector<Color>>> reservations;
    std::map<Vertex, int> deleted_from_big;  // distinct colors removed per B_k vertex
    std::vector<Vertex> deferred;            // H'
    std::vector<Edge> aux_edges;
    std::string reinsert_condition;          // "i", "ii", "iii", or "" when H' empty
};

struct PeelTrace {
    PeelMode mode = PeelMode::K8;
    int k = 0;
    bool minor_freeness_verified = false;  // top-level precondition check ran
    std::vector<std::string> notes;
    std::vector<ComponentRecord> components;
    std::vector<PeelTrace> children;  // recursive calls (cases 3 and 7b)
    long long solver_nodes = 0;

    /// Largest distinct-color deletion count over B_k vertices, across this
    /// trace and its children.
    int max_deletions_per_big_vertex() const;
    std::string to_text() const;
};

struct PeelResult {
    Coloring coloring;
    PeelTrace trace;
};

/// First matching case for component H of G[S_k], in the stated order.
CaseLabel classify_component_case(const Graph& g, const ListAssignment& l,
                                  const std::vector<Vertex>& component, int k, PeelMode mode);

/// Fast path: small-degree vertices pairwise far apart; color them first,
/// solve the remainder on lists of size >= 5.
Coloring color_distance3(const Graph& g, const ListAssignment& l, const PeelOptions& options = {});

/// Fast path for well-separated small components: one helper big vertex per
/// component creates surplus, the rest reduces to the remainder solve plus
/// degree-choosable finishes.
Coloring color_far_components(const Graph& g, const ListAssignment& l, int k = 6,
                              const PeelOptions& options = {});

/// Peeling colorer for k >= 8 (no Gallai-tree component, d(S_k) in {0} or >= 3).
PeelResult peel_color_k8(const Graph& g, const ListAssignment& l, int k,
                         const PeelOptions& options = {});

/// Peeling colorer for 3-connected non-complete inputs, k >= 7 (k = 6 behind
/// the experimental flag).
PeelResult peel_color_3connected(const Graph& g, const ListAssignment& l, int k,
                                 const PeelOptions& options = {});

} // namespace lcol

#endif
