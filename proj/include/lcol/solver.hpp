#ifndef LCOL_SOLVER_HPP
#define LCOL_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "lcol/graph.hpp"

namespace lcol {

struct SolveBudget {
    long long max_nodes = 0;  // 0 = use default_max_nodes()
    unsigned long long seed = 0;

    long long effective_max_nodes() const;
};

/// Default node budget; overridable through LCOL_MAX_NODES.
long long default_max_nodes();

enum class Verdict { Colorable, Uncolorable, BudgetExceeded };

std::string verdict_name(Verdict v);

/// Per-block color sets proving uncolorability of a Gallai tree with
/// degree-sized lists: disjoint across shared cut vertices, union over a
/// vertex's blocks equals its list, sizes |B|-1 (complete) or 2 (odd cycle).
struct BlockListCertificate {
    std::vector<std::vector<Vertex>> blocks;
    std::vector<std::vector<Color>> block_lists;
};

/// Validate all certificate invariants against (g, l).
bool check_certificate(const Graph& g, const ListAssignment& l, const BlockListCertificate& cert);

struct SolveResult {
    Verdict verdict = Verdict::BudgetExceeded;
    Coloring coloring;
    std::optional<BlockListCertificate> certificate;
    long long nodes = 0;
};

/// Exact list-coloring search. Minimum-remaining-list vertex order with
/// lowest-id tie break, ascending colors, unit propagation, empty-list
/// pruning. Deterministic.
SolveResult solve_exact(const Graph& g, const ListAssignment& l, const SolveBudget& budget = {});

/// Leaf-first certificate search over the block tree. Returns a certificate
/// iff one exists. Requires connected g.
std::optional<BlockListCertificate> uncolorability_certificate(const Graph& g,
                                                              const ListAssignment& l);

struct ChoosableColoring {
    Coloring coloring;
    bool used_exact_fallback = false;
    std::vector<std::string> steps;  // reduction trail, for traces and tests
};

/// Constructive coloring for connected g with |L(v)| >= d(v) where at least
/// one degree-choosability obstruction fails. Throws PreconditionError when the graph
/// is provably uncolorable (all three conditions hold).
ChoosableColoring color_degree_choosable(const Graph& g, const ListAssignment& l);

} // namespace lcol

#endif
