#ifndef LCOL_STRUCTURE_HPP
#define LCOL_STRUCTURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lcol/graph.hpp"

namespace lcol {

/// Blocks (maximal 2-connected subgraphs, bridges as K2, isolated vertices
/// as K1), cut vertices, and the block/cut-vertex incidence.
struct BlockDecomposition {
    std::vector<std::vector<Vertex>> blocks;   // sorted vertex lists
    std::vector<int> block_edge_count;         // edges inside each block
    std::vector<Vertex> cut_vertices;          // sorted
    std::vector<std::vector<int>> blocks_of_vertex;

    bool is_cut_vertex(Vertex v) const;
    /// Cut vertices lying in block b.
    std::vector<Vertex> block_cut_vertices(int b) const;
    /// Blocks containing at most one cut vertex.
    std::vector<int> leaf_blocks() const;
};

BlockDecomposition block_decomposition(const Graph& g);

enum class BlockKind { K1, K2, K3, K4, OddCycle, Other };

std::string block_kind_name(BlockKind k);

/// Classify a block given its vertex count and internal edge count plus
/// regularity; complete graphs and cycles are determined by these.
BlockKind classify_block(const Graph& g, const std::vector<Vertex>& block, int edge_count);

bool block_is_complete(const std::vector<Vertex>& block, int edge_count);
bool block_is_odd_cycle(const Graph& g, const std::vector<Vertex>& block, int edge_count);

struct GallaiResult {
    bool is_gallai_tree;
    std::vector<Vertex> witness_block;  // an offending block when false
};

/// Every block of every component complete or an odd cycle.
GallaiResult is_gallai_tree(const Graph& g);

struct EndBlockClass {
    BlockKind label;
    std::vector<Vertex> block;
    std::optional<Vertex> attachment;  // the block's cut vertex, if any
};

std::vector<EndBlockClass> classify_end_blocks(const Graph& g);

/// kappa(G); n-1 for complete graphs, 0 for disconnected or trivial graphs.
int vertex_connectivity(const Graph& g);

struct MinorResult {
    enum class Status { No, Yes, BudgetExceeded };
    Status status = Status::No;
    std::vector<std::vector<Vertex>> branch_sets;  // five sets when Yes
    long long nodes = 0;
};

/// Exact K5-minor test by contraction branching with memoization.
/// Intended for small graphs (n <= ~40); reports BudgetExceeded past the
/// node limit.
MinorResult has_k5_minor(const Graph& g, long long node_budget = 5'000'000);

} // namespace lcol

#endif
