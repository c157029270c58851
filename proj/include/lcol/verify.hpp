#ifndef LCOL_VERIFY_HPP
#define LCOL_VERIFY_HPP

#include <string>
#include <vector>

#include "lcol/solver.hpp"

namespace lcol {

enum class CellStatus { RefutedByGadget, ColoredByAlgorithm, Open, Skipped };

std::string cell_status_name(CellStatus s);

struct CellEvidence {
    std::string instance_id;
    std::string outcome;
    long long nodes = 0;
};

struct Cell {
    int table = 1;            // 1: kappa in {1,2}; 2: kappa in {3,4}
    std::string k_label;      // "5", "6", "7", ">=8"
    std::string d_label;      // "2", "3", "4", ">=5"
    std::string paper_mark;   // "--", "--/?", "?", "+"
    CellStatus status = CellStatus::Open;
    std::string detail;
    std::vector<CellEvidence> evidence;
};

struct VerifyReport {
    unsigned long long seed = 0;
    int samples_per_cell = 0;
    std::vector<Cell> cells;

    std::string to_text() const;
    bool all_marks_consistent() const;  // no cell claims beyond its evidence
};

struct VerifyOptions {
    unsigned long long seed = 1;
    int samples_per_cell = 20;
    int jobs = 1;
    SolveBudget budget;
};

/// Reproduce the two result tables at desk scale: gadget refutations for
/// "--" cells, seeded algorithm batteries for "+" cells, open/skipped
/// entries elsewhere. Deterministic for a fixed seed.
VerifyReport verify_paper(const VerifyOptions& options);

} // namespace lcol

#endif
