#include "lcol/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#ifdef LCOL_HAVE_OPENMP
#include <omp.h>
#endif

#include "lcol/gadgets.hpp"
#include "lcol/peel.hpp"
#include "lcol/structure.hpp"

namespace lcol {

std::string cell_status_name(CellStatus s) {
    switch (s) {
        case CellStatus::RefutedByGadget: return "refuted-by-gadget";
        case CellStatus::ColoredByAlgorithm: return "colored-by-algorithm (sampled)";
        case CellStatus::Open: return "open";
        case CellStatus::Skipped: return "skipped";
    }
    return "?";
}

namespace {

CellEvidence run_uncolorable(const GadgetInstance& inst, const std::string& id,
                             const SolveBudget& budget) {
    auto res = solve_exact(inst.graph, inst.lists, budget);
    CellEvidence ev{id, verdict_name(res.verdict), res.nodes};
    if (res.verdict != Verdict::Uncolorable)
        throw InternalError("verify-paper: expected " + id + " to be uncolorable, got " +
                            verdict_name(res.verdict));
    return ev;
}

// Interior vertex farthest from the twelve degree-5 corners; ties to the
// lowest id.
Vertex sphere_far_vertex(const Graph& g) {
    std::vector<Vertex> corners;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == 5) corners.push_back(v);
    auto dist = g.bfs_distances(corners);
    Vertex best = 0;
    for (Vertex v = 1; v < g.num_vertices(); ++v)
        if (dist[v] > dist[best]) best = v;
    return best;
}

std::vector<Vertex> sphere_far_triangle(const Graph& g) {
    std::vector<Vertex> corners;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == 5) corners.push_back(v);
    auto dist = g.bfs_distances(corners);
    std::vector<Vertex> best;
    int best_score = -1;
    for (const auto& [u, v] : g.edges())
        for (Vertex w : g.neighbors(u)) {
            if (w <= v || !g.has_edge(v, w)) continue;
            int score = std::min({dist[u], dist[v], dist[w]});
            if (score > best_score) {
                best_score = score;
                best = {u, v, w};
            }
        }
    if (best.empty()) throw InternalError("verify-paper: sphere has no triangle");
    return best;
}

struct CellJob {
    Cell cell;
    std::function<void(Cell&)> fill;  // may throw; errors recorded in detail
};

} // namespace

VerifyReport verify_paper(const VerifyOptions& options) {
    VerifyReport report;
    report.seed = options.seed;
    report.samples_per_cell = options.samples_per_cell;

    const SolveBudget budget = options.budget;
    const int samples = options.samples_per_cell;
    const unsigned long long seed = options.seed;

    std::vector<CellJob> jobs;

    auto add = [&](int table, std::string k, std::string d, std::string mark,
                   std::function<void(Cell&)> fill) {
        CellJob job;
        job.cell.table = table;
        job.cell.k_label = std::move(k);
        job.cell.d_label = std::move(d);
        job.cell.paper_mark = std::move(mark);
        job.fill = std::move(fill);
        jobs.push_back(std::move(job));
    };

    auto fig1_cell = [&](int k) {
        return [k, budget](Cell& cell) {
            auto inst = gen_fig1(k);
            cell.evidence.push_back(
                run_uncolorable(inst, "fig1(k=" + std::to_string(k) + ")", budget));
            cell.status = CellStatus::RefutedByGadget;
            cell.detail = "pages gadget: kappa=" +
                          std::to_string(inst.meta.kappa.value_or(-1)) +
                          ", d(S_k)=" + std::to_string(inst.meta.d_sk);
        };
    };
    auto kplus_cell = [&](int k) {
        return [k, budget](Cell& cell) {
            auto inst = gen_complete_minus_clique(k);
            cell.evidence.push_back(
                run_uncolorable(inst, "kplus(k=" + std::to_string(k) + ")", budget));
            cell.status = CellStatus::RefutedByGadget;
            cell.detail = "triple-lists gadget: kappa=" +
                          std::to_string(inst.meta.kappa.value_or(-1)) +
                          ", d(S_k)=" + std::to_string(inst.meta.d_sk);
        };
    };
    auto thm7_cell = [&](int k) {
        return [k, budget](Cell& cell) {
            auto inst = gen_triangle_augmented(base_k5(), base_k5_lists(), k);
            cell.evidence.push_back(
                run_uncolorable(inst, "thm7(k=" + std::to_string(k) + ",base=K5)", budget));
            cell.status = CellStatus::RefutedByGadget;
            cell.detail = "clique-augmented gadget has kappa=1: refuted for kappa=1, open for "
                          "kappa=2 (no such example is known); the run uses a small non-planar "
                          "core in place of a minimal non-4-choosable planar base, exercising "
                          "the same augmentation logic";
        };
    };
    auto g5_cells = [&](Cell& cell) {
        auto g5 = gen_G_k5();
        if (!g5.meta.f_assignment || g5.meta.d_sk != 4)
            throw InternalError("verify-paper: g5 metadata audit failed");
        for (int c = 0; c < 25; ++c) {
            auto sub = g5_copy_subinstance(g5, c);
            cell.evidence.push_back(
                run_uncolorable(sub, "g5-copy(" + std::to_string(c) + ")", budget));
        }
        cell.status = CellStatus::RefutedByGadget;
        cell.detail = "chained-copies gadget (kappa=3, d(S_5)=4, 702 vertices); every copy with "
                      "pinned pole colors is uncolorable, which refutes the full instance";
    };

    auto peel_battery = [&](int k, bool wrapped, unsigned long long cell_salt,
                            std::string extra_detail) {
        return [k, wrapped, cell_salt, samples, seed, budget,
                extra_detail](Cell& cell) {
            const ShapeKind catalog_k8[] = {ShapeKind::PathP6,    ShapeKind::CycleC9,
                                            ShapeKind::CliqueK4,  ShapeKind::TadpoleC7,
                                            ShapeKind::BowtieK3,  ShapeKind::K4PathK4,
                                            ShapeKind::NestedK4Tail, ShapeKind::Singleton};
            const ShapeKind catalog_3c[] = {ShapeKind::PathP6,   ShapeKind::CycleC9,
                                            ShapeKind::PairK2,   ShapeKind::TadpoleC7,
                                            ShapeKind::BowtieK3, ShapeKind::K4PathK4,
                                            ShapeKind::Singleton, ShapeKind::TriangleK3};
            for (int i = 0; i < samples; ++i) {
                PeelGenOptions gen;
                gen.three_connected = wrapped;
                gen.equal_lists = i % 2 == 0;
                int nshapes = 1 + i % 3;
                for (int s = 0; s < nshapes; ++s)
                    gen.shapes.push_back(wrapped ? catalog_3c[(i + s) % 8]
                                                 : catalog_k8[(i + s) % 8]);
                if (wrapped) {
                    // The pendant shape needs a cut vertex; not 3-connected.
                    for (auto& sh : gen.shapes)
                        if (sh == ShapeKind::NestedK4Tail) sh = ShapeKind::PathP6;
                }
                unsigned long long s = seed * 1000003ULL + cell_salt * 101ULL + i;
                auto inst = gen_peel_instance(s, k, 3, gen);
                PeelOptions popt;
                popt.budget = budget;
                popt.verify_minor_free = MinorCheck::Never;  // planar by construction
                PeelResult res = wrapped
                                     ? peel_color_3connected(inst.graph, inst.lists, k, popt)
                                     : peel_color_k8(inst.graph, inst.lists, k, popt);
                if (!check_coloring(inst.graph, inst.lists, res.coloring))
                    throw InternalError("verify-paper: peel produced an invalid coloring");
                cell.evidence.push_back({"peel(seed=" + std::to_string(s) +
                                             ",k=" + std::to_string(k) + ",n=" +
                                             std::to_string(inst.graph.num_vertices()) + ")",
                                         "colored", res.trace.solver_nodes});
            }
            cell.status = CellStatus::ColoredByAlgorithm;
            cell.detail = "seeded battery, d(S_k)=3" +
                          (extra_detail.empty() ? "" : "; " + extra_detail);
        };
    };

    auto sphere_battery = [&](bool one_sum, unsigned long long cell_salt) {
        return [one_sum, cell_salt, samples, seed, budget](Cell& cell) {
            for (int i = 0; i < samples; ++i) {
                unsigned long long s1 = seed * 2000003ULL + cell_salt * 211ULL + 2 * i;
                auto a = gen_peel_instance(s1, 6, 5, {});
                auto b = gen_peel_instance(s1 + 1, 6, 5, {});
                GadgetInstance inst =
                    one_sum ? compose_one_sum(a, b, sphere_far_vertex(a.graph),
                                              sphere_far_vertex(b.graph))
                            : compose_triangle_sum(a, b, sphere_far_triangle(a.graph),
                                                   sphere_far_triangle(b.graph));
                if (!inst.meta.f_assignment || inst.meta.d_sk < 5)
                    throw InternalError("verify-paper: sphere composite audit failed");
                PeelOptions popt;
                popt.budget = budget;
                auto coloring = color_far_components(inst.graph, inst.lists, 6, popt);
                if (!check_coloring(inst.graph, inst.lists, coloring))
                    throw InternalError("verify-paper: far-components coloring invalid");
                cell.evidence.push_back({"sphere-pair(seed=" + std::to_string(s1) + "," +
                                             (one_sum ? "1sum" : "3sum") + ")",
                                         "colored", 0});
            }
            cell.status = CellStatus::ColoredByAlgorithm;
            cell.detail = std::string("well-separated small components on composed spheres (") +
                          (one_sum ? "kappa=1" : "kappa=3") + ", d(S_6)=5)";
        };
    };

    // ---- Table 1: kappa in {1,2} ------------------------------------------
    add(1, "5", "2", "--", fig1_cell(5));
    add(1, "5", "3", "--", thm7_cell(5));
    add(1, "5", "4", "--", [&, budget](Cell& cell) {
        auto g5 = gen_G_k5();
        auto one = compose_one_sum(g5, g5, 0, 0);  // shared pole: cut vertex
        auto dec = block_decomposition(one.graph);
        if (dec.cut_vertices.empty())
            throw InternalError("verify-paper: one-sum composite has no cut vertex");
        if (!one.meta.f_assignment || one.meta.d_sk != 4)
            throw InternalError("verify-paper: one-sum composite audit failed");
        for (int c = 0; c < 25; ++c) {
            auto sub = g5_copy_subinstance(g5, c);
            cell.evidence.push_back(
                run_uncolorable(sub, "g5-copy(" + std::to_string(c) + ")", budget));
        }
        cell.status = CellStatus::RefutedByGadget;
        cell.detail = "one-sum of two chained-copies gadgets at the first pole: kappa=1, "
                      "d(S_5)=4; uncolorability carries over from either summand's copies";
    });
    add(1, "5", ">=5", "?", [](Cell& cell) {
        cell.status = CellStatus::Open;
        cell.detail = "open in the source tables";
    });

    add(1, "6", "2", "--", fig1_cell(6));
    add(1, "6", "3", "--/?", thm7_cell(6));
    add(1, "6", "4", "?", [](Cell& cell) {
        cell.status = CellStatus::Open;
        cell.detail = "open in the source tables";
    });
    add(1, "6", ">=5", "+", sphere_battery(true, 1));

    add(1, "7", "2", "--", fig1_cell(7));
    add(1, "7", "3", "--/?", thm7_cell(7));
    add(1, "7", "4", "?", [](Cell& cell) {
        cell.status = CellStatus::Open;
        cell.detail = "open in the source tables";
    });
    add(1, "7", ">=5", "+", [](Cell& cell) {
        cell.status = CellStatus::Skipped;
        cell.detail =
            "no desk-scale instance: a planar graph cannot keep every vertex within distance 2 "
            "of a small component at degree >= 7, so separated d(S_7)>=5 witnesses with "
            "nonempty big side are out of constructive reach; the far-components argument is "
            "exercised at k=6 instead";
    });

    add(1, ">=8", "2", "--", fig1_cell(8));
    add(1, ">=8", "3", "+", peel_battery(8, false, 2, ""));
    add(1, ">=8", "4", "+",
        peel_battery(8, false, 2, "class d(S_k)>=4 is contained in the sampled d(S_k)>=3 class"));
    add(1, ">=8", ">=5", "+",
        peel_battery(8, false, 2, "class d(S_k)>=5 is contained in the sampled d(S_k)>=3 class"));

    // ---- Table 2: kappa in {3,4} ------------------------------------------
    add(2, "5", "2", "--", kplus_cell(5));
    add(2, "5", "3", "--", g5_cells);
    add(2, "5", "4", "--", g5_cells);
    add(2, "5", ">=5", "?", [](Cell& cell) {
        cell.status = CellStatus::Open;
        cell.detail = "open in the source tables";
    });

    add(2, "6", "2", "--", kplus_cell(6));
    add(2, "6", "3", "?", [](Cell& cell) {
        cell.status = CellStatus::Open;
        cell.detail = "open in the source tables";
    });
    add(2, "6", "4", "?", [](Cell& cell) {
        cell.status = CellStatus::Open;
        cell.detail = "open in the source tables";
    });
    add(2, "6", ">=5", "+", sphere_battery(false, 3));

    add(2, "7", "2", "--", kplus_cell(7));
    add(2, "7", "3", "+", peel_battery(7, true, 4, ""));
    add(2, "7", "4", "+",
        peel_battery(7, true, 4, "class d(S_k)>=4 is contained in the sampled d(S_k)>=3 class"));
    add(2, "7", ">=5", "+",
        peel_battery(7, true, 4, "class d(S_k)>=5 is contained in the sampled d(S_k)>=3 class"));

    add(2, ">=8", "2", "--", kplus_cell(8));
    add(2, ">=8", "3", "+", peel_battery(8, true, 5, ""));
    add(2, ">=8", "4", "+",
        peel_battery(8, true, 5, "class d(S_k)>=4 is contained in the sampled d(S_k)>=3 class"));
    add(2, ">=8", ">=5", "+",
        peel_battery(8, true, 5, "class d(S_k)>=5 is contained in the sampled d(S_k)>=3 class"));

    // Run the cells, optionally in parallel; emission order stays fixed.
    std::vector<std::string> errors(jobs.size());
#ifdef LCOL_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, options.jobs))
#endif
    for (size_t i = 0; i < jobs.size(); ++i) {
        try {
            jobs[i].fill(jobs[i].cell);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (size_t i = 0; i < jobs.size(); ++i)
        if (!errors[i].empty())
            throw InternalError("verify-paper cell T" + std::to_string(jobs[i].cell.table) +
                                " k=" + jobs[i].cell.k_label + " d=" + jobs[i].cell.d_label +
                                ": " + errors[i]);

    for (auto& job : jobs) report.cells.push_back(std::move(job.cell));
    return report;
}

bool VerifyReport::all_marks_consistent() const {
    for (const auto& cell : cells) {
        if (cell.status == CellStatus::RefutedByGadget) {
            if (cell.evidence.empty()) return false;
            for (const auto& ev : cell.evidence)
                if (ev.outcome != "uncolorable") return false;
        }
        if (cell.status == CellStatus::ColoredByAlgorithm) {
            if (cell.evidence.empty()) return false;
            for (const auto& ev : cell.evidence)
                if (ev.outcome != "colored") return false;
        }
        if ((cell.status == CellStatus::Open || cell.status == CellStatus::Skipped) &&
            !cell.evidence.empty())
            return false;
    }
    return true;
}

std::string VerifyReport::to_text() const {
    std::ostringstream out;
    out << "verification matrix, seed=" << seed << ", samples-per-cell=" << samples_per_cell
        << "\n\n";
    auto shorthand = [](const Cell& c) -> std::string {
        switch (c.status) {
            case CellStatus::RefutedByGadget: return "--";
            case CellStatus::ColoredByAlgorithm: return "+";
            case CellStatus::Open: return "?";
            case CellStatus::Skipped: return "skip";
        }
        return "?";
    };
    for (int table = 1; table <= 2; ++table) {
        out << "table " << table << " (kappa in " << (table == 1 ? "{1,2}" : "{3,4}") << ")\n";
        out << "  k\\d(S_k)";
        for (const char* d : {"2", "3", "4", ">=5"}) out << "\t" << d;
        out << "\n";
        for (const char* k : {"5", "6", "7", ">=8"}) {
            out << "  " << k;
            for (const char* d : {"2", "3", "4", ">=5"}) {
                for (const auto& cell : cells)
                    if (cell.table == table && cell.k_label == k && cell.d_label == d)
                        out << "\t" << shorthand(cell) << "(" << cell.paper_mark << ")";
            }
            out << "\n";
        }
        out << "\n";
    }
    out << "cells:\n";
    for (const auto& cell : cells) {
        out << "cell T" << cell.table << " k=" << cell.k_label << " d=" << cell.d_label
            << " mark=" << cell.paper_mark << " status=" << cell_status_name(cell.status)
            << "\n";
        if (!cell.detail.empty()) out << "  detail: " << cell.detail << "\n";
        for (const auto& ev : cell.evidence)
            out << "  evidence " << ev.instance_id << " " << ev.outcome << " nodes=" << ev.nodes
                << "\n";
    }
    return out.str();
}

} // namespace lcol
