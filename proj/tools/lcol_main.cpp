// lcol: list-coloring toolkit command line.
//
// Exit codes: 0 = claim verified / colorable, 1 = uncolorable / refuted,
// 2 = error (bad input, budget exceeded, precondition violation).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lcol/gadgets.hpp"
#include "lcol/instance_io.hpp"
#include "lcol/peel.hpp"
#include "lcol/solver.hpp"
#include "lcol/structure.hpp"
#include "lcol/verify.hpp"

namespace {

using namespace lcol;

Instance read_instance(const std::string& path) {
    if (path.empty() || path == "-") return parse_instance(std::cin);
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_instance(in);
}

void emit(const GadgetInstance& gadget, const std::string& out_path) {
    Instance inst{gadget.graph, gadget.lists, {}};
    inst.meta["family"] = gadget.meta.family;
    inst.meta["k"] = std::to_string(gadget.meta.k);
    inst.meta["claimed"] = gadget.meta.claimed_verdict;
    inst.meta["delta"] = std::to_string(gadget.meta.delta);
    inst.meta["d_sk"] = std::to_string(gadget.meta.d_sk);
    if (gadget.meta.kappa)
        inst.meta["kappa"] = std::to_string(*gadget.meta.kappa) +
                             (gadget.meta.kappa_trusted ? " (by construction)" : "");
    if (gadget.meta.minor_free_trusted) inst.meta["k5_minor_free"] = "by construction";
    if (out_path.empty() || out_path == "-")
        write_instance(std::cout, inst);
    else {
        std::ofstream out(out_path);
        write_instance(out, inst);
    }
}

ShapeKind parse_shape(const std::string& name) {
    for (ShapeKind s : {ShapeKind::Singleton, ShapeKind::PairK2, ShapeKind::TriangleK3,
                        ShapeKind::CliqueK4, ShapeKind::CycleC9, ShapeKind::TadpoleC7,
                        ShapeKind::PathP6, ShapeKind::BowtieK3, ShapeKind::K4PathK4,
                        ShapeKind::NestedK4Tail})
        if (shape_name(s) == name) return s;
    throw Error("unknown shape: " + name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"list-coloring toolkit: exact solving, structure checks, gadget "
                 "generators, peeling colorers, and the verification matrix"};
    app.require_subcommand(1);

    std::string in_path = "-", out_path = "-";
    long long max_nodes = 0;
    unsigned long long seed = 1;

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a gadget instance");
    std::string family;
    int gen_k = 4, gen_spacing = 3;
    std::vector<std::string> gen_shapes;
    bool gen_3conn = false, gen_equal = false, gen_lens = false;
    std::string gen_base = "k5";
    int gen_a = 7, gen_b = 12;
    gen->add_option("family", family, "fig1|kplus|thm7|h5|g5|peel")->required();
    gen->add_option("--k", gen_k, "list size cap k");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--spacing", gen_spacing, "separation between small components");
    gen->add_option("--shape", gen_shapes, "peel shapes (repeatable)");
    gen->add_flag("--three-connected", gen_3conn, "wrap the peel frame (kappa=3)");
    gen->add_flag("--equal-lists", gen_equal, "steer deep case branches");
    gen->add_flag("--lens", gen_lens, "tiny single-component peel instance");
    gen->add_option("--base", gen_base, "thm7 base: k5|octahedron");
    gen->add_option("--a", gen_a, "h5 first pole color (outside 1..6)");
    gen->add_option("--b", gen_b, "h5 second pole color (outside 1..6)");
    gen->add_option("-o,--output", out_path, "output file (default stdout)");

    // --- solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "exact list-coloring of an instance");
    bool print_coloring = false, print_certificate = false;
    solve->add_option("input", in_path, "instance file (default stdin)");
    solve->add_option("--max-nodes", max_nodes, "search node budget (env LCOL_MAX_NODES)");
    solve->add_flag("--coloring", print_coloring, "print the coloring when colorable");
    solve->add_flag("--certificate", print_certificate, "print a block-list certificate if found");

    // --- check -------------------------------------------------------------
    auto* check = app.add_subcommand("check", "structural checks on an instance");
    bool chk_gallai = false, chk_kappa = false, chk_minor = false;
    int chk_dsk = -1, chk_fassign = -1;
    check->add_option("input", in_path, "instance file (default stdin)");
    check->add_flag("--gallai", chk_gallai, "Gallai-tree test");
    check->add_flag("--kappa", chk_kappa, "vertex connectivity");
    check->add_flag("--minor", chk_minor, "exact K5-minor test");
    check->add_option("--dsk", chk_dsk, "component distance of S_k for this k");
    check->add_option("--fassign", chk_fassign, "validate |L(v)|=min(d(v),k) for this k");

    // --- peel --------------------------------------------------------------
    auto* peel = app.add_subcommand("peel", "peeling colorers");
    int peel_k = 8;
    std::string peel_mode = "k8";
    bool peel_trace = false, peel_print = false, peel_k6 = false;
    std::string minor_check = "auto";
    peel->add_option("input", in_path, "instance file (default stdin)");
    peel->add_option("--k", peel_k, "list size cap k")->required();
    peel->add_option("--mode", peel_mode, "k8|3conn|dist3|far");
    peel->add_flag("--trace", peel_trace, "print the peel trace");
    peel->add_flag("--coloring", peel_print, "print the coloring");
    peel->add_flag("--allow-k6", peel_k6, "experimental k=6 in 3conn mode");
    peel->add_option("--minor-check", minor_check, "auto|always|never");
    peel->add_option("--max-nodes", max_nodes, "inner solve budget");

    // --- verify-paper --------------------------------------------------------
    auto* verify = app.add_subcommand("verify-paper", "reproduce the result tables at desk scale");
    int jobs = 1, samples = 20;
    verify->add_option("--seed", seed, "battery seed");
    verify->add_option("--jobs", jobs, "parallel cell workers");
    verify->add_option("--samples", samples, "instances per sampled cell");
    verify->add_option("--max-nodes", max_nodes, "solver budget per run");
    verify->add_option("-o,--output", out_path, "report file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            GadgetInstance inst;
            if (family == "fig1") inst = gen_fig1(gen_k);
            else if (family == "kplus") inst = gen_complete_minus_clique(gen_k);
            else if (family == "thm7") {
                if (gen_base == "k5")
                    inst = gen_triangle_augmented(base_k5(), base_k5_lists(), gen_k);
                else if (gen_base == "octahedron")
                    inst = gen_triangle_augmented(base_octahedron(), base_octahedron_lists(),
                                                  gen_k);
                else throw Error("unknown base: " + gen_base);
            } else if (family == "h5") inst = gen_H_k5(gen_a, gen_b);
            else if (family == "g5") inst = gen_G_k5();
            else if (family == "peel") {
                PeelGenOptions o;
                for (const auto& s : gen_shapes) o.shapes.push_back(parse_shape(s));
                o.three_connected = gen_3conn;
                o.equal_lists = gen_equal;
                o.lens = gen_lens;
                inst = gen_peel_instance(seed, gen_k, gen_spacing, o);
            } else throw Error("unknown family: " + family);
            emit(inst, out_path);
            return 0;
        }

        if (solve->parsed()) {
            auto inst = read_instance(in_path);
            SolveBudget budget;
            budget.max_nodes = max_nodes;
            auto res = solve_exact(inst.graph, inst.lists, budget);
            std::cout << verdict_name(res.verdict) << " nodes=" << res.nodes << "\n";
            if (res.verdict == Verdict::Colorable && print_coloring)
                for (Vertex v = 0; v < inst.graph.num_vertices(); ++v)
                    std::cout << "c " << v << ' ' << res.coloring.color(v) << "\n";
            if (res.certificate && print_certificate) {
                for (size_t b = 0; b < res.certificate->blocks.size(); ++b) {
                    std::cout << "cert block";
                    for (Vertex v : res.certificate->blocks[b]) std::cout << ' ' << v;
                    std::cout << " colors";
                    for (Color c : res.certificate->block_lists[b]) std::cout << ' ' << c;
                    std::cout << "\n";
                }
            }
            if (res.verdict == Verdict::BudgetExceeded) return 2;
            return res.verdict == Verdict::Colorable ? 0 : 1;
        }

        if (check->parsed()) {
            auto inst = read_instance(in_path);
            int exit_code = 0;
            if (chk_gallai) {
                auto g = is_gallai_tree(inst.graph);
                std::cout << "gallai-tree " << (g.is_gallai_tree ? "yes" : "no");
                if (!g.is_gallai_tree) {
                    std::cout << " witness-block";
                    for (Vertex v : g.witness_block) std::cout << ' ' << v;
                }
                std::cout << "\n";
            }
            if (chk_kappa)
                std::cout << "kappa " << vertex_connectivity(inst.graph) << "\n";
            if (chk_minor) {
                auto m = has_k5_minor(inst.graph);
                if (m.status == MinorResult::Status::BudgetExceeded) {
                    std::cout << "k5-minor budget-exceeded\n";
                    exit_code = 2;
                } else if (m.status == MinorResult::Status::Yes) {
                    std::cout << "k5-minor yes";
                    for (const auto& bs : m.branch_sets) {
                        std::cout << " [";
                        for (size_t i = 0; i < bs.size(); ++i)
                            std::cout << (i ? "," : "") << bs[i];
                        std::cout << "]";
                    }
                    std::cout << "\n";
                    exit_code = 1;
                } else {
                    std::cout << "k5-minor no\n";
                }
            }
            if (chk_dsk > 0) {
                auto [small, big] = small_big_split(inst.graph, chk_dsk);
                std::cout << "d_S" << chk_dsk << " "
                          << component_distance(inst.graph, small) << "\n";
            }
            if (chk_fassign > 0) {
                bool ok = validate_f_assignment(inst.graph, inst.lists, chk_fassign);
                std::cout << "f-assignment(k=" << chk_fassign << ") " << (ok ? "yes" : "no")
                          << "\n";
                if (!ok) exit_code = 1;
            }
            return exit_code;
        }

        if (peel->parsed()) {
            auto inst = read_instance(in_path);
            PeelOptions o;
            o.budget.max_nodes = max_nodes;
            o.allow_k6_experimental = peel_k6;
            if (minor_check == "always") o.verify_minor_free = MinorCheck::Always;
            else if (minor_check == "never") o.verify_minor_free = MinorCheck::Never;

            Coloring coloring;
            if (peel_mode == "k8") {
                auto res = peel_color_k8(inst.graph, inst.lists, peel_k, o);
                coloring = res.coloring;
                if (peel_trace) std::cout << res.trace.to_text();
            } else if (peel_mode == "3conn") {
                auto res = peel_color_3connected(inst.graph, inst.lists, peel_k, o);
                coloring = res.coloring;
                if (peel_trace) std::cout << res.trace.to_text();
            } else if (peel_mode == "dist3") {
                coloring = color_distance3(inst.graph, inst.lists, o);
            } else if (peel_mode == "far") {
                coloring = color_far_components(inst.graph, inst.lists, peel_k, o);
            } else throw Error("unknown peel mode: " + peel_mode);
            std::cout << "colored ok="
                      << (check_coloring(inst.graph, inst.lists, coloring) ? 1 : 0) << "\n";
            if (peel_print)
                for (Vertex v = 0; v < inst.graph.num_vertices(); ++v)
                    std::cout << "c " << v << ' ' << coloring.color(v) << "\n";
            return 0;
        }

        if (verify->parsed()) {
            VerifyOptions o;
            o.seed = seed;
            o.jobs = jobs;
            o.samples_per_cell = samples;
            o.budget.max_nodes = max_nodes;
            auto report = verify_paper(o);
            if (!report.all_marks_consistent()) throw InternalError("inconsistent report");
            if (out_path.empty() || out_path == "-")
                std::cout << report.to_text();
            else {
                std::ofstream out(out_path);
                out << report.to_text();
            }
            return 0;
        }
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
