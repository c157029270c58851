#include "lcol/instance_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace lcol {

Instance parse_instance(std::istream& in) {
    Instance inst;
    int n = -1, m = -1;
    std::vector<Edge> edges;
    std::vector<std::vector<Color>> lists;
    std::vector<char> list_seen;
    std::string line;
    int lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        std::string comment;
        if (hash != std::string::npos) {
            comment = line.substr(hash + 1);
            line = line.substr(0, hash);
        }
        if (!comment.empty()) {
            std::istringstream cs(comment);
            std::string tag, key;
            if (cs >> tag >> key && tag == "meta") {
                std::string value, word;
                while (cs >> word) {
                    if (!value.empty()) value += ' ';
                    value += word;
                }
                inst.meta[key] = value;
            }
        }
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "p") {
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "lcol")
                throw ParseError(lineno, "expected 'p lcol <n> <m>'");
            if (n < 0 || m < 0) throw ParseError(lineno, "negative n or m");
            lists.assign(n, {});
            list_seen.assign(n, 0);
        } else if (kind == "e") {
            if (n < 0) throw ParseError(lineno, "edge before problem line");
            Vertex u, v;
            if (!(ls >> u >> v)) throw ParseError(lineno, "expected 'e <u> <v>'");
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw ParseError(lineno, "edge endpoint out of range");
            if (u == v) throw ParseError(lineno, "self-loop");
            Edge e{std::min(u, v), std::max(u, v)};
            if (std::find(edges.begin(), edges.end(), e) != edges.end())
                throw ParseError(lineno, "duplicate edge");
            edges.push_back(e);
        } else if (kind == "l") {
            if (n < 0) throw ParseError(lineno, "list before problem line");
            Vertex v;
            if (!(ls >> v)) throw ParseError(lineno, "expected 'l <v> <colors...>'");
            if (v < 0 || v >= n) throw ParseError(lineno, "list for unknown vertex");
            if (list_seen[v]) throw ParseError(lineno, "duplicate list for vertex");
            Color c;
            while (ls >> c) {
                if (c < 0) throw ParseError(lineno, "negative color");
                lists[v].push_back(c);
            }
            if (lists[v].empty()) throw ParseError(lineno, "empty list");
            list_seen[v] = 1;
        } else {
            throw ParseError(lineno, "unknown record '" + kind + "'");
        }
    }
    if (n < 0) throw ParseError(lineno, "missing problem line");
    if (static_cast<int>(edges.size()) != m)
        throw ParseError(lineno, "edge count mismatch: header says " + std::to_string(m) +
                                     ", found " + std::to_string(edges.size()));
    for (Vertex v = 0; v < n; ++v)
        if (!list_seen[v])
            throw ParseError(lineno, "missing list for vertex " + std::to_string(v));
    inst.graph = Graph(n, std::move(edges));
    inst.lists = ListAssignment(std::move(lists));
    return inst;
}

Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
    for (const auto& [k, v] : inst.meta) out << "# meta " << k << ' ' << v << '\n';
    out << "p lcol " << inst.graph.num_vertices() << ' ' << inst.graph.num_edges() << '\n';
    for (const auto& [u, v] : inst.graph.edges()) out << "e " << u << ' ' << v << '\n';
    for (Vertex v = 0; v < inst.graph.num_vertices(); ++v) {
        out << "l " << v;
        for (Color c : inst.lists.list(v)) out << ' ' << c;
        out << '\n';
    }
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    write_instance(out, inst);
    return out.str();
}

} // namespace lcol
