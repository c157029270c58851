#ifndef LCOL_INSTANCE_IO_HPP
#define LCOL_INSTANCE_IO_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lcol/graph.hpp"

namespace lcol {

class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct Instance {
    Graph graph;
    ListAssignment lists;
    std::map<std::string, std::string> meta;  // from "# meta <key> <value>" comments
};

/// Text format:
///   p lcol <n> <m>
///   e <u> <v>            (m lines, 0-based)
///   l <v> <c1> ... <ck>  (one line per vertex)
/// '#' starts a comment; "# meta <key> <value...>" lines are collected.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);

void write_instance(std::ostream& out, const Instance& inst);
std::string write_instance(const Instance& inst);

} // namespace lcol

#endif
