#pragma once

// Text formats. A family file is a `ground N` line followed by one set per
// line: space-separated 1-based element labels in ascending order, `-` for
// the empty set, `#` starts a comment. A hereditary file uses the same set
// syntax but its lines are the bases. A graph file is `graph N` followed by
// one `u v` edge per line.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "kradon/family.hpp"
#include "kradon/hereditary.hpp"

namespace kradon {

namespace detail {

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    std::string s = pos == std::string::npos ? line : line.substr(0, pos);
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline ElementSet parse_set_line(const std::string& line, GroundSize ground, unsigned lineno) {
    if (line == "-") return ElementSet{};
    std::istringstream in(line);
    ElementSet s;
    long prev = 0;
    long label;
    while (in >> label) {
        if (label < 1 || static_cast<unsigned long>(label) > ground.n)
            throw malformed_input("line " + std::to_string(lineno) + ": element " +
                                  std::to_string(label) + " outside ground set of size " +
                                  std::to_string(ground.n));
        if (label <= prev)
            throw malformed_input("line " + std::to_string(lineno) +
                                  ": element labels must be strictly ascending");
        prev = label;
        s.bits |= std::uint64_t{1} << (label - 1);
    }
    if (!in.eof())
        throw malformed_input("line " + std::to_string(lineno) + ": expected element labels");
    return s;
}

inline GroundSize parse_header(std::istream& in, const std::string& keyword, unsigned& lineno) {
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip_comment(line);
        if (s.empty()) continue;
        std::istringstream head(s);
        std::string word;
        long n = 0;
        if (!(head >> word >> n) || word != keyword || n < 1)
            throw malformed_input("line " + std::to_string(lineno) + ": expected '" + keyword +
                                  " N' header");
        if (static_cast<unsigned long>(n) > kMaxGround)
            throw malformed_input("line " + std::to_string(lineno) + ": ground size " +
                                  std::to_string(n) + " exceeds limit " +
                                  std::to_string(kMaxGround));
        std::string rest;
        if (head >> rest)
            throw malformed_input("line " + std::to_string(lineno) + ": trailing tokens in header");
        return GroundSize(static_cast<unsigned>(n));
    }
    throw malformed_input("missing '" + keyword + " N' header");
}

inline std::vector<ElementSet> parse_set_lines(std::istream& in, GroundSize ground,
                                               unsigned& lineno) {
    std::vector<ElementSet> sets;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip_comment(line);
        if (s.empty()) continue;
        sets.push_back(parse_set_line(s, ground, lineno));
    }
    return sets;
}

}  // namespace detail

inline void write_set(std::ostream& out, ElementSet s) {
    if (s.empty()) { out << "-"; return; }
    bool first = true;
    s.for_each_element([&](unsigned e) {
        if (!first) out << ' ';
        out << (e + 1);
        first = false;
    });
}

inline void write_family(std::ostream& out, const SetFamily& f) {
    out << "ground " << f.ground().n << "\n";
    for (ElementSet m : f.members()) {
        write_set(out, m);
        out << "\n";
    }
}

inline std::string family_to_string(const SetFamily& f) {
    std::ostringstream out;
    write_family(out, f);
    return out.str();
}

inline std::string set_to_string(ElementSet s) {
    std::ostringstream out;
    write_set(out, s);
    return out.str();
}

inline SetFamily read_family(std::istream& in) {
    unsigned lineno = 0;
    GroundSize ground = detail::parse_header(in, "ground", lineno);
    return make_family(ground, detail::parse_set_lines(in, ground, lineno));
}

inline SetFamily family_from_string(const std::string& text) {
    std::istringstream in(text);
    return read_family(in);
}

inline HereditaryFamily read_hereditary(std::istream& in) {
    unsigned lineno = 0;
    GroundSize ground = detail::parse_header(in, "ground", lineno);
    std::vector<ElementSet> bases = detail::parse_set_lines(in, ground, lineno);
    if (bases.empty())
        throw malformed_input("hereditary file must list at least one base");
    return HereditaryFamily::from_bases(ground, std::move(bases));
}

inline HereditaryFamily hereditary_from_string(const std::string& text) {
    std::istringstream in(text);
    return read_hereditary(in);
}

inline void write_hereditary(std::ostream& out, const HereditaryFamily& h) {
    out << "ground " << h.ground().n << "\n";
    for (ElementSet b : h.bases().members()) {
        write_set(out, b);
        out << "\n";
    }
}

inline Graph read_graph(std::istream& in) {
    unsigned lineno = 0;
    GroundSize n = detail::parse_header(in, "graph", lineno);
    std::vector<std::pair<unsigned, unsigned>> edges;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::strip_comment(line);
        if (s.empty()) continue;
        std::istringstream es(s);
        long u = 0, v = 0;
        std::string rest;
        if (!(es >> u >> v) || (es >> rest) || u < 1 || v < 1 ||
            static_cast<unsigned long>(u) > n.n || static_cast<unsigned long>(v) > n.n)
            throw malformed_input("line " + std::to_string(lineno) +
                                  ": expected edge 'u v' with 1-based vertex labels");
        edges.emplace_back(static_cast<unsigned>(u - 1), static_cast<unsigned>(v - 1));
    }
    return Graph(n, std::move(edges));
}

inline Graph graph_from_string(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

}  // namespace kradon
