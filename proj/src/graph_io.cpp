#include "krboot/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "krboot/errors.hpp"

namespace krboot {

std::string graph_to_text(const Graph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) {
        out << e.first << ' ' << e.second << '\n';
    }
    return out.str();
}

Graph graph_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    long long declared = -1;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') {
            continue;
        }
        std::istringstream fields(line);
        if (n < 0) {
            long long hn = 0;
            if (!(fields >> hn >> declared) || hn < 0 || declared < 0) {
                throw InputError("graph header must be 'n m' (line " +
                                 std::to_string(lineno) + ")");
            }
            std::string rest;
            if (fields >> rest) {
                throw InputError("trailing tokens in graph header (line " +
                                 std::to_string(lineno) + ")");
            }
            n = static_cast<int>(hn);
            continue;
        }
        long long u = 0;
        long long v = 0;
        if (!(fields >> u >> v)) {
            throw InputError("edge line must be 'u v' (line " +
                             std::to_string(lineno) + ")");
        }
        std::string rest;
        if (fields >> rest) {
            throw InputError("trailing tokens on edge line " +
                             std::to_string(lineno));
        }
        if (u == v) {
            throw InputError("loop " + std::to_string(u) + "-" +
                             std::to_string(v) + " is not allowed (line " +
                             std::to_string(lineno) + ")");
        }
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw InputError("edge endpoint out of range on line " +
                             std::to_string(lineno));
        }
        edges.push_back(make_edge(static_cast<int>(u), static_cast<int>(v)));
    }
    if (n < 0) {
        throw InputError("empty graph input: missing 'n m' header");
    }
    Graph g = build_graph(n, edges);
    if (g.edge_count() != declared) {
        throw InputError("header declares " + std::to_string(declared) +
                         " edges but body has " +
                         std::to_string(g.edge_count()) +
                         " distinct edges");
    }
    return g;
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open graph file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return graph_from_text(buf.str());
}

}  // namespace krboot
