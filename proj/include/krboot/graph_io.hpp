#pragma once

#include <string>

#include "krboot/graph.hpp"

namespace krboot {

// Canonical edge-list text: first line "n m", then m lines "u v" with
// 0 <= u < v < n, sorted lexicographically.
std::string graph_to_text(const Graph& g);

// Parses the edge-list format. Blank lines and lines starting with '#' are
// ignored. Throws InputError on a malformed header, a declared edge count
// that does not match the body, an endpoint out of range, or a loop.
Graph graph_from_text(const std::string& text);

// Reads a file and parses it; InputError if unreadable.
Graph read_graph_file(const std::string& path);

}  // namespace krboot
