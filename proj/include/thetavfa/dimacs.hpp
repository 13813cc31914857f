#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thetavfa/graph.hpp"

namespace thetavfa {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct DimacsOptions {
  /// Replace the edge set by its complement (clique benchmarks -> stable set).
  bool complement = false;
  /// A header whose edge count disagrees with the `e` lines is only a warning
  /// unless this is set.
  bool strict_edge_count = false;
};

struct DimacsResult {
  WeightedGraph graph;
  std::vector<std::string> warnings;
};

/// Reads the DIMACS ASCII graph format: `c` comments, one `p edge n m`
/// header, `e i j` lines with 1-based endpoints and optional `n i w` vertex
/// weight lines. Vertices without a weight line get weight 1.
DimacsResult parse_dimacs(std::string_view text, const DimacsOptions& options = {});
DimacsResult read_dimacs_file(const std::string& path, const DimacsOptions& options = {});

/// Writes edges sorted lexicographically; weight lines are emitted only when
/// some weight differs from 1.
std::string emit_dimacs(const WeightedGraph& g, std::string_view comment = {});

/// {"n": int, "edges": [[i,j],...], "weights": [...]} with 0-based indices.
std::string graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(std::string_view text);

/// Dispatches on content: JSON when the first non-blank character is '{',
/// DIMACS otherwise.
WeightedGraph read_graph_file(const std::string& path, const DimacsOptions& options = {});

}  // namespace thetavfa
