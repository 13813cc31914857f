#include "thetavfa/dimacs.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace thetavfa {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

DimacsResult parse_dimacs(std::string_view text, const DimacsOptions& options) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int n = -1;
  long declared_m = -1;
  std::vector<Edge> edges;
  std::vector<std::pair<int, double>> weight_lines;
  DimacsResult result;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string format;
      if (n >= 0) throw ParseError("duplicate problem line", line_no);
      if (!(ls >> format >> n >> declared_m) || n < 0 || declared_m < 0) {
        throw ParseError("malformed problem line, expected `p edge <n> <m>`", line_no);
      }
      if (format != "edge" && format != "col") {
        throw ParseError("unsupported problem format `" + format + "`", line_no);
      }
      edges.reserve(static_cast<std::size_t>(declared_m));
    } else if (tag == "e") {
      if (n < 0) throw ParseError("edge before problem line", line_no);
      long u = 0, v = 0;
      if (!(ls >> u >> v)) throw ParseError("malformed edge line", line_no);
      if (u < 1 || v < 1 || u > n || v > n) {
        throw ParseError("vertex index out of range in edge " + std::to_string(u) + " " +
                             std::to_string(v),
                         line_no);
      }
      if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), line_no);
      edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    } else if (tag == "n") {
      if (n < 0) throw ParseError("vertex line before problem line", line_no);
      long v = 0;
      double w = 0.0;
      if (!(ls >> v >> w)) throw ParseError("malformed vertex weight line", line_no);
      if (v < 1 || v > n) throw ParseError("vertex index out of range", line_no);
      if (!(w > 0.0)) throw ParseError("vertex weight must be positive", line_no);
      weight_lines.emplace_back(static_cast<int>(v - 1), w);
    } else {
      throw ParseError("unknown line type `" + tag + "`", line_no);
    }
  }
  if (n < 0) throw ParseError("missing problem line", 0);

  if (static_cast<long>(edges.size()) != declared_m) {
    const std::string msg = "header declares " + std::to_string(declared_m) + " edges but " +
                            std::to_string(edges.size()) + " edge lines were read";
    if (options.strict_edge_count) throw ParseError(msg, 0);
    result.warnings.push_back(msg);
  }

  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  for (const auto& [v, wv] : weight_lines) w[v] = wv;
  WeightedGraph g(n, edges, std::move(w));
  if (g.num_edges() != static_cast<int>(edges.size())) {
    result.warnings.push_back(std::to_string(edges.size() - g.num_edges()) +
                              " repeated edge lines collapsed");
  }
  result.graph = options.complement ? complement(g) : std::move(g);
  return result;
}

DimacsResult read_dimacs_file(const std::string& path, const DimacsOptions& options) {
  return parse_dimacs(read_file(path), options);
}

std::string emit_dimacs(const WeightedGraph& g, std::string_view comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  const bool weighted = (g.weights().array() != 1.0).any();
  if (weighted) {
    out.precision(17);
    for (int v = 0; v < g.num_vertices(); ++v) out << "n " << v + 1 << ' ' << g.weight(v) << '\n';
  }
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

std::string graph_to_json(const WeightedGraph& g) {
  nlohmann::json j;
  j["n"] = g.num_vertices();
  auto edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["weights"] = std::vector<double>(g.weights().data(), g.weights().data() + g.weights().size());
  if (g.has_labels()) j["labels"] = g.labels();
  return j.dump();
}

WeightedGraph graph_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON graph: ") + e.what(), 0);
  }
  try {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
    if (j.contains("weights")) {
      const auto ws = j["weights"].get<std::vector<double>>();
      if (static_cast<int>(ws.size()) != n) throw ParseError("weights length differs from n", 0);
      for (int i = 0; i < n; ++i) w[i] = ws[i];
    }
    WeightedGraph g(n, edges, std::move(w));
    if (j.contains("labels")) g.set_labels(j["labels"].get<std::vector<std::string>>());
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON graph: ") + e.what(), 0);
  } catch (const GraphError& e) {
    throw ParseError(e.what(), 0);
  }
}

WeightedGraph read_graph_file(const std::string& path, const DimacsOptions& options) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    WeightedGraph g = graph_from_json(text);
    return options.complement ? complement(g) : g;
  }
  try {
    return parse_dimacs(text, options).graph;
  } catch (const GraphError& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace thetavfa
