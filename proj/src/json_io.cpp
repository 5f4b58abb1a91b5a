#include "ssecut/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace ssecut {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << j.dump(2) << "\n";
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v, w] : g.edges()) edges.push_back({u, v, w});
  return {{"n", g.n}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw std::runtime_error("graph json: need object with \"n\" and \"edges\"");
  int n = j.at("n").get<int>();
  std::vector<std::tuple<int, int, double>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw std::runtime_error("graph json: each edge must be [u, v, w]");
    int u = e[0].get<int>();
    int v = e[1].get<int>();
    if (u >= v) throw std::runtime_error("graph json: edges must satisfy u < v");
    edges.emplace_back(u, v, e[2].get<double>());
  }
  return make_graph(n, edges);  // range, duplicate, and sign checks live there
}

Graph load_graph(const std::string& path) {
  try {
    return graph_from_json(load_json(path));
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw std::runtime_error(path + ": " + msg);
  }
}

}  // namespace ssecut
