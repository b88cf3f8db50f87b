// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <json.hpp>

#include "apirec/corpus/corpus.hpp"
#include "apirec/source/errors.hpp"

namespace apirec {

using ordered_json = nlohmann::ordered_json;

std::string to_record(const TrainingInstance& inst) {
  ordered_json rec;
  ordered_json nodes = ordered_json::array();
  for (const auto& n : inst.graph.nodes) {
    ordered_json node;
    node["id"] = n.id;
    node["label"] = n.label;
    nodes.push_back(std::move(node));
  }
  ordered_json edges = ordered_json::array();
  for (const auto& e : inst.graph.edges) edges.push_back(ordered_json::array({e.src, e.dst, to_string(e.type)}));
  rec["nodes"] = std::move(nodes);
  rec["edges"] = std::move(edges);
  rec["tokens"] = ordered_json(std::vector<std::string>(inst.tokens.begin(), inst.tokens.end()));
  rec["label"] = inst.label;
  return rec.dump();
}

TrainingInstance from_record(const std::string& line, long record) {
  TrainingInstance inst;
  try {
    const auto rec = ordered_json::parse(line);
    if (!rec.is_object() || rec.size() != 4) throw FormatError("record must have four keys", record);
    const char* keys[] = {"nodes", "edges", "tokens", "label"};
    std::size_t k = 0;
    for (auto it = rec.begin(); it != rec.end(); ++it, ++k)
      if (it.key() != keys[k]) throw FormatError("unexpected key '" + it.key() + "'", record);

    for (const auto& node : rec.at("nodes")) {
      GraphNode n;
      n.id = node.at("id").get<int>();
      n.label = node.at("label").get<std::string>();
      if (n.id != static_cast<int>(inst.graph.nodes.size())) throw FormatError("node ids must be dense", record);
      if (n.label == kHoleLabel) inst.graph.hole = n.id;
      inst.graph.nodes.push_back(std::move(n));
    }
    for (const auto& edge : rec.at("edges")) {
      if (!edge.is_array() || edge.size() != 3) throw FormatError("edge must be [src, dst, type]", record);
      auto type = parse_edge_type(edge[2].get<std::string>());
      if (!type) throw FormatError("unknown edge type", record);
      inst.graph.edges.push_back({edge[0].get<int>(), edge[1].get<int>(), *type});
    }
    for (const auto& t : rec.at("tokens")) inst.tokens.insert(t.get<std::string>());
    inst.label = rec.at("label").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed record: ") + e.what(), record);
  }
  if (auto err = validate(inst.graph); !err.empty()) throw FormatError(err, record);
  if (!inst.graph.hole) throw FormatError("record has no hole", record);
  return inst;
}

void write_corpus(const std::vector<TrainingInstance>& instances, std::ostream& out) {
  for (const auto& inst : instances) out << to_record(inst) << '\n';
}

void write_corpus(const std::vector<TrainingInstance>& instances, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_corpus(instances, out);
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<TrainingInstance> load_corpus(std::istream& in) {
  std::vector<TrainingInstance> out;
  std::string line;
  long record = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(from_record(line, record++));
  }
  return out;
}

std::vector<TrainingInstance> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load_corpus(in);
}

}  // namespace apirec
