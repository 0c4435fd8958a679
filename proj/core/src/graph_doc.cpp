#include "wllab/graph_doc.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "wllab/errors.hpp"

namespace wllab {

using nlohmann::json;

std::string encode_graph_doc(const Graph& g, const GraphDocMeta& meta) {
  const std::uint32_t n = g.n();
  std::vector<std::string> names = g.colour_names();
  std::sort(names.begin(), names.end());
  std::map<std::string, std::uint32_t> name_index;
  for (std::uint32_t i = 0; i < names.size(); ++i) name_index[names[i]] = i;

  // Defaults: the most frequent loop colour and off-diagonal colour, ties
  // broken by name.
  std::map<std::string, std::uint64_t> loop_freq, off_freq;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      const std::string& name = g.colour_names()[g.arc_colour(u, v)];
      (u == v ? loop_freq : off_freq)[name]++;
    }
  auto most_frequent = [](const std::map<std::string, std::uint64_t>& freq) {
    std::string best;
    std::uint64_t count = 0;
    for (const auto& [name, c] : freq)
      if (c > count) {
        best = name;
        count = c;
      }
    return best;
  };
  const std::string loop_default = most_frequent(loop_freq);
  const std::string off_default = off_freq.empty() ? loop_default : most_frequent(off_freq);

  json arcs = json::array();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      const std::string& name = g.colour_names()[g.arc_colour(u, v)];
      const std::string& def = (u == v) ? loop_default : off_default;
      if (name != def) arcs.push_back({u, v, name_index.at(name)});
    }

  json doc;
  doc["num_vertices"] = n;
  doc["colours"] = names;
  doc["defaults"] = {{"loop", loop_default}, {"nonedge", off_default}};
  doc["arcs"] = std::move(arcs);
  json md = json::object();
  for (const auto& [k, v] : meta.fields) md[k] = v;
  doc["metadata"] = std::move(md);
  return doc.dump(2) + "\n";
}

Graph decode_graph_doc(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph document: ") + e.what());
  }
  try {
    const std::uint32_t n = doc.at("num_vertices").get<std::uint32_t>();
    if (n == 0) throw ParseError("graph document: num_vertices must be positive");
    std::vector<std::string> listed = doc.at("colours").get<std::vector<std::string>>();
    std::sort(listed.begin(), listed.end());
    if (std::adjacent_find(listed.begin(), listed.end()) != listed.end())
      throw ParseError("graph document: duplicate colour name");

    const std::string loop_default = doc.at("defaults").at("loop").get<std::string>();
    const std::string off_default = doc.at("defaults").at("nonedge").get<std::string>();
    auto listed_id = [&](const std::string& name) {
      auto it = std::lower_bound(listed.begin(), listed.end(), name);
      if (it == listed.end() || *it != name)
        throw ParseError("graph document: colour '" + name + "' is not listed");
      return static_cast<std::uint32_t>(it - listed.begin());
    };
    std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n, listed_id(off_default));
    const std::uint32_t loop_id = listed_id(loop_default);
    for (Vertex v = 0; v < n; ++v) table[static_cast<std::size_t>(v) * n + v] = loop_id;

    for (const json& arc : doc.at("arcs")) {
      if (!arc.is_array() || arc.size() != 3)
        throw ParseError("graph document: an arc must be [u, v, colour_index]");
      const std::uint64_t u = arc[0].get<std::uint64_t>();
      const std::uint64_t v = arc[1].get<std::uint64_t>();
      const std::uint64_t c = arc[2].get<std::uint64_t>();
      if (u >= n || v >= n) throw ParseError("graph document: arc endpoint out of range");
      if (c >= listed.size()) throw ParseError("graph document: colour index out of range");
      table[u * n + v] = static_cast<std::uint32_t>(c);
    }

    // Compact to the realized colours so ids stay dense.
    std::set<std::uint32_t> realized(table.begin(), table.end());
    std::vector<std::uint32_t> remap(listed.size(), 0);
    std::vector<std::string> names;
    for (std::uint32_t id : realized) {
      remap[id] = static_cast<std::uint32_t>(names.size());
      names.push_back(listed[id]);
    }
    std::vector<Colour> colours(table.size());
    for (std::size_t e = 0; e < table.size(); ++e) colours[e] = remap[table[e]];
    return Graph::from_partition(Partition(n, 2, std::move(colours)), std::move(names));
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph document: ") + e.what());
  }
}

Graph load_graph_doc(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_graph_doc(text);
}

void save_graph_doc(const Graph& g, const std::string& path, const GraphDocMeta& meta) {
  namespace fs = std::filesystem;
  const std::string text = encode_graph_doc(g, meta);
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << text;
  }
  fs::rename(tmp, target);
}

}  // namespace wllab
