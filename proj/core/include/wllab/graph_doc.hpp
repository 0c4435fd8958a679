#pragma once

#include <map>
#include <string>

#include "wllab/graph.hpp"

namespace wllab {

struct GraphDocMeta {
  std::map<std::string, std::string> fields;
};

// JSON document format for arc-coloured digraphs (.ccg.json): vertex count,
// sorted colour names, default loop/nonedge colours and the list of
// non-default arcs, sorted. Encoding is canonical, so equal graphs produce
// byte-identical documents.
std::string encode_graph_doc(const Graph& g, const GraphDocMeta& meta = {});

// Throws ParseError on malformed documents and NotRainbow when the decoded
// partition violates the rainbow conditions.
Graph decode_graph_doc(const std::string& text);

Graph load_graph_doc(const std::string& path);
// Writes to a temporary file in the target directory, then renames.
void save_graph_doc(const Graph& g, const std::string& path, const GraphDocMeta& meta = {});

}  // namespace wllab
