#include "wllab/graph.hpp"

#include <stdexcept>

#include "wllab/errors.hpp"

namespace wllab {

namespace {
constexpr Colour kUnset = 0xffffffffu;
}

RainbowReport validate_rainbow(const Partition& arcs) {
  if (arcs.arity() != 2) return {false, "arc partition must have arity 2"};
  const std::uint32_t n = arcs.n();
  std::vector<bool> loop(arcs.class_count(), false);
  for (Vertex v = 0; v < n; ++v) loop[arcs.colour(static_cast<TupleCode>(v) * n + v)] = true;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && loop[arcs.colour(static_cast<TupleCode>(u) * n + v)])
        return {false, "a loop colour appears on an off-diagonal arc"};

  std::vector<Colour> transpose(arcs.class_count(), kUnset);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      Colour c = arcs.colour(static_cast<TupleCode>(u) * n + v);
      Colour ct = arcs.colour(static_cast<TupleCode>(v) * n + u);
      if (transpose[c] == kUnset)
        transpose[c] = ct;
      else if (transpose[c] != ct)
        return {false, "transposing arcs does not induce a map on colours"};
    }
  }
  return {true, {}};
}

Graph Graph::from_partition(Partition arcs, std::vector<std::string> colour_names) {
  RainbowReport report = validate_rainbow(arcs);
  if (!report.ok) throw NotRainbow(report.violation);

  const std::uint32_t n = arcs.n();
  if (colour_names.empty()) {
    colour_names.resize(arcs.class_count());
    for (std::uint32_t c = 0; c < arcs.class_count(); ++c)
      colour_names[c] = "c" + std::to_string(c);
  }
  if (colour_names.size() != arcs.class_count())
    throw std::invalid_argument("Graph: need exactly one name per colour");
  for (std::size_t i = 0; i < colour_names.size(); ++i)
    for (std::size_t j = i + 1; j < colour_names.size(); ++j)
      if (colour_names[i] == colour_names[j])
        throw std::invalid_argument("Graph: duplicate colour name '" + colour_names[i] + "'");

  std::vector<Colour> transpose(arcs.class_count(), kUnset);
  std::vector<bool> loop(arcs.class_count(), false);
  for (Vertex v = 0; v < n; ++v) loop[arcs.colour(static_cast<TupleCode>(v) * n + v)] = true;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      Colour c = arcs.colour(static_cast<TupleCode>(u) * n + v);
      if (transpose[c] == kUnset) transpose[c] = arcs.colour(static_cast<TupleCode>(v) * n + u);
    }
  return Graph(std::move(arcs), std::move(colour_names), std::move(transpose), std::move(loop));
}

Partition atomic_types(const Graph& g, std::uint32_t k, const Caps& caps) {
  if (k == 0) throw std::invalid_argument("atomic_types: k must be at least 1");
  const std::uint32_t n = g.n();
  TupleCodec codec(n, k, caps);

  if (k == 1) {
    detail::SignatureInterner interner;
    std::vector<Colour> out(n);
    for (Vertex v = 0; v < n; ++v) out[v] = interner.intern({g.arc_colour(v, v)});
    return Partition(n, 1, std::move(out), caps);
  }

  const std::vector<IndexVec> pairs = injective_index_vectors(k, 2);
  detail::SignatureInterner interner;
  std::vector<Colour> out(codec.size());
  std::vector<std::uint32_t> sig(pairs.size());
  VertexTuple v;
  for (std::uint64_t code = 0; code < codec.size(); ++code) {
    v = codec.decode(code);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      sig[i] = g.arc_colour(v[pairs[i][0]], v[pairs[i][1]]);
    out[code] = interner.intern(std::vector<std::uint32_t>(sig));
  }
  return Partition(n, k, std::move(out), caps);
}

}  // namespace wllab
