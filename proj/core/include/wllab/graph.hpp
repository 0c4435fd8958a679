#pragma once

#include <string>
#include <vector>

#include "wllab/partition.hpp"

namespace wllab {

struct RainbowReport {
  bool ok = true;
  std::string violation;  // first failed condition, empty when ok
};

// Checks the two rainbow conditions on an arity-2 partition: the diagonal is
// a union of colour classes, and transposing arcs induces a well-defined map
// on colours.
RainbowReport validate_rainbow(const Partition& arcs);

// An arc-coloured complete digraph: a rainbow partition of V^2 plus one name
// per colour. Names make alphabets mergeable across graphs.
class Graph {
 public:
  // Validates the rainbow conditions; throws NotRainbow. When no names are
  // given they are synthesized as "c0", "c1", ...
  static Graph from_partition(Partition arcs, std::vector<std::string> colour_names = {});

  std::uint32_t n() const { return arcs_.n(); }
  const Partition& arcs() const { return arcs_; }
  Colour arc_colour(Vertex u, Vertex v) const {
    return arcs_.colour(static_cast<TupleCode>(u) * n() + v);
  }
  std::uint32_t colour_count() const { return arcs_.class_count(); }
  const std::vector<std::string>& colour_names() const { return colour_names_; }

  // Colour of the transposed arc as a function of the arc colour.
  Colour transpose_colour(Colour c) const { return transpose_colour_[c]; }
  bool is_loop_colour(Colour c) const { return loop_colour_[c]; }

  bool operator==(const Graph& other) const = default;

 private:
  Graph(Partition arcs, std::vector<std::string> names, std::vector<Colour> transpose,
        std::vector<bool> loop)
      : arcs_(std::move(arcs)),
        colour_names_(std::move(names)),
        transpose_colour_(std::move(transpose)),
        loop_colour_(std::move(loop)) {}

  Partition arcs_;
  std::vector<std::string> colour_names_;
  std::vector<Colour> transpose_colour_;
  std::vector<bool> loop_colour_;
};

// The partition of V^k by the arc colours between tuple entries: two tuples
// agree iff G(v_i, v_j) agrees for every ordered pair of distinct positions.
// For k = 1 this is the partition by loop colour.
Partition atomic_types(const Graph& g, std::uint32_t k, const Caps& caps = {});

}  // namespace wllab
