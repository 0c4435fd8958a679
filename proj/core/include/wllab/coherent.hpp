#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "wllab/graph.hpp"
#include "wllab/matrix.hpp"

namespace wllab {

// A stable rainbow together with its intersection-number table and the cell
// decomposition of the vertex set.
class CoherentConfiguration {
 public:
  const Graph& rainbow() const { return rho_; }
  std::uint32_t n() const { return rho_.n(); }
  std::uint32_t colour_count() const { return rho_.colour_count(); }

  // Number of x with colour(u,x) = sigma and colour(x,v) = tau, for any arc
  // (u,v) of colour kappa.
  std::uint64_t intersection_number(Colour sigma, Colour tau, Colour kappa) const {
    return table_[(static_cast<std::size_t>(sigma) * colour_count() + tau) * colour_count() +
                  kappa];
  }

  const std::vector<std::vector<Vertex>>& cells() const { return cells_; }
  std::vector<std::uint64_t> class_sizes() const { return rho_.arcs().class_sizes(); }
  Colour transpose_colour(Colour c) const { return rho_.transpose_colour(c); }
  bool is_loop_colour(Colour c) const { return rho_.is_loop_colour(c); }

 private:
  friend struct CoherentBuilder;
  CoherentConfiguration(Graph rho, std::vector<std::uint64_t> table,
                        std::vector<std::vector<Vertex>> cells)
      : rho_(std::move(rho)), table_(std::move(table)), cells_(std::move(cells)) {}

  Graph rho_;
  std::vector<std::uint64_t> table_;
  std::vector<std::vector<Vertex>> cells_;
};

// Evidence that a rainbow is not coherent: two arcs of the same colour with
// different (sigma, tau)-counts.
struct NotCoherentWitness {
  Colour kappa, sigma, tau;
  std::array<Vertex, 2> arc_a, arc_b;
  std::uint64_t count_a, count_b;
};

using CoherenceResult = std::variant<CoherentConfiguration, NotCoherentWitness>;

// Computes the intersection numbers of a rainbow, or a witness that they are
// not constant. With verify_all unset only one representative arc per colour
// is counted; that mode is a benchmarking shortcut and proves nothing.
CoherenceResult intersection_numbers(const Graph& g, const Caps& caps = {},
                                     bool verify_all = true);

bool is_coherent(const Graph& g, const Caps& caps = {});
// As intersection_numbers, but throws Error when the graph is not coherent.
CoherentConfiguration require_coherent(const Graph& g, const Caps& caps = {});

// Restriction to a union of cells (checked), re-canonicalized.
CoherentConfiguration restrict_configuration(const CoherentConfiguration& c,
                                             const std::vector<Vertex>& vertices,
                                             const Caps& caps = {});

// The 0-1 adjacency matrices of the colour classes, indexed by colour.
std::vector<FieldMatrix> adjacency_basis(const CoherentConfiguration& c, FieldSpec field);

struct StandardBasis {
  std::vector<FieldMatrix> matrices;
};

// The unique basis of 0-1 matrices of the algebra spanned by the given
// matrices: arcs are grouped by their joint entry vector and the indicators
// must satisfy the coherence conditions. Throws ClosureViolation otherwise.
StandardBasis standard_basis(const std::vector<FieldMatrix>& spanning);

// A bijection on colours matching all intersection numbers, or nullopt.
// Exact backtracking search, pruned by colour invariants.
std::optional<std::vector<Colour>> algebraic_isomorphism(const CoherentConfiguration& c1,
                                                         const CoherentConfiguration& c2,
                                                         const Caps& caps = {});

// Colours whose class size is divisible by p: their span contains the
// Jacobson radical of the adjacency algebra over characteristic p.
std::vector<Colour> radical_support(const CoherentConfiguration& c, std::uint64_t p);

enum class Semisimplicity { Guaranteed, Unknown };

// Guaranteed when the characteristic is zero or larger than the vertex count;
// the criterion is one-directional, so everything else is Unknown.
Semisimplicity semisimple_guaranteed(const CoherentConfiguration& c, const FieldSpec& field);

}  // namespace wllab
