#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wllab/matrix.hpp"
#include "wllab/partition.hpp"

namespace wllab {

enum class OpFamily { WL, C, IM, IMt, IMr };

const char* to_string(OpFamily f);

// One refinement operator. WL and C act by substituting r-tuples; the
// invertible-map variants compare tuples of indicator matrices up to
// simultaneous similarity over the given field.
struct OperatorSpec {
  OpFamily family = OpFamily::WL;
  std::uint32_t k = 2;
  std::uint32_t r = 1;
  std::optional<FieldSpec> field;

  // The degenerate arities on which the operator is defined to do nothing:
  // WL/C when k <= r, IM/IMt when k <= 2, IMr when k <= 2r.
  bool is_identity() const;
};

// One synchronous round of each operator. Outputs are canonical (dense ids in
// first-occurrence order) and refine the input.
Partition wl_step(const Partition& g, std::uint32_t r = 1);
Partition c_step(const Partition& g, std::uint32_t r = 1);
Partition im_step(const Partition& g, const FieldSpec& field, const Caps& caps = {});
Partition imt_step(const Partition& g, const FieldSpec& field, const Caps& caps = {});
Partition im_r_step(const Partition& g, const FieldSpec& field, std::uint32_t r,
                    const Caps& caps = {});

Partition apply_operator(const OperatorSpec& op, const Partition& g, const Caps& caps = {});

struct FixedPointResult {
  Partition partition;
  std::uint32_t iterations = 0;              // step applications performed
  std::vector<std::uint32_t> class_history;  // class counts, input included
  bool identity_operator = false;
};

// Iterates the operator until the class structure stops changing. The result
// is a fixed point; for the degenerate arities the input is returned as is.
FixedPointResult fixed_point(const OperatorSpec& op, const Partition& start,
                             const Caps& caps = {});

// Fixed-point predicates: true iff one more round does not refine.
bool is_wl_stable(const Partition& g, std::uint32_t r = 1);
bool is_c_stable(const Partition& g, std::uint32_t r = 1);
bool is_im_stable(const Partition& g, const FieldSpec& field, const Caps& caps = {});
bool is_imt_stable(const Partition& g, const FieldSpec& field, const Caps& caps = {});
bool is_stable(const OperatorSpec& op, const Partition& g, const Caps& caps = {});

// Extends a graph-like partition of V^k to V^(k+1): the colour of (v, w) is
// the colour of v together with the colours of v with w substituted at each
// single position. Throws NotGraphLike; with verify_stable set the input must
// also be a wl fixed point.
Partition point_extension(const Partition& g, bool verify_stable = false, const Caps& caps = {});

// Indicator matrices of one substitution slot: entry (x, y) of the matrix for
// colour sigma is 1 iff substituting (x, y) at the two given positions yields
// sigma. Only realized colours are returned, sorted by colour id.
std::vector<std::pair<Colour, FieldMatrix>> substitution_indicators(const Partition& g,
                                                                    TupleCode base,
                                                                    const IndexVec& positions,
                                                                    const FieldSpec& field);

// Joint variant: matrices are indexed by the whole vector of colours obtained
// at every pair of distinct positions at once.
std::vector<std::pair<std::vector<Colour>, FieldMatrix>> joint_substitution_indicators(
    const Partition& g, TupleCode base, const FieldSpec& field);

}  // namespace wllab
