#pragma once

#include <string>
#include <vector>

#include "ct/complexes.hpp"
#include "ct/subgroups.hpp"
#include "ct/surfaces.hpp"
#include "ct/words.hpp"

namespace ct {

// Voltage data over a one-vertex base surface complex.
struct SurfaceCoverSpec {
  SurfaceComplex base;  // one point
  Voltage voltage;      // one permutation per segment pair
};

struct BranchCycle {
  int length = 0;              // cycle length l
  int branching_number = 0;    // l - 1
  int start_sheet = 0;
};

struct BranchReport {
  int degree = 1;
  std::vector<std::vector<BranchCycle>> per_face;
};

struct SurfaceCover {
  SurfaceComplex cover;
  BranchReport report;
};

// Lifts points and segments sheet-wise; each cycle of the boundary-word
// voltage permutation of length l yields one cover face wrapping the base
// boundary l times.
SurfaceCover build_surface_cover(const SurfaceCoverSpec& spec,
                                 int degree_guard = 10000);

// Every face's cycle lengths must sum to the degree.
bool verify_order_formula(const BranchReport& report);

// Characteristic double count: c_cover = k * c_base + total branching.
bool riemann_hurwitz_check(const SurfaceComplex& base,
                           const SurfaceComplex& cover,
                           const BranchReport& report);

// Per face: identity boundary permutation means the covering extends
// unbranched over that face.
std::vector<bool> unbranched_faces(const SurfaceCoverSpec& spec);

// Branching orders of a subgroup given by a coset table: for each cycle of
// the relator core's action, l = cycle length, branching order k/l - 1.
struct BranchingOrder {
  int cycle_length = 0;  // l, divides k
  long order = 0;        // m - 1 with m = k / l
};
std::vector<BranchingOrder> branching_orders_of_subgroup(const CosetTable& t,
                                                         const Word& core,
                                                         long k);

enum class GeometryClass { kSpherical, kEuclidean, kHyperbolic };

struct PlanarClass {
  GeometryClass cls = GeometryClass::kSpherical;
  std::string name;  // special-case name when recognized
};

// Trichotomy for branch orders over the sphere (triangle-type and friends)
// plus the closed-surface shapes: genus g orientable with no branching.
PlanarClass classify_planar_group(const std::vector<long>& orders,
                                  int genus = 0, bool orientable = true);

// Dehn's algorithm for the orientable genus-g surface group, g >= 2:
// replace any cyclic subword matching more than half of a cyclic rotation
// of the relator (or its inverse) by the shorter complement.
Word dehn_reduce(const Word& w, int genus);
bool dehn_is_identity(const Word& w, int genus);

// Same greedy reduction against an arbitrary quadratic surface relator
// (each generator exactly twice); the threshold is relator length / 2 + 1.
Word dehn_reduce_with(const Word& w, const Word& relator);

// Word problem for the non-orientable surface group <s_1..s_g | s_1^2 ...
// s_g^2>, decided through the orientation double cover: odd total exponent
// sum is never trivial, even words are rewritten into the index-2 subgroup
// (an orientable surface group of genus g-1) and decided there.
bool nonorientable_is_identity(const Word& w, int genus);

// Independent word-problem oracle through the infinite cyclic cover: write
// w = S1^l * u; nonzero l is non-identity, otherwise u is rewritten in the
// shifted generators and the second family eliminated; identity iff the
// result reduces freely to nothing.
bool cyclic_cover_is_identity(const Word& w, int genus);

}  // namespace ct
