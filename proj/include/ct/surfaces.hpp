#pragma once

#include <array>
#include <string>
#include <vector>

#include "ct/complexes.hpp"
#include "ct/presentations.hpp"
#include "ct/words.hpp"

namespace ct {

// Points, segment pairs and face pairs; one stored boundary word per face
// pair (the inverse face's word is derived). Boundary words are closed
// paths of signed segment ids.
struct SurfaceComplex {
  int n_points = 0;
  std::vector<Graph1::Seg> segs;
  std::vector<Word> faces;

  Graph1 skeleton() const;
  void check_basic() const;  // endpoints exist, faces are nonempty closed paths
};

// One-vertex complex whose single face has the given boundary word.
SurfaceComplex polygon_complex(const Word& boundary);

// Occurrence of a segment pair in a stored boundary word.
struct FaceOccurrence {
  int face = 0;
  int pos = 0;

  bool operator==(const FaceOccurrence&) const = default;
  bool operator<(const FaceOccurrence& o) const {
    return face != o.face ? face < o.face : pos < o.pos;
  }
};

// Star entry: a directed segment emanating from the point, plus the corner
// (face, position) crossed to reach it from the previous star entry, and
// whether it was reached as the corner's second letter (the y side of the
// corner (x, y)) or as the inverse of its first.
struct StarEntry {
  Letter seg = 0;
  FaceOccurrence corner;
  bool entered_second = false;
};

// Witness that the closed-manifold axioms hold: the two occurrences of each
// segment pair and one simple closed star per point.
struct ManifoldCert {
  std::vector<std::array<FaceOccurrence, 2>> occ;  // per segment pair, sorted
  std::vector<std::vector<StarEntry>> stars;
};

// Checks the axioms and builds the certificate; throws naming the failed
// axiom and the offending element.
ManifoldCert validate_manifold(const SurfaceComplex& c);

// Connected components as standalone complexes (points and segments
// renumbered within each part).
std::vector<SurfaceComplex> split_components(const SurfaceComplex& c);

// c = -a0 + a1 - a2. (The conventional Euler characteristic is -c.)
long characteristic(const SurfaceComplex& c);

// True iff faces can be signed so every segment is traversed once in each
// direction; decided by sign propagation across shared segments.
bool orientable(const SurfaceComplex& c, const ManifoldCert& cert);

struct NormalForm {
  enum Kind { kSphere, kOrientable, kNonOrientable };
  Kind kind = kSphere;
  int genus = 0;

  bool operator==(const NormalForm&) const = default;
};

// Canonical complex of a normal form (sphere: two points, one segment, word
// s s^-1; otherwise the one-vertex polygon).
SurfaceComplex normal_form_complex(const NormalForm& nf);

struct TraceStep {
  std::string move;
  long chi = 0;  // after the move
  bool orient = false;
};

struct Classification {
  NormalForm nf;
  std::vector<TraceStep> trace;
};

// Full classification of a closed manifold: contract a spanning tree, fuse
// to one face, then collect squares and commutators by neighbor moves.
// Every intermediate complex is re-validated; chi and orientability are
// recorded per step.
Classification classify(const SurfaceComplex& c);

// Dual manifold: faces <-> points, segment pairs <-> segment pairs.
SurfaceComplex dual_complex(const SurfaceComplex& c, const ManifoldCert& cert);

// Generators from co-tree loops of the skeleton, one relator per face.
Presentation fundamental_group(const SurfaceComplex& c, int basepoint);
Presentation fundamental_group(const SurfaceComplex& c, int basepoint,
                               const std::vector<int>& tree);

// Exponent-sum vector (a1,b1,...,ag,bg) in the orientable normal-form
// generators.
std::vector<long> homology_class(const Word& w, int genus);

// Skew form sum(a1i*b2i - a2i*b1i) on vectors of length 2g.
long intersection_number(const std::vector<long>& v1,
                         const std::vector<long>& v2);

enum class Sidedness { kOneSided, kTwoSided };

// For a one-point one-face manifold: one-sided iff the segment's two
// occurrences have the same sign.
Sidedness segment_sidedness(const SurfaceComplex& c, int seg);

// Elementary extensions (fuzzing and general surgery).
SurfaceComplex extend_first_kind(const SurfaceComplex& c, int seg);
SurfaceComplex extend_second_kind(const SurfaceComplex& c, int face,
                                  int cut1, int cut2);
SurfaceComplex extend_third_kind(const SurfaceComplex& c, int point,
                                 int arc_start, int arc_len,
                                 const ManifoldCert& cert);

}  // namespace ct
