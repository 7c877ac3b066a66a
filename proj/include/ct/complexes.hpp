#pragma once

#include <optional>
#include <random>
#include <vector>

#include "ct/words.hpp"

namespace ct {

// Multigraph with directed segment pairs; the inverse of each segment is
// implicit. Loops are allowed and contribute 2 to the order of their point.
struct Graph1 {
  struct Seg {
    int from = 0, to = 0;
  };
  int n_points = 0;
  std::vector<Seg> segs;  // index = segment pair id (0-based)

  int add_point() { return n_points++; }
  int add_seg(int from, int to);
  void check() const;

  // Number of directed segments emanating from p.
  int order(int p) const;
  bool connected() const;
};

// A path is a sequence of signed segment references: +s traverses segment s
// forward, -s backward. Signed ids are 1-based like word letters.
using GraphPath = Word;

int path_start(const Graph1& g, const GraphPath& w);
int path_end(const Graph1& g, const GraphPath& w);
bool is_path(const Graph1& g, const GraphPath& w);
bool is_closed_path(const Graph1& g, const GraphPath& w);

// Minimal set of trails jointly traversing every segment pair exactly once:
// one closed tour when all orders are even, otherwise (#odd points)/2 open
// trails. Throws on disconnected input.
std::vector<GraphPath> euler_trails(const Graph1& g);

// Segment ids of a spanning tree (BFS; deterministic by default).
std::vector<int> spanning_tree(const Graph1& g);
std::vector<int> spanning_tree_shuffled(const Graph1& g, std::uint64_t seed);

// a = -a0 + a1 + 1 for a connected graph.
long connectivity_number(const Graph1& g);

// One closed loop per co-tree segment: tree path to the segment, the
// segment, tree path back. Loops are based at basepoint; index i of the
// result is the generator for co-tree segment cotree[i].
struct GraphBasis {
  std::vector<int> cotree;        // co-tree segment ids
  std::vector<GraphPath> loops;   // basis loops at the basepoint
  std::vector<int> gen_of_seg;    // seg -> 1-based generator index, 0 = tree
};
GraphBasis fundamental_group_basis(const Graph1& g, int basepoint,
                                   const std::vector<int>& tree);

// Expresses a closed path as a word in the basis generators.
Word path_in_basis(const GraphBasis& b, const GraphPath& w);

// Permutation voltage on {0..k-1} per segment pair; tree segments carry the
// identity.
struct Voltage {
  int k = 1;
  std::vector<std::vector<int>> perm;  // perm[seg][sheet]

  void check(const Graph1& g) const;
  // Additionally requires the identity on every tree segment.
  void check(const Graph1& g, const std::vector<int>& tree) const;
  int apply(int seg, int sheet) const { return perm[seg][sheet]; }
  int apply_inv(int seg, int sheet) const;
};

// k-fold cover: point (p, i) has index i*n_points + p, segment (s, i) has
// index i*n_segs + s and runs (from(s),i) -> (to(s), perm[s](i)).
struct GraphCover {
  Graph1 cover;
  int sheets = 1;
  int point_of(int base_point, int sheet) const;
  int seg_of(int base_seg, int sheet) const;
  int base_points = 0, base_segs = 0;
};
GraphCover build_cover(const Graph1& g, const Voltage& v);
GraphCover build_cover(const Graph1& g, const std::vector<int>& tree,
                       const Voltage& v);

// Lifts a base path starting on the given sheet; returns the final sheet.
int lift_sheet(const Voltage& v, const GraphPath& base_path);

enum class Regularity { kRegular, kNotRegular, kUndecidedAtGuard };

// The covering is regular iff every voltage-group element fixes all sheets
// or none of them. Enumerates the voltage group up to the guard.
Regularity is_regular_cover(const Graph1& g, const Voltage& v,
                            std::size_t guard = 10000);
Regularity is_regular_cover(const Graph1& g, const std::vector<int>& tree,
                            const Voltage& v, std::size_t guard = 10000);

// Cayley diagram of the permutation group generated by the given
// permutations: points are group elements, one segment per (element,
// generator) by right multiplication.
struct CayleyGraph {
  Graph1 graph;
  std::vector<std::vector<int>> elements;   // point -> permutation
  std::vector<int> label_of_seg;            // seg -> generator index
  int identity_point = 0;
};
CayleyGraph cayley_graph(const std::vector<std::vector<int>>& generators,
                         std::size_t guard = 100000);

// Decomposition of a 2r-regular multigraph into r spanning 2-regular
// subgraphs (lists of segment ids).
std::vector<std::vector<int>> petersen_2_factorization(const Graph1& g);

}  // namespace ct
