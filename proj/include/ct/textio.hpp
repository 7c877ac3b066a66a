#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ct/complexes.hpp"
#include "ct/matrices.hpp"
#include "ct/presentations.hpp"
#include "ct/subgroups.hpp"
#include "ct/surfaces.hpp"
#include "ct/words.hpp"

namespace ct {

// Word tokens: `a`..`z` are generators 1..26, uppercase = inverse; `x12` /
// `X12` address generator 12 directly. Tokens are whitespace-separated; an
// empty line is the empty word.
Word parse_word(const std::string& text);
std::string print_word(const Word& w);

// Presentation file: one `gens: a b c` line, then `rel: <word>` lines.
Presentation parse_presentation(std::istream& in);
std::string print_presentation(const Presentation& p);

// Graph file: `point <name>` lines then `seg <name> <from> <to>` lines.
struct NamedGraph {
  Graph1 graph;
  std::vector<std::string> point_names;
  std::vector<std::string> seg_names;

  int point_index(const std::string& name) const;
  int seg_index(const std::string& name) const;
};
NamedGraph parse_graph(std::istream& in);

// Surface file: graph section plus `face <name> <word over segment names>`
// lines; or the one-face shorthand `polygon <word>`.
struct NamedSurface {
  SurfaceComplex complex;
  std::vector<std::string> point_names;
  std::vector<std::string> seg_names;
  std::vector<std::string> face_names;
};
NamedSurface parse_surface(std::istream& in);

// Voltage file: `sheets <k>` then `volt <seg> <cycles>` lines; segments not
// mentioned carry the identity. Cycle notation: (0 1 2)(3 4) or `id`.
Voltage parse_voltage(std::istream& in, const NamedGraph& g);
Voltage parse_voltage(std::istream& in, const std::vector<std::string>& segs,
                      std::size_t n_segs);

std::vector<int> parse_permutation_cycles(const std::string& text, int n);
std::string print_permutation_cycles(const std::vector<int>& perm);

// Permutation list file: `perm <gen-name> <cycles>` lines, one per
// generator; `n <count>` fixes the domain size.
std::vector<std::vector<int>> parse_permutation_list(std::istream& in,
                                                     int n_generators);

// Integer matrix: one row per line, entries separated by whitespace or `;`.
IntMatrix parse_int_matrix(std::istream& in);

// Laurent matrix: one row per line, entries separated by `;`.
// Polynomials as `3x^-2 + x + -1x^3`.
LaurentPoly parse_laurent(const std::string& text);
LaurentMatrix parse_laurent_matrix(std::istream& in);

}  // namespace ct
