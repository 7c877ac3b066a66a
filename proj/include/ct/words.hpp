#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ct {

// Domain errors (bad input, violated precondition). Internal invariant
// breakage throws std::logic_error instead.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A letter is a signed generator index: +g or -g, 1-based. 0 is not a letter.
using Letter = int;

inline int gen_of(Letter l) { return l < 0 ? -l : l; }
inline int sign_of(Letter l) { return l < 0 ? -1 : 1; }
inline Letter inv(Letter l) { return -l; }

// Letter ordering: generator index first, positive before negative.
inline bool letter_less(Letter a, Letter b) {
  if (gen_of(a) != gen_of(b)) return gen_of(a) < gen_of(b);
  return a > 0 && b < 0;
}

// Free word over signed generators. The empty word is the identity.
struct Word {
  std::vector<Letter> ls;

  Word() = default;
  explicit Word(std::vector<Letter> letters) : ls(std::move(letters)) {}

  bool empty() const { return ls.empty(); }
  std::size_t size() const { return ls.size(); }
  Letter operator[](std::size_t i) const { return ls[i]; }

  bool operator==(const Word&) const = default;

  Word inverse() const;
  Word& operator*=(const Word& w);
  friend Word operator*(Word a, const Word& b) {
    a *= b;
    return a;
  }

  // Largest generator index used, 0 for the empty word.
  int max_gen() const;
};

Word word_from(std::initializer_list<Letter> ls);

// Deletes adjacent inverse pairs until none remain (left-to-right stack scan).
Word free_reduce(const Word& w);
bool is_reduced(const Word& w);

// Cyclically reduced word with a canonical rotation: the lexicographically
// least rotation under letter_less.
struct CyclicWord {
  std::vector<Letter> ls;

  bool operator==(const CyclicWord&) const = default;
  auto operator<=>(const CyclicWord&) const = default;
  bool empty() const { return ls.empty(); }
  std::size_t size() const { return ls.size(); }
};

// Canonical rotation of an already cyclically reduced letter sequence.
CyclicWord canonical_rotation(std::vector<Letter> ls);

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicReduction {
  Word conjugator;
  CyclicWord core;
};
CyclicReduction cyclic_reduce(const Word& w);

// Conjugacy in the free group: cores must be rotations of one another.
bool conjugate_in_free(const Word& a, const Word& b);

// Orders of the cyclic factors; 0 means infinite order. Finite orders must
// be >= 2.
struct CyclicOrders {
  std::vector<long> orders;

  long order(int gen) const;
  void check(int max_gen) const;
};

// Normal form in the free product of cyclic groups of the given orders:
// alternating blocks S_i^r with 0 <= r < a_i (any nonzero r when a_i = 0).
// Empty iff the word is the identity.
Word normal_form_cyclic_product(const Word& w, const CyclicOrders& orders);

// Conjugacy in the free product of cyclic groups, decided on the canonical
// rotation-minimal cyclically reduced syllable form.
bool conjugate_in_cyclic_product(const Word& a, const Word& b,
                                 const CyclicOrders& orders);

// Normal form in <S1,S2 | S1^a1 S2^a2>: alternating blocks with exponents in
// [0,a_i) followed by a central power S1^(k*a1). Empty iff identity.
Word normal_form_torus_type(const Word& w, long a1, long a2);

// Replaces every occurrence of generator gen by the word image (and inverse
// occurrences by its inverse), then freely reduces.
Word substitute(const Word& w, int gen, const Word& image);

// Exponent sum of the given generator.
long exponent_sum(const Word& w, int gen);

}  // namespace ct
