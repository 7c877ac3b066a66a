#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ct/matrices.hpp"
#include "ct/words.hpp"

namespace ct {

// Finitely presented group: generator count plus freely reduced relators.
// Generators are positional; display names live in the text layer.
struct Presentation {
  int n_generators = 0;
  std::vector<Word> relators;

  Presentation() = default;
  Presentation(int n, std::vector<Word> rels);

  bool operator==(const Presentation&) const = default;
};

// Witnessed Tietze moves. A relator witness expresses the target as a
// product of conjugates L_i R_{k_i}^{e_i} L_i^-1 of existing relators.
struct ConjugatePower {
  Word conj;
  std::size_t relator_index = 0;
  int sign = 1;
};

struct TietzeAddRelator {
  Word relator;
  std::vector<ConjugatePower> witness;
};
struct TietzeRemoveRelator {
  std::size_t index = 0;
  std::vector<ConjugatePower> witness;  // derives the removed relator from the rest
};
struct TietzeAddGenerator {
  Word definition;  // new generator equals this word in the old generators
};
struct TietzeRemoveGenerator {
  int generator = 0;  // must occur in exactly one relator, of defining shape
};

using TietzeWitness = std::variant<TietzeAddRelator, TietzeRemoveRelator,
                                   TietzeAddGenerator, TietzeRemoveGenerator>;

// Applies a witnessed move; throws error naming the failing check.
Presentation tietze_apply(const Presentation& p, const TietzeWitness& move);

// Exponent-sum matrix: entry (i,k) = exponent sum of generator k+1 in
// relator i.
IntMatrix abelianized_matrix(const Presentation& p);

AbelianInvariants abelian_invariants(const Presentation& p);
AbelianInvariants abelian_invariants(const IntMatrix& relations,
                                     std::size_t n_generators);

// Elementary automorphism moves of the free group.
struct NielsenPermute {
  std::vector<int> perm;  // perm[i] = image of generator i+1
};
struct NielsenInvert {
  int generator = 0;
};
struct NielsenReplace {
  int a = 0, b = 0;  // a <- a * b
};
using NielsenMove = std::variant<NielsenPermute, NielsenInvert, NielsenReplace>;

Word nielsen_apply(const Word& w, const NielsenMove& m, int n_generators);
Presentation nielsen_apply(const Presentation& p, const NielsenMove& m);

// Canonical surface group presentations. Orientable genus g >= 0 gives
// <a_1,b_1,..,a_g,b_g | prod [a_i,b_i]>; non-orientable genus g >= 1 gives
// <s_1,..,s_g | s_1^2...s_g^2>.
Presentation surface_presentation(bool orientable, int genus);

Word surface_relator(bool orientable, int genus);

// Branching data of a covering in normal form.
struct BranchData {
  std::vector<long> orders;  // k_1..k_{n-1} >= 2, then k_n >= 1
  int genus = 0;
  bool orientable = true;
  bool point_type_infinite = false;  // point-type data with an infinite order
};

// Generators T_1..T_{n-1} then the surface generators; relators T_i^{k_i}
// and (T_1...T_{n-1} R(S))^{k_n}.
Presentation principal_group_presentation(const BranchData& b);

// Bounded cleanup: drops empty relators, eliminates generators occurring
// exactly once in some relator, removes duplicate relators up to rotation
// and inversion. Stops at a fixpoint or after 10*(generators+relators)
// passes.
Presentation simplify_bounded(const Presentation& p);

}  // namespace ct
