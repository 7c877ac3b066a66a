#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ct/matrices.hpp"
#include "ct/presentations.hpp"
#include "ct/words.hpp"

namespace ct {

// Permutation action of the generators on coset indices; coset 0 is the
// subgroup itself. Validated tables are transitive and kill every relator.
struct CosetTable {
  int n_generators = 0;
  int n = 0;                              // number of cosets
  std::vector<std::vector<int>> act;      // act[g-1][c] = c * S_g
  std::vector<std::vector<int>> act_inv;  // derived

  int n_cosets() const { return n; }
  int apply_letter(int c, Letter l) const;
  int apply_word(int c, const Word& w) const;
};

// Builds and validates a table from one permutation per generator.
// Throws naming the first violated condition (bijection, transitivity, or
// the relator and coset that break the action).
CosetTable coset_table_from_permutations(
    const Presentation& p, const std::vector<std::vector<int>>& images);

// Prefix-closed system of coset representatives; rep[0] is empty.
struct SchreierTransversal {
  std::vector<Word> rep;
};

// Shortest representatives, ties by letter order (generator index first,
// positive before negative).
SchreierTransversal schreier_transversal(const CosetTable& t);

// Same levels, random tie-breaking; still shortest and prefix-closed.
SchreierTransversal schreier_transversal_shuffled(const CosetTable& t,
                                                  std::uint64_t seed);

// The rewriting machinery for a fixed table and transversal. Subgroup
// generators are labelled by (coset, generator); those whose defining word
// G S (GS)^-1 freely vanishes are first kind and are dropped everywhere.
struct SubgroupRewriter {
  CosetTable table;
  SchreierTransversal transversal;
  std::vector<char> first_kind;  // flat index g*n + c
  std::vector<int> u2_of_flat;   // flat -> 1-based second-kind index, or 0
  std::vector<std::pair<int, int>> u2_labels;  // index-1 -> (coset, gen)

  int flat(int coset, int gen) const {
    return (gen - 1) * n_cosets() + coset;
  }
  int n_cosets() const { return table.n_cosets(); }
  int n_subgroup_generators() const {
    return static_cast<int>(u2_labels.size());
  }

  // G S (GS)^-1 in the ambient alphabet.
  Word label_word(int coset, int gen) const;

  // Rewrites a word whose action fixes start_coset into the second-kind
  // alphabet.
  Word rewrite(const Word& w, int start_coset = 0) const;
};

SubgroupRewriter make_rewriter(const CosetTable& t,
                               const SchreierTransversal& tr);
SubgroupRewriter make_rewriter(const CosetTable& t);

// Subgroup presentation: relators are the rewrites of every relator from
// every coset, freely reduced, over the second-kind generators.
struct RewrittenPresentation {
  SubgroupRewriter rewriter;
  Presentation presentation;  // n_generators = second-kind count
};

RewrittenPresentation reidemeister_schreier(const Presentation& p,
                                            const CosetTable& t);
RewrittenPresentation reidemeister_schreier(const Presentation& p,
                                            const SubgroupRewriter& rw);

// Coset table of the congruence subgroup U_p in the modular group
// <S1,S2 | S1^3, S2^2>: p+1 cosets {E, G_0..G_{p-1}} with
// G_k S -> G_{k*}, k k* = -1 (mod p).
CosetTable modular_congruence_table(long p);

struct CongruenceReport {
  long p = 0;
  int index = 0;
  int n_generators = 0;
  std::vector<long> torsion_orders;  // exponents of power relators, sorted
  bool all_power_relators = true;
  bool free_group = false;
  int free_rank = 0;
};
CongruenceReport congruence_subgroup_report(long p);

// For a normal subgroup (checked), the substitution sending each
// second-kind generator U to the rewrite of S U S^-1. `by` is a signed
// generator letter of the ambient group.
std::vector<Word> conjugation_action(const RewrittenPresentation& rp,
                                     Letter by);

// One-relator two-generator groups mapping onto the infinite cyclic group:
// the operator relation K^{f(x)} of the kernel, canonicalized.
LaurentPoly commutator_operator_polynomial(const Presentation& p);

}  // namespace ct
