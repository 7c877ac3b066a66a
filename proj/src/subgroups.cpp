#include "ct/subgroups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ct {

int CosetTable::apply_letter(int c, Letter l) const {
  int g = gen_of(l);
  if (g < 1 || g > n_generators) throw error("letter outside the alphabet");
  return l > 0 ? act[g - 1][c] : act_inv[g - 1][c];
}

int CosetTable::apply_word(int c, const Word& w) const {
  for (Letter l : w.ls) c = apply_letter(c, l);
  return c;
}

CosetTable coset_table_from_permutations(
    const Presentation& p, const std::vector<std::vector<int>>& images) {
  if (static_cast<int>(images.size()) != p.n_generators)
    throw error("need one permutation per generator");
  CosetTable t;
  t.n_generators = p.n_generators;
  std::size_t n = images.empty() ? 1 : images[0].size();
  if (n == 0) throw error("empty coset set");
  t.n = static_cast<int>(n);
  for (const auto& perm : images) {
    if (perm.size() != n) throw error("permutations act on different sets");
    std::vector<bool> hit(n, false);
    for (int v : perm) {
      if (v < 0 || static_cast<std::size_t>(v) >= n || hit[v])
        throw error("generator image is not a bijection");
      hit[v] = true;
    }
  }
  t.act = images;
  t.act_inv.assign(t.act.size(), std::vector<int>(n));
  for (std::size_t g = 0; g < t.act.size(); ++g)
    for (std::size_t c = 0; c < n; ++c) t.act_inv[g][t.act[g][c]] = c;

  // Transitivity.
  std::vector<bool> reach(n, false);
  std::vector<int> stack = {0};
  reach[0] = true;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int g = 0; g < p.n_generators; ++g)
      for (int d : {t.act[g][c], t.act_inv[g][c]})
        if (!reach[d]) {
          reach[d] = true;
          stack.push_back(d);
        }
  }
  for (std::size_t c = 0; c < n; ++c)
    if (!reach[c]) throw error("action is not transitive");

  // Every relator acts as the identity.
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (std::size_t c = 0; c < n; ++c)
      if (t.apply_word(static_cast<int>(c), p.relators[i]) !=
          static_cast<int>(c)) {
        std::ostringstream os;
        os << "relator " << i << " does not fix coset " << c;
        throw error(os.str());
      }
  return t;
}

namespace {

SchreierTransversal transversal_impl(const CosetTable& t,
                                     std::mt19937_64* rng) {
  const int n = t.n_cosets();
  SchreierTransversal tr;
  tr.rep.assign(n, Word{});
  std::vector<bool> seen(n, false);
  seen[0] = true;

  std::vector<Letter> letters;
  for (int g = 1; g <= t.n_generators; ++g) {
    letters.push_back(g);
    letters.push_back(-g);
  }
  std::sort(letters.begin(), letters.end(), letter_less);

  std::vector<int> level = {0};
  while (!level.empty()) {
    std::vector<int> next;
    for (int c : level) {
      std::vector<Letter> ls = letters;
      if (rng) std::shuffle(ls.begin(), ls.end(), *rng);
      for (Letter l : ls) {
        int d = t.apply_letter(c, l);
        if (seen[d]) continue;
        seen[d] = true;
        tr.rep[d] = tr.rep[c];
        tr.rep[d].ls.push_back(l);
        next.push_back(d);
      }
    }
    if (rng) std::shuffle(next.begin(), next.end(), *rng);
    level = std::move(next);
  }
  for (int c = 0; c < n; ++c)
    if (!seen[c]) throw error("action is not transitive");
  return tr;
}

}  // namespace

SchreierTransversal schreier_transversal(const CosetTable& t) {
  return transversal_impl(t, nullptr);
}

SchreierTransversal schreier_transversal_shuffled(const CosetTable& t,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return transversal_impl(t, &rng);
}

Word SubgroupRewriter::label_word(int coset, int gen) const {
  Word w = transversal.rep[coset];
  w.ls.push_back(gen);
  w *= transversal.rep[table.act[gen - 1][coset]].inverse();
  return free_reduce(w);
}

Word SubgroupRewriter::rewrite(const Word& w, int start_coset) const {
  Word out;
  int c = start_coset;
  for (Letter l : w.ls) {
    int g = gen_of(l);
    if (l > 0) {
      if (!first_kind[flat(c, g)]) out.ls.push_back(u2_of_flat[flat(c, g)]);
      c = table.act[g - 1][c];
    } else {
      int d = table.act_inv[g - 1][c];
      if (!first_kind[flat(d, g)]) out.ls.push_back(-u2_of_flat[flat(d, g)]);
      c = d;
    }
  }
  if (c != start_coset)
    throw error("word does not stabilize the starting coset");
  return free_reduce(out);
}

SubgroupRewriter make_rewriter(const CosetTable& t,
                               const SchreierTransversal& tr) {
  SubgroupRewriter rw;
  rw.table = t;
  rw.transversal = tr;
  const int n = t.n_cosets();
  rw.first_kind.assign(static_cast<std::size_t>(n) * t.n_generators, 0);
  rw.u2_of_flat.assign(static_cast<std::size_t>(n) * t.n_generators, 0);
  for (int g = 1; g <= t.n_generators; ++g)
    for (int c = 0; c < n; ++c) {
      Word gs = tr.rep[c];
      gs.ls.push_back(g);
      bool u1 = free_reduce(gs) == tr.rep[t.act[g - 1][c]];
      rw.first_kind[rw.flat(c, g)] = u1 ? 1 : 0;
      if (!u1) {
        rw.u2_labels.emplace_back(c, g);
        rw.u2_of_flat[rw.flat(c, g)] =
            static_cast<int>(rw.u2_labels.size());
      }
    }
  return rw;
}

SubgroupRewriter make_rewriter(const CosetTable& t) {
  return make_rewriter(t, schreier_transversal(t));
}

RewrittenPresentation reidemeister_schreier(const Presentation& p,
                                            const SubgroupRewriter& rw) {
  RewrittenPresentation out;
  out.rewriter = rw;
  out.presentation.n_generators = rw.n_subgroup_generators();
  for (const auto& r : p.relators)
    for (int c = 0; c < rw.n_cosets(); ++c) {
      Word rel = rw.rewrite(r, c);
      if (!rel.empty()) out.presentation.relators.push_back(rel);
    }
  return out;
}

RewrittenPresentation reidemeister_schreier(const Presentation& p,
                                            const CosetTable& t) {
  return reidemeister_schreier(p, make_rewriter(t));
}

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long mod_inverse(long k, long p) {
  long t = 0, nt = 1, r = p, nr = k % p;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return t;
}

Presentation modular_presentation() {
  return Presentation(2, {word_from({1, 1, 1}), word_from({2, 2})});
}

}  // namespace

CosetTable modular_congruence_table(long p) {
  if (!is_prime(p)) throw error("p must be prime");
  const int n = static_cast<int>(p) + 1;  // 0 = E, 1+k = G_k
  std::vector<int> sig_s(n), sig_t(n);
  sig_t[0] = 0;
  for (long k = 0; k < p; ++k)
    sig_t[1 + k] = 1 + static_cast<int>((k + 1) % p);
  sig_s[0] = 1;
  sig_s[1] = 0;
  for (long k = 1; k < p; ++k) {
    long kstar = ((p - 1) * mod_inverse(k, p)) % p;  // k * kstar = -1 (mod p)
    sig_s[1 + k] = 1 + static_cast<int>(kstar);
  }
  // S1 = T S, S2 = S.
  std::vector<int> sig_s1(n);
  for (int c = 0; c < n; ++c) sig_s1[c] = sig_s[sig_t[c]];
  return coset_table_from_permutations(modular_presentation(),
                                       {sig_s1, sig_s});
}

CongruenceReport congruence_subgroup_report(long p) {
  CosetTable t = modular_congruence_table(p);
  RewrittenPresentation rp = reidemeister_schreier(modular_presentation(), t);
  Presentation simp = simplify_bounded(rp.presentation);

  CongruenceReport rep;
  rep.p = p;
  rep.index = t.n_cosets();
  rep.n_generators = simp.n_generators;
  rep.all_power_relators = true;
  for (const auto& r : simp.relators) {
    bool power = !r.empty();
    for (Letter l : r.ls)
      if (l != r.ls[0]) power = false;
    if (power)
      rep.torsion_orders.push_back(static_cast<long>(r.size()));
    else
      rep.all_power_relators = false;
  }
  std::sort(rep.torsion_orders.begin(), rep.torsion_orders.end());
  rep.free_group = simp.relators.empty();
  rep.free_rank = rep.free_group ? simp.n_generators : 0;
  return rep;
}

std::vector<Word> conjugation_action(const RewrittenPresentation& rp,
                                     Letter by) {
  const SubgroupRewriter& rw = rp.rewriter;
  const int n = rw.n_cosets();
  // Normality: every subgroup generator must act as the identity on all
  // cosets, which makes the stabilizer of coset 0 the kernel of the action.
  for (const auto& [c, g] : rw.u2_labels) {
    Word w = rw.label_word(c, g);
    for (int d = 0; d < n; ++d)
      if (rw.table.apply_word(d, w) != d)
        throw error("subgroup is not normal");
  }
  std::vector<Word> images;
  images.reserve(rw.u2_labels.size());
  for (const auto& [c, g] : rw.u2_labels) {
    Word w;
    w.ls.push_back(by);
    w *= rw.label_word(c, g);
    w.ls.push_back(inv(by));
    images.push_back(rw.rewrite(free_reduce(w), 0));
  }
  return images;
}

LaurentPoly commutator_operator_polynomial(const Presentation& p) {
  if (p.n_generators != 2 || p.relators.size() != 1)
    throw error("need two generators and one relator");
  Word r = p.relators[0];
  long s1 = exponent_sum(r, 1), s2 = exponent_sum(r, 2);
  long g = std::gcd(std::abs(s1), std::abs(s2));
  if (!(g == 1 || (s1 == 0 && s2 == 0)))
    throw error("abelianization is not infinite cyclic");

  // Euclidean generator changes until one exponent sum vanishes.
  while (s1 != 0 && s2 != 0) {
    if (std::abs(s1) >= std::abs(s2)) {
      long rmod = ((s1 % s2) + std::abs(s2)) % std::abs(s2);
      long n = (s1 - rmod) / s2;
      // S2' = S2 S1^n, i.e. old S2 = S2' S1'^-n.
      Word image = word_from({2});
      for (long i = 0; i < std::abs(n); ++i)
        image.ls.push_back(n > 0 ? -1 : 1);
      r = substitute(r, 2, image);
      s1 = rmod;
    } else {
      long rmod = ((s2 % s1) + std::abs(s1)) % std::abs(s1);
      long n = (s2 - rmod) / s1;
      Word image = word_from({1});
      for (long i = 0; i < std::abs(n); ++i)
        image.ls.push_back(n > 0 ? -2 : 2);
      r = substitute(r, 1, image);
      s2 = rmod;
    }
  }
  // The zero-sum generator parametrizes the cosets; the other one lies in
  // the kernel and carries the operator exponents.
  int sgen = s1 == 0 ? 1 : 2;

  LaurentPoly f;
  long shift = 0;
  for (Letter l : r.ls) {
    if (gen_of(l) == sgen) {
      shift += sign_of(l);
    } else {
      int e = static_cast<int>(shift);
      f.set(e, f.coeff(e) + sign_of(l));
    }
  }
  return laurent_canonical(f);
}

}  // namespace ct
