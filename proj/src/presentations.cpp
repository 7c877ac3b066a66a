#include "ct/presentations.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ct {

Presentation::Presentation(int n, std::vector<Word> rels) : n_generators(n) {
  relators.reserve(rels.size());
  for (auto& r : rels) {
    Word red = free_reduce(r);
    if (red.max_gen() > n)
      throw error("relator references generator beyond the alphabet");
    relators.push_back(std::move(red));
  }
}

namespace {

Word expand_witness(const Presentation& p,
                    const std::vector<ConjugatePower>& witness,
                    std::optional<std::size_t> skip = std::nullopt) {
  Word prod;
  for (const auto& cp : witness) {
    if (cp.relator_index >= p.relators.size())
      throw error("witness references a relator that does not exist");
    if (skip && cp.relator_index == *skip)
      throw error("witness may not use the relator being removed");
    if (cp.sign != 1 && cp.sign != -1) throw error("witness sign must be +-1");
    Word r = p.relators[cp.relator_index];
    if (cp.sign < 0) r = r.inverse();
    prod *= cp.conj;
    prod *= r;
    prod *= cp.conj.inverse();
  }
  return free_reduce(prod);
}

}  // namespace

Presentation tietze_apply(const Presentation& p, const TietzeWitness& move) {
  if (const auto* m = std::get_if<TietzeAddRelator>(&move)) {
    Word target = free_reduce(m->relator);
    if (target.max_gen() > p.n_generators)
      throw error("added relator uses unknown generators");
    if (expand_witness(p, m->witness) != target)
      throw error("witness product does not reduce to the added relator");
    Presentation q = p;
    q.relators.push_back(target);
    return q;
  }
  if (const auto* m = std::get_if<TietzeRemoveRelator>(&move)) {
    if (m->index >= p.relators.size()) throw error("no such relator");
    if (expand_witness(p, m->witness, m->index) != p.relators[m->index])
      throw error("witness product does not reduce to the removed relator");
    Presentation q = p;
    q.relators.erase(q.relators.begin() + static_cast<long>(m->index));
    return q;
  }
  if (const auto* m = std::get_if<TietzeAddGenerator>(&move)) {
    Word def = free_reduce(m->definition);
    if (def.max_gen() > p.n_generators)
      throw error("definition uses unknown generators");
    Presentation q = p;
    q.n_generators = p.n_generators + 1;
    // New relator: T * definition^-1.
    Word rel;
    rel.ls.push_back(q.n_generators);
    rel *= def.inverse();
    q.relators.push_back(free_reduce(rel));
    return q;
  }
  const auto& m = std::get<TietzeRemoveGenerator>(move);
  int g = m.generator;
  if (g < 1 || g > p.n_generators) throw error("no such generator");
  // The generator must occur in exactly one relator, once, and that relator
  // must have the defining shape g * w^-1 with w free of g (up to rotation
  // and inversion).
  std::optional<std::size_t> host;
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    bool uses = false;
    for (Letter l : p.relators[i].ls)
      if (gen_of(l) == g) uses = true;
    if (!uses) continue;
    if (host) throw error("generator occurs in more than one relator");
    host = i;
  }
  if (!host) throw error("generator occurs in no relator");
  const Word& r = p.relators[*host];
  int count = 0;
  for (Letter l : r.ls)
    if (gen_of(l) == g) ++count;
  if (count != 1)
    throw error("generator occurs more than once in its defining relator");
  // Rotate so the g-letter comes first; invert if needed.
  std::size_t pos = 0;
  while (gen_of(r.ls[pos]) != g) ++pos;
  Word rot;
  for (std::size_t k = 0; k < r.ls.size(); ++k)
    rot.ls.push_back(r.ls[(pos + k) % r.ls.size()]);
  if (rot.ls[0] < 0) {
    rot = rot.inverse();
    std::rotate(rot.ls.begin(), rot.ls.end() - 1, rot.ls.end());
  }
  // rot = g * tail; definition of g is tail^-1.
  Word image = Word({rot.ls.begin() + 1, rot.ls.end()}).inverse();

  Presentation q;
  q.n_generators = p.n_generators - 1;
  auto renumber = [&](const Word& w) {
    Word out;
    for (Letter l : w.ls) {
      int gen = gen_of(l);
      if (gen == g) throw std::logic_error("generator survived elimination");
      int shifted = gen > g ? gen - 1 : gen;
      out.ls.push_back(l > 0 ? shifted : -shifted);
    }
    return out;
  };
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (i == *host) continue;
    q.relators.push_back(renumber(substitute(p.relators[i], g, image)));
  }
  return q;
}

IntMatrix abelianized_matrix(const Presentation& p) {
  IntMatrix m(p.relators.size(), p.n_generators);
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (Letter l : p.relators[i].ls)
      m.at(i, gen_of(l) - 1) += sign_of(l);
  return m;
}

AbelianInvariants abelian_invariants(const IntMatrix& relations,
                                     std::size_t n_generators) {
  SmithResult s = smith_normal_form(relations);
  AbelianInvariants inv;
  for (const auto& d : s.diagonal)
    if (d > 1) inv.torsion.push_back(d);
  inv.betti = n_generators - s.rank;
  return inv;
}

AbelianInvariants abelian_invariants(const Presentation& p) {
  return abelian_invariants(abelianized_matrix(p),
                            static_cast<std::size_t>(p.n_generators));
}

Word nielsen_apply(const Word& w, const NielsenMove& m, int n_generators) {
  if (const auto* mv = std::get_if<NielsenPermute>(&m)) {
    if (static_cast<int>(mv->perm.size()) != n_generators)
      throw error("permutation size mismatch");
    std::vector<bool> seen(n_generators + 1, false);
    for (int v : mv->perm) {
      if (v < 1 || v > n_generators || seen[v])
        throw error("not a permutation of the generators");
      seen[v] = true;
    }
    Word out;
    for (Letter l : w.ls) {
      int img = mv->perm[gen_of(l) - 1];
      out.ls.push_back(l > 0 ? img : -img);
    }
    return out;
  }
  if (const auto* mv = std::get_if<NielsenInvert>(&m)) {
    if (mv->generator < 1 || mv->generator > n_generators)
      throw error("no such generator");
    Word out;
    for (Letter l : w.ls)
      out.ls.push_back(gen_of(l) == mv->generator ? -l : l);
    return out;
  }
  const auto& mv = std::get<NielsenReplace>(m);
  if (mv.a == mv.b) throw error("replace move needs distinct generators");
  if (mv.a < 1 || mv.a > n_generators || mv.b < 1 || mv.b > n_generators)
    throw error("no such generator");
  // The move sends a to a*b, so occurrences of a in words must be replaced
  // by the image.
  Word image = word_from({mv.a, mv.b});
  return substitute(w, mv.a, image);
}

Presentation nielsen_apply(const Presentation& p, const NielsenMove& m) {
  Presentation q;
  q.n_generators = p.n_generators;
  for (const auto& r : p.relators)
    q.relators.push_back(free_reduce(nielsen_apply(r, m, p.n_generators)));
  return q;
}

Word surface_relator(bool orientable, int genus) {
  Word r;
  if (orientable) {
    for (int i = 0; i < genus; ++i) {
      int a = 2 * i + 1, b = 2 * i + 2;
      r *= word_from({a, b, -a, -b});
    }
  } else {
    for (int i = 1; i <= genus; ++i) r *= word_from({i, i});
  }
  return r;
}

Presentation surface_presentation(bool orientable, int genus) {
  if (genus < 0) throw error("genus must be nonnegative");
  if (!orientable && genus == 0)
    throw error("non-orientable surfaces have genus >= 1");
  Presentation p;
  p.n_generators = orientable ? 2 * genus : genus;
  if (genus > 0 || !orientable)
    p.relators.push_back(surface_relator(orientable, genus));
  return p;
}

Presentation principal_group_presentation(const BranchData& b) {
  const std::size_t n = b.orders.size();

  if (b.point_type_infinite) {
    // Free product of cyclic groups: only the torsion relators remain.
    Presentation p;
    p.n_generators = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (b.orders[i] != 0 && b.orders[i] < 2)
        throw error("point-type orders must be 0 (infinite) or >= 2");
      if (b.orders[i] == 0) continue;
      Word r;
      for (long k = 0; k < b.orders[i]; ++k)
        r.ls.push_back(static_cast<int>(i) + 1);
      p.relators.push_back(r);
    }
    return p;
  }

  for (std::size_t i = 0; i + 1 < n; ++i)
    if (b.orders[i] < 2) throw error("branch orders k_1..k_{n-1} must be >= 2");
  if (n > 0 && b.orders.back() < 1) throw error("last order must be >= 1");

  const int nt = n == 0 ? 0 : static_cast<int>(n) - 1;
  const int n_surface = b.orientable ? 2 * b.genus : b.genus;
  if (!b.orientable && b.genus < 1)
    throw error("non-orientable data needs genus >= 1");
  Presentation p;
  p.n_generators = nt + n_surface;

  for (int i = 0; i < nt; ++i) {
    Word r;
    for (long k = 0; k < b.orders[i]; ++k) r.ls.push_back(i + 1);
    p.relators.push_back(r);
  }
  // (T_1 ... T_{n-1} R(S))^{k_n}
  Word base;
  for (int i = 0; i < nt; ++i) base.ls.push_back(i + 1);
  Word rs = surface_relator(b.orientable, b.genus);
  for (Letter l : rs.ls) base.ls.push_back(l > 0 ? l + nt : l - nt);
  long kn = n == 0 ? 1 : b.orders.back();
  Word last;
  for (long k = 0; k < kn; ++k) last *= base;
  last = free_reduce(last);
  if (!last.empty()) p.relators.push_back(last);
  return p;
}

namespace {

CyclicWord cyclic_key(const Word& w) { return cyclic_reduce(w).core; }

}  // namespace

Presentation simplify_bounded(const Presentation& p) {
  Presentation cur = p;
  const int bound =
      10 * (p.n_generators + static_cast<int>(p.relators.size()) + 1);
  for (int pass = 0; pass < bound; ++pass) {
    bool changed = false;

    // Drop empty relators.
    auto& rel = cur.relators;
    std::size_t before = rel.size();
    rel.erase(std::remove_if(rel.begin(), rel.end(),
                             [](const Word& w) { return w.empty(); }),
              rel.end());
    if (rel.size() != before) changed = true;

    // Drop duplicates up to rotation and inversion.
    std::set<CyclicWord> seen;
    std::vector<Word> kept;
    for (const auto& r : rel) {
      CyclicWord k1 = cyclic_key(r), k2 = cyclic_key(r.inverse());
      CyclicWord key = k1.ls <= k2.ls ? k1 : k2;
      if (seen.insert(key).second)
        kept.push_back(r);
      else
        changed = true;
    }
    rel = std::move(kept);

    // Eliminate a generator occurring exactly once in some relator.
    // Prefer the shortest host relator.
    int pick_gen = 0;
    std::size_t pick_rel = 0, pick_len = 0;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      for (int g = 1; g <= cur.n_generators; ++g) {
        int cnt = 0;
        for (Letter l : rel[i].ls)
          if (gen_of(l) == g) ++cnt;
        if (cnt == 1 && (pick_gen == 0 || rel[i].size() < pick_len)) {
          pick_gen = g;
          pick_rel = i;
          pick_len = rel[i].size();
        }
      }
    }
    if (pick_gen != 0) {
      const Word r = rel[pick_rel];
      std::size_t pos = 0;
      while (gen_of(r.ls[pos]) != pick_gen) ++pos;
      Word rot;
      for (std::size_t k = 0; k < r.ls.size(); ++k)
        rot.ls.push_back(r.ls[(pos + k) % r.ls.size()]);
      if (rot.ls[0] < 0) {
        rot = rot.inverse();
        std::rotate(rot.ls.begin(), rot.ls.end() - 1, rot.ls.end());
      }
      Word image = Word({rot.ls.begin() + 1, rot.ls.end()}).inverse();
      Presentation next;
      next.n_generators = cur.n_generators - 1;
      auto renumber = [&](const Word& w) {
        Word out;
        for (Letter l : w.ls) {
          int gen = gen_of(l);
          int shifted = gen > pick_gen ? gen - 1 : gen;
          out.ls.push_back(l > 0 ? shifted : -shifted);
        }
        return out;
      };
      for (std::size_t i = 0; i < rel.size(); ++i) {
        if (i == pick_rel) continue;
        next.relators.push_back(
            renumber(substitute(rel[i], pick_gen, image)));
      }
      cur = std::move(next);
      changed = true;
    }

    if (!changed) break;
  }
  return cur;
}

}  // namespace ct
