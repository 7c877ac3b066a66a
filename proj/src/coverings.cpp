#include "ct/coverings.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace ct {

namespace {

std::vector<int> word_permutation(const Voltage& v, const Word& w) {
  std::vector<int> perm(v.k);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < v.k; ++i) {
    int sheet = i;
    for (Letter l : w.ls) {
      int s = gen_of(l) - 1;
      sheet = l > 0 ? v.apply(s, sheet) : v.apply_inv(s, sheet);
    }
    perm[i] = sheet;
  }
  return perm;
}

}  // namespace

SurfaceCover build_surface_cover(const SurfaceCoverSpec& spec,
                                 int degree_guard) {
  const SurfaceComplex& base = spec.base;
  validate_manifold(base);
  if (base.n_points != 1) throw error("base must have a single point");
  spec.voltage.check(base.skeleton());
  const int k = spec.voltage.k;
  if (k > degree_guard) throw error("cover degree guard exceeded");

  SurfaceCover out;
  out.report.degree = k;
  out.cover.n_points = k;
  const int base_segs = static_cast<int>(base.segs.size());
  out.cover.segs.resize(static_cast<std::size_t>(base_segs) * k);
  auto seg_of = [&](int s, int sheet) { return sheet * base_segs + s; };
  for (int i = 0; i < k; ++i)
    for (int s = 0; s < base_segs; ++s)
      out.cover.segs[seg_of(s, i)] = {i, spec.voltage.apply(s, i)};

  for (const auto& r : base.faces) {
    std::vector<int> pr = word_permutation(spec.voltage, r);
    std::vector<bool> seen(k, false);
    std::vector<BranchCycle> cycles;
    for (int i0 = 0; i0 < k; ++i0) {
      if (seen[i0]) continue;
      int len = 0;
      for (int j = i0; !seen[j]; j = pr[j]) {
        seen[j] = true;
        ++len;
      }
      cycles.push_back({len, len - 1, i0});
      // The lifted face wraps the base boundary len times from sheet i0.
      Word lifted;
      int sheet = i0;
      for (int rep = 0; rep < len; ++rep)
        for (Letter l : r.ls) {
          int s = gen_of(l) - 1;
          if (l > 0) {
            lifted.ls.push_back(seg_of(s, sheet) + 1);
            sheet = spec.voltage.apply(s, sheet);
          } else {
            sheet = spec.voltage.apply_inv(s, sheet);
            lifted.ls.push_back(-(seg_of(s, sheet) + 1));
          }
        }
      if (sheet != i0)
        throw std::logic_error("lifted boundary did not close");
      out.cover.faces.push_back(lifted);
    }
    out.report.per_face.push_back(cycles);
  }
  // Disconnected covers are fine (intransitive voltages give disjoint
  // copies); each component must still be a manifold.
  for (const auto& comp : split_components(out.cover)) validate_manifold(comp);
  return out;
}

bool verify_order_formula(const BranchReport& report) {
  for (const auto& face : report.per_face) {
    int total = 0;
    for (const auto& c : face) total += c.length;
    if (total != report.degree) return false;
  }
  return true;
}

bool riemann_hurwitz_check(const SurfaceComplex& base,
                           const SurfaceComplex& cover,
                           const BranchReport& report) {
  long branching = 0;
  for (const auto& face : report.per_face)
    for (const auto& c : face) branching += c.branching_number;
  return characteristic(cover) ==
         report.degree * characteristic(base) + branching;
}

std::vector<bool> unbranched_faces(const SurfaceCoverSpec& spec) {
  std::vector<bool> out;
  std::vector<int> id(spec.voltage.k);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& r : spec.base.faces)
    out.push_back(word_permutation(spec.voltage, r) == id);
  return out;
}

std::vector<BranchingOrder> branching_orders_of_subgroup(const CosetTable& t,
                                                         const Word& core,
                                                         long k) {
  if (k < 1) throw error("power must be >= 1");
  const int n = t.n_cosets();
  std::vector<int> perm(n);
  for (int c = 0; c < n; ++c) perm[c] = t.apply_word(c, core);
  // core^k must fix every coset.
  for (int c = 0; c < n; ++c) {
    int d = c;
    for (long i = 0; i < k; ++i) d = perm[d];
    if (d != c) throw error("relator power does not act as the identity");
  }
  std::vector<BranchingOrder> out;
  std::vector<bool> seen(n, false);
  for (int c = 0; c < n; ++c) {
    if (seen[c]) continue;
    int len = 0;
    for (int j = c; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (k % len != 0)
      throw std::logic_error("cycle length does not divide the power");
    out.push_back({len, k / len - 1});
  }
  return out;
}

PlanarClass classify_planar_group(const std::vector<long>& orders, int genus,
                                  bool orientable) {
  for (long k : orders)
    if (k < 2) throw error("branch orders must be >= 2");
  if (genus < 0) throw error("genus must be nonnegative");
  if (!orientable && genus < 1)
    throw error("non-orientable shapes need genus >= 1");

  // Orbifold characteristic chi = chi(surface) - sum (1 - 1/k_i), scaled to
  // integers by the lcm of the orders.
  long scale = 1;
  for (long k : orders) scale = std::lcm(scale, k);
  long chi_surface = orientable ? 2 - 2L * genus : 2 - genus;
  long mu = chi_surface * scale;
  for (long k : orders) mu -= scale - scale / k;

  PlanarClass out;
  out.cls = mu > 0 ? GeometryClass::kSpherical
                   : (mu == 0 ? GeometryClass::kEuclidean
                              : GeometryClass::kHyperbolic);
  if (genus == 0 && orientable) {
    std::vector<long> o = orders;
    std::sort(o.begin(), o.end());
    if (o.size() == 1) out.name = "cyclic";
    if (o.size() == 2 && o[0] == o[1]) out.name = "cyclic";
    if (o.size() == 3 && o[0] == 2 && o[1] == 2) out.name = "dihedral";
    if (o.size() == 3 && o[0] == 2 && o[1] == 3 && o[2] == 3)
      out.name = "tetrahedral";
    if (o.size() == 3 && o[0] == 2 && o[1] == 3 && o[2] == 4)
      out.name = "octahedral";
    if (o.size() == 3 && o[0] == 2 && o[1] == 3 && o[2] == 5)
      out.name = "icosahedral";
    if (o.size() == 3 && o[0] == 2 && o[1] == 3 && o[2] == 6)
      out.name = "(2,3,6) euclidean triangle";
    if (o.size() == 3 && o[0] == 2 && o[1] == 4 && o[2] == 4)
      out.name = "(2,4,4) euclidean triangle";
    if (o.size() == 4 && o[0] == 2 && o[1] == 2 && o[2] == 2 && o[3] == 2)
      out.name = "(2,2,2,2) euclidean quadrilateral";
  }
  if (orders.empty() && genus == 1 && orientable) out.name = "torus";
  return out;
}

// ---------------------------------------------------------------------------
// Dehn's algorithm

namespace {

std::vector<Letter> cyclic_core(const Word& w) {
  CyclicReduction cr = cyclic_reduce(w);
  return cr.core.ls;
}

// Finds the rotation offset of `relator` starting with `pattern`; -1 if none.
long match_offset(const std::vector<Letter>& pattern,
                  const std::vector<Letter>& relator) {
  const std::size_t n = relator.size();
  for (std::size_t off = 0; off < n; ++off) {
    bool ok = true;
    for (std::size_t k = 0; k < pattern.size(); ++k)
      if (relator[(off + k) % n] != pattern[k]) {
        ok = false;
        break;
      }
    if (ok) return static_cast<long>(off);
  }
  return -1;
}

}  // namespace

Word dehn_reduce_with(const Word& w, const Word& relator) {
  if (relator.empty()) throw error("Dehn reduction needs a relator");
  const std::vector<Letter> rel = relator.ls;
  const std::vector<Letter> rel_inv = relator.inverse().ls;
  const int relator_len = static_cast<int>(rel.size());
  const int threshold = relator_len / 2 + 1;  // > half

  std::vector<Letter> cur = cyclic_core(w);
  for (;;) {
    const int n = static_cast<int>(cur.size());
    if (n == 0) break;
    bool replaced = false;
    int max_len = std::min(n, relator_len);
    for (int len = max_len; len >= threshold && !replaced; --len)
      for (int start = 0; start < n && !replaced; ++start) {
        std::vector<Letter> pattern(len);
        for (int k = 0; k < len; ++k) pattern[k] = cur[(start + k) % n];
        for (const auto* r : {&rel, &rel_inv}) {
          long off = match_offset(pattern, *r);
          if (off < 0) continue;
          // rotation = pattern + v, so pattern = v^-1 in the group.
          std::vector<Letter> v;
          for (int k = len; k < relator_len; ++k)
            v.push_back((*r)[(off + k) % relator_len]);
          std::reverse(v.begin(), v.end());
          for (Letter& l : v) l = inv(l);
          // Replace: new cyclic word = v + rest after the pattern.
          std::vector<Letter> next = v;
          for (int k = len; k < n; ++k)
            next.push_back(cur[(start + k) % n]);
          Word nw;
          nw.ls = next;
          cur = cyclic_core(nw);
          replaced = true;
          break;
        }
      }
    if (!replaced) break;
  }
  return Word(canonical_rotation(cur).ls);
}

Word dehn_reduce(const Word& w, int genus) {
  if (genus < 2) throw error("Dehn reduction needs genus >= 2");
  if (w.max_gen() > 2 * genus)
    throw error("word uses generators beyond the surface alphabet");
  return dehn_reduce_with(w, surface_relator(true, genus));
}

bool dehn_is_identity(const Word& w, int genus) {
  return dehn_reduce(w, genus).empty();
}

bool nonorientable_is_identity(const Word& w, int genus) {
  if (genus < 1) throw error("genus must be >= 1");
  if (w.max_gen() > genus)
    throw error("word uses generators beyond the surface alphabet");
  long parity = 0;
  for (Letter l : w.ls) parity += sign_of(l);
  if (((parity % 2) + 2) % 2 != 0) return false;
  // Genus 1 is the cyclic group of order 2: even words are trivial.
  if (genus == 1) return true;

  // Orientation double cover: both cosets swapped by every generator.
  Presentation p = surface_presentation(false, genus);
  std::vector<std::vector<int>> swaps(genus, {1, 0});
  CosetTable t = coset_table_from_permutations(p, swaps);
  SubgroupRewriter rw = make_rewriter(t);
  Word lifted = rw.rewrite(w, 0);
  Word rho0 = rw.rewrite(p.relators[0], 0);
  Word rho1 = rw.rewrite(p.relators[0], 1);

  // rho0 contains each subgroup generator once; solve it for one of them
  // and substitute, leaving a single quadratic relator of genus - 1.
  Word rot = rho0;
  if (rot.ls[0] < 0) {
    rot = rot.inverse();
    std::rotate(rot.ls.begin(), rot.ls.end() - 1, rot.ls.end());
  }
  int gone = gen_of(rot.ls[0]);
  Word image = Word({rot.ls.begin() + 1, rot.ls.end()}).inverse();
  Word reduced_word = substitute(lifted, gone, image);
  Word reduced_rel = Word{cyclic_reduce(substitute(rho1, gone, image)).core.ls};

  if (genus == 2) {
    // The double cover is the torus; exponent vectors decide.
    for (int g2 = 1; g2 <= reduced_word.max_gen(); ++g2)
      if (exponent_sum(reduced_word, g2) != 0) return false;
    return true;
  }
  return dehn_reduce_with(reduced_word, reduced_rel).empty();
}

// ---------------------------------------------------------------------------
// Infinite cyclic cover oracle

namespace {

struct SLetter {
  int gen = 0;   // 2..2g
  int shift = 0; // conjugating power of S1
  int sign = 1;

  bool inverse_of(const SLetter& o) const {
    return gen == o.gen && shift == o.shift && sign == -o.sign;
  }
};

void push_reduced(std::vector<SLetter>& out, const SLetter& l) {
  if (!out.empty() && out.back().inverse_of(l))
    out.pop_back();
  else
    out.push_back(l);
}

// The commutator tail of the shifted relator: generators 3..2g at the given
// shift, as commutator blocks.
void append_tail(std::vector<SLetter>& out, int genus, int shift, bool invert) {
  std::vector<SLetter> tail;
  for (int i = 1; i < genus; ++i) {
    int a = 2 * i + 1, b = 2 * i + 2;
    tail.push_back({a, shift, 1});
    tail.push_back({b, shift, 1});
    tail.push_back({a, shift, -1});
    tail.push_back({b, shift, -1});
  }
  if (invert) {
    std::reverse(tail.begin(), tail.end());
    for (auto& l : tail) l.sign = -l.sign;
  }
  for (const auto& l : tail) push_reduced(out, l);
}

}  // namespace

bool cyclic_cover_is_identity(const Word& w, int genus) {
  if (genus < 2) throw error("cyclic cover oracle needs genus >= 2");
  if (w.max_gen() > 2 * genus)
    throw error("word uses generators beyond the surface alphabet");
  if (exponent_sum(w, 1) != 0) return false;

  // Rewrite in the shifted generators S_{i,k} = S1^k S_i S1^-k.
  std::vector<SLetter> cur;
  int shift = 0;
  for (Letter l : w.ls) {
    if (gen_of(l) == 1) {
      shift += sign_of(l);
    } else {
      push_reduced(cur, {gen_of(l), shift, sign_of(l)});
    }
  }

  // Eliminate S_{2,k} for k != 0 using the shifted relator:
  // rho_m: S_{2,m+1} S_{2,m}^-1 C_m = 1, so
  //   S_{2,k} = C_{k-1}^-1 S_{2,k-1}   (k > 0)
  //   S_{2,k} = C_k S_{2,k+1}          (k < 0)
  for (;;) {
    std::size_t at = cur.size();
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (cur[i].gen == 2 && cur[i].shift != 0) {
        at = i;
        break;
      }
    if (at == cur.size()) break;
    SLetter l = cur[at];
    std::vector<SLetter> repl;
    auto expand = [&](const SLetter& target, std::vector<SLetter>& out) {
      if (target.shift > 0) {
        // S_{2,k} -> C_{k-1}^-1 S_{2,k-1}
        append_tail(out, genus, target.shift - 1, true);
        push_reduced(out, {2, target.shift - 1, 1});
      } else {
        // S_{2,k} -> C_k S_{2,k+1}
        append_tail(out, genus, target.shift, false);
        push_reduced(out, {2, target.shift + 1, 1});
      }
    };
    if (l.sign > 0) {
      expand(l, repl);
    } else {
      std::vector<SLetter> pos;
      expand({l.gen, l.shift, 1}, pos);
      std::reverse(pos.begin(), pos.end());
      for (auto& x : pos) x.sign = -x.sign;
      repl = pos;
    }
    std::vector<SLetter> next(cur.begin(), cur.begin() + at);
    for (const auto& x : repl) push_reduced(next, x);
    for (std::size_t i = at + 1; i < cur.size(); ++i)
      push_reduced(next, cur[i]);
    cur = std::move(next);
  }
  return cur.empty();
}

}  // namespace ct
