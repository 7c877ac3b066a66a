// Acceptance suite: runs every acceptance criterion and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "ct/complexes.hpp"
#include "ct/coverings.hpp"
#include "ct/matrices.hpp"
#include "ct/presentations.hpp"
#include "ct/subgroups.hpp"
#include "ct/surfaces.hpp"
#include "ct/words.hpp"

using namespace ct;

namespace {

struct Criterion {
  std::string title;
  std::function<void()> body;  // throws std::runtime_error on failure
};

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

Word random_word(std::mt19937_64& rng, int n_gens, int len) {
  std::uniform_int_distribution<int> gen(1, n_gens);
  std::uniform_int_distribution<int> sgn(0, 1);
  Word w;
  for (int i = 0; i < len; ++i) {
    int g = gen(rng);
    w.ls.push_back(sgn(rng) ? g : -g);
  }
  return w;
}

// ---------------------------------------------------------------------- 1

void congruence_subgroups() {
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    CongruenceReport r = congruence_subgroup_report(p);
    require(r.index == p + 1, "index must be p+1");
    require(r.all_power_relators, "non-power relator survived simplification");
    int twos = 0, threes = 0;
    for (long t : r.torsion_orders) {
      if (t == 2) ++twos;
      if (t == 3) ++threes;
      require(t == 2 || t == 3, "unexpected torsion order");
    }
    int want2 = p == 2 ? 1 : (p % 4 == 1 ? 2 : 0);
    int want3 = p == 3 ? 1 : (p % 3 == 1 ? 2 : 0);
    require(twos == want2, "order-2 relator count breaks the residue law");
    require(threes == want3, "order-3 relator count breaks the residue law");
    if (p == 11) {
      require(r.free_group, "p=11 subgroup must be free");
      require(r.free_rank == 3, "p=11 free rank must be 3");
    }
  }
}

// ---------------------------------------------------------------------- 2

void elementary_divisors() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (auto& v : m.a) v = entry(rng);
    SmithResult s = smith_normal_form(m);
    MinorDivisors d = elementary_divisors_via_minors(m);
    require(s.rank == d.rank, "rank mismatch against the minor oracle");
    for (std::size_t i = 0; i < s.rank; ++i)
      require(s.diagonal[i] == d.divisors[i],
              "divisor mismatch against the minor oracle");
    for (std::size_t i = 0; i + 1 < s.rank; ++i)
      require(s.diagonal[i + 1] % s.diagonal[i] == 0,
              "divisibility chain broken");

    // 20 random unimodular moves preserve the divisors
    IntMatrix f = m;
    for (int move = 0; move < 20; ++move) {
      std::uniform_int_distribution<std::size_t> ri(0, f.rows - 1);
      std::uniform_int_distribution<std::size_t> ci(0, f.cols - 1);
      std::size_t a = ri(rng), b = ri(rng);
      std::size_t x = ci(rng), y = ci(rng);
      switch (rng() % 3) {
        case 0:
          for (std::size_t j = 0; j < f.cols; ++j)
            std::swap(f.at(a, j), f.at(b, j));
          break;
        case 1:
          if (a != b) {
            long k = coef(rng);
            for (std::size_t j = 0; j < f.cols; ++j)
              f.at(a, j) += k * f.at(b, j);
          }
          break;
        default:
          if (x != y) {
            long k = coef(rng);
            for (std::size_t i = 0; i < f.rows; ++i)
              f.at(i, x) += k * f.at(i, y);
          } else {
            for (std::size_t i = 0; i < f.rows; ++i)
              f.at(i, x) = -f.at(i, x);
          }
          break;
      }
    }
    SmithResult fz = smith_normal_form(f);
    require(fz.rank == s.rank && fz.diagonal == s.diagonal,
            "unimodular fuzz changed the divisors");
  }
}

// ---------------------------------------------------------------------- 3

void operator_separation() {
  // Elementary divisors cannot see the difference...
  LaurentMatrix m(2, 1);
  LaurentPoly x2p1;
  x2p1.set(2, 1);
  x2p1.set(0, 1);
  m.at(0, 0) = x2p1;
  m.at(1, 0) = LaurentPoly::constant(2);
  LaurentDivisors d = laurent_elementary_divisors(m);
  require(d.rank == 1 && d.divisors[0] == LaurentPoly::constant(1),
          "elementary divisor of [[x^2+1],[2]] must be 1");

  // ...but the explicit finite quotient keeps the generator alive:
  // Z2 x Z2 with the operator swapping the coordinates. S maps to (0,1).
  struct Q {
    int u, v;
  };
  auto op = [](Q q) { return Q{q.v, q.u}; };  // the operator x
  auto add = [](Q a, Q b) { return Q{(a.u + b.u) % 2, (a.v + b.v) % 2}; };
  Q s{0, 1};
  auto eval = [&](const LaurentPoly& f) {
    Q acc{0, 0};
    for (const auto& [e, c] : f.c) {
      Q img = s;
      for (int k = 0; k < e; ++k) img = op(img);
      long reps = ((c.get_si() % 2) + 2) % 2;
      for (long r = 0; r < reps; ++r) acc = add(acc, img);
    }
    return acc;
  };
  LaurentPoly two = LaurentPoly::constant(2);
  Q r1 = eval(x2p1), r2 = eval(two);
  require(r1.u == 0 && r1.v == 0, "relator x^2+1 must die in the quotient");
  require(r2.u == 0 && r2.v == 0, "relator 2 must die in the quotient");
  Q img = eval(LaurentPoly::constant(1));
  require(!(img.u == 0 && img.v == 0),
          "S must stay nontrivial in the quotient");
}

// ---------------------------------------------------------------------- 4

void alexander_polynomial() {
  Presentation trefoil(2, {word_from({1, 1, -2, -2, -2})});
  LaurentPoly f = commutator_operator_polynomial(trefoil);
  LaurentPoly want;
  want.set(0, 1);
  want.set(1, -1);
  want.set(2, 1);
  require(f == want, "trefoil polynomial must be x^2 - x + 1");

  // independent oracle: gcd of the columns of the rewritten relation
  // matrix over the integer cosets, no generator change
  const Word& r = trefoil.relators[0];
  long s1 = exponent_sum(r, 1), s2 = exponent_sum(r, 2);
  long phi1 = -s2, phi2 = s1;
  LaurentPoly col1, col2;
  long shift = 0;
  for (Letter l : r.ls) {
    long phi = gen_of(l) == 1 ? phi1 : phi2;
    LaurentPoly& col = gen_of(l) == 1 ? col1 : col2;
    if (l > 0) {
      col.set(static_cast<int>(shift), col.coeff(static_cast<int>(shift)) + 1);
      shift += phi;
    } else {
      shift -= phi;
      col.set(static_cast<int>(shift), col.coeff(static_cast<int>(shift)) - 1);
    }
  }
  LaurentPoly via_matrix = laurent_canonical(laurent_gcd({col1, col2}));
  require(via_matrix == f, "relation-matrix oracle disagrees");
}

// ---------------------------------------------------------------------- 5

void surface_classification() {
  require(characteristic(normal_form_complex({NormalForm::kSphere, 0})) == -2,
          "sphere form must have c = -2");
  for (int g = 1; g <= 5; ++g)
    require(characteristic(polygon_complex(surface_relator(true, g))) ==
                2 * g - 2,
            "orientable normal form must have c = 2g-2");

  std::vector<NormalForm> seeds = {
      {NormalForm::kSphere, 0},        {NormalForm::kOrientable, 1},
      {NormalForm::kOrientable, 2},    {NormalForm::kNonOrientable, 1},
      {NormalForm::kNonOrientable, 2}, {NormalForm::kNonOrientable, 3}};
  std::mt19937_64 rng(777);
  for (const auto& nf : seeds) {
    for (int trial = 0; trial < 200; ++trial) {
      SurfaceComplex c = normal_form_complex(nf);
      int moves = 1 + static_cast<int>(rng() % 30);
      for (int i = 0; i < moves; ++i) {
        switch (rng() % 3) {
          case 0:
            c = extend_first_kind(c, static_cast<int>(rng() % c.segs.size()));
            break;
          case 1: {
            int face = static_cast<int>(rng() % c.faces.size());
            int len = static_cast<int>(c.faces[face].size());
            if (len < 2) break;
            int c1 = static_cast<int>(rng() % len);
            int c2 = static_cast<int>(rng() % len);
            if (c1 != c2) c = extend_second_kind(c, face, c1, c2);
            break;
          }
          default: {
            ManifoldCert cert = validate_manifold(c);
            int point = static_cast<int>(rng() % c.n_points);
            int m = static_cast<int>(cert.stars[point].size());
            if (m < 2) break;
            c = extend_third_kind(c, point, static_cast<int>(rng() % m),
                                  1 + static_cast<int>(rng() % (m - 1)), cert);
            break;
          }
        }
      }
      long c0 = characteristic(c);
      Classification res = classify(c);
      require(res.nf == nf, "fuzzed form did not classify back to its seed");
      for (const auto& step : res.trace)
        require(step.chi == c0, "a classify step changed the characteristic");
    }
  }
}

// ---------------------------------------------------------------------- 6

void word_problem_cross_solver() {
  std::mt19937_64 rng(4096);
  for (int g : {2, 3}) {
    Word relator = surface_relator(true, g);
    for (std::size_t rot = 0; rot < relator.size(); ++rot) {
      Word w;
      for (std::size_t k = 0; k < relator.size(); ++k)
        w.ls.push_back(relator.ls[(rot + k) % relator.size()]);
      require(dehn_is_identity(w, g), "relator rotation must be the identity");
      require(cyclic_cover_is_identity(w, g),
              "relator rotation must be the identity in the cyclic cover");
      require(dehn_is_identity(w.inverse(), g),
              "inverse rotation must be the identity");
      require(cyclic_cover_is_identity(w.inverse(), g),
              "inverse rotation must be the identity in the cyclic cover");
    }

    for (int trial = 0; trial < 10000; ++trial) {
      Word w = random_word(rng, 2 * g, 1 + static_cast<int>(rng() % 12));
      bool a = dehn_is_identity(w, g);
      bool b = cyclic_cover_is_identity(w, g);
      require(a == b, "the two solvers disagree");
      bool abelian_zero = true;
      for (int i = 1; i <= 2 * g; ++i)
        if (exponent_sum(w, i) != 0) abelian_zero = false;
      if (!abelian_zero)
        require(!a, "nonzero abelianization must be non-identity");
    }

    for (int trial = 0; trial < 100; ++trial) {
      Word prod;
      int pieces = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < pieces; ++i) {
        Word l = random_word(rng, 2 * g, static_cast<int>(rng() % 6));
        Word rr = relator;
        if (rng() % 2) rr = rr.inverse();
        prod *= l;
        prod *= rr;
        prod *= l.inverse();
      }
      require(dehn_is_identity(prod, g),
              "conjugate-relator product must be the identity");
      require(cyclic_cover_is_identity(prod, g),
              "conjugate-relator product must be the identity (cyclic cover)");
    }
  }
}

// ---------------------------------------------------------------------- 7

void branched_coverings() {
  std::mt19937_64 rng(31337);
  std::vector<Word> bases = {word_from({1, 2, -1, -2}),
                             word_from({1, 2, 1, -2}),
                             surface_relator(true, 2)};
  for (int trial = 0; trial < 100; ++trial) {
    SurfaceComplex base = polygon_complex(bases[trial % bases.size()]);
    int k = 1 + static_cast<int>(rng() % 6);
    Voltage v;
    v.k = k;
    for (std::size_t s = 0; s < base.segs.size(); ++s) {
      std::vector<int> p(k);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      v.perm.push_back(p);
    }
    SurfaceCover c = build_surface_cover({base, v});
    require(verify_order_formula(c.report),
            "cycle lengths must sum to the degree");
    require(riemann_hurwitz_check(base, c.cover, c.report),
            "characteristic double count failed");
    bool unbranched = true;
    long branching = 0;
    for (const auto& face : c.report.per_face)
      for (const auto& cyc : face) {
        branching += cyc.branching_number;
        if (cyc.branching_number != 0) unbranched = false;
      }
    if (unbranched)
      require(characteristic(c.cover) == k * characteristic(base),
              "unbranched cover must multiply the characteristic");
    else
      require(
          characteristic(c.cover) == k * characteristic(base) + branching,
          "branched characteristic count failed");
  }
}

// ---------------------------------------------------------------------- 8

void planar_trichotomy() {
  auto cls = [](std::vector<long> o) { return classify_planar_group(o).cls; };
  for (long n : {2L, 3L, 7L, 12L})
    require(cls({n}) == GeometryClass::kSpherical, "(n) must be spherical");
  for (long n : {2L, 3L, 5L, 9L})
    require(cls({2, 2, n}) == GeometryClass::kSpherical,
            "dihedral data must be spherical");
  require(cls({2, 3, 3}) == GeometryClass::kSpherical &&
              classify_planar_group({2, 3, 3}).name == "tetrahedral",
          "(2,3,3) must be the tetrahedral case");
  require(cls({2, 3, 4}) == GeometryClass::kSpherical &&
              classify_planar_group({2, 3, 4}).name == "octahedral",
          "(2,3,4) must be the octahedral case");
  require(cls({2, 3, 5}) == GeometryClass::kSpherical &&
              classify_planar_group({2, 3, 5}).name == "icosahedral",
          "(2,3,5) must be the icosahedral case");
  require(classify_planar_group({}, 1, true).cls == GeometryClass::kEuclidean,
          "the torus shape must be euclidean");
  require(cls({2, 3, 6}) == GeometryClass::kEuclidean,
          "(2,3,6) must be euclidean");
  require(cls({2, 4, 4}) == GeometryClass::kEuclidean,
          "(2,4,4) must be euclidean");
  require(cls({2, 2, 2, 2}) == GeometryClass::kEuclidean,
          "(2,2,2,2) must be euclidean");
  require(cls({2, 3, 7}) == GeometryClass::kHyperbolic,
          "(2,3,7) must be hyperbolic");
}

// ---------------------------------------------------------------------- 9

void graph_layer() {
  std::mt19937_64 rng(9001);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Graph1 g;
    g.n_points = n;
    for (int p = 1; p < n; ++p) g.add_seg(static_cast<int>(rng() % p), p);
    int extra = static_cast<int>(rng() % 8);
    for (int e = 0; e < extra; ++e)
      g.add_seg(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
    int odd = 0;
    for (int p = 0; p < n; ++p)
      if (g.order(p) % 2) ++odd;
    auto trails = euler_trails(g);
    require(trails.size() == std::max<std::size_t>(1, odd / 2),
            "trail count must be max(1, odd/2)");
    std::multiset<int> used;
    for (const auto& t : trails) {
      require(is_path(g, t), "trail is not a path");
      for (Letter l : t.ls) used.insert(gen_of(l) - 1);
    }
    require(used.size() == g.segs.size(), "trails must cover each segment");
    for (std::size_t s = 0; s < g.segs.size(); ++s)
      require(used.count(static_cast<int>(s)) == 1,
              "segment used more than once");
  }

  // the classical bridge instance requires two trails
  Graph1 kb;
  kb.n_points = 4;
  kb.add_seg(0, 1);
  kb.add_seg(0, 1);
  kb.add_seg(0, 2);
  kb.add_seg(0, 2);
  kb.add_seg(0, 3);
  kb.add_seg(1, 3);
  kb.add_seg(2, 3);
  require(euler_trails(kb).size() == 2, "the bridge walk needs two trails");

  // 2-factorizations of random 2r-regular multigraphs, r <= 4
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + static_cast<int>(rng() % 4);
    int n = 2 + static_cast<int>(rng() % 5);
    Graph1 g;
    g.n_points = n;
    for (int k = 0; k < r; ++k) {
      std::vector<int> pts(n);
      std::iota(pts.begin(), pts.end(), 0);
      std::shuffle(pts.begin(), pts.end(), rng);
      for (int i = 0; i < n; ++i) g.add_seg(pts[i], pts[(i + 1) % n]);
    }
    auto factors = petersen_2_factorization(g);
    require(factors.size() == static_cast<std::size_t>(r),
            "factor count must be r");
    std::set<int> all;
    for (const auto& f : factors) {
      for (int p = 0; p < n; ++p) {
        int deg = 0;
        for (int s : f) {
          if (g.segs[s].from == p) ++deg;
          if (g.segs[s].to == p) ++deg;
        }
        require(deg == 2, "every point must have order 2 in each factor");
      }
      for (int s : f)
        require(all.insert(s).second, "factors must partition the segments");
    }
    require(all.size() == g.segs.size(), "factors must cover everything");
  }
}

// --------------------------------------------------------------------- 10

void rewriting_soundness() {
  std::mt19937_64 rng(555);
  for (int table_i = 0; table_i < 5; ++table_i) {
    int n = 2 + static_cast<int>(rng() % 6);
    Presentation free2;
    free2.n_generators = 2;
    CosetTable t;
    for (;;) {
      std::vector<std::vector<int>> perms;
      for (int g = 0; g < 2; ++g) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        perms.push_back(p);
      }
      try {
        t = coset_table_from_permutations(free2, perms);
        break;
      } catch (const error&) {
      }
    }
    SubgroupRewriter rw = make_rewriter(t);
    for (int k = 0; k < 500; ++k) {
      auto stab_word = [&](int len) {
        Word w = random_word(rng, 2, len);
        w *= rw.transversal.rep[t.apply_word(0, w)].inverse();
        return free_reduce(w);
      };
      Word w1 = stab_word(3 + static_cast<int>(rng() % 4));
      Word w2 = stab_word(3 + static_cast<int>(rng() % 4));
      Word prod = w1;
      prod *= w2;
      Word rhs = rw.rewrite(w1);
      rhs *= rw.rewrite(w2);
      require(rw.rewrite(prod) == free_reduce(rhs),
              "rewriting is not a homomorphism");
      Word noisy = w1;
      std::uniform_int_distribution<std::size_t> pos(0, noisy.ls.size());
      Letter l = (rng() % 2) ? 1 : -2;
      std::size_t at = pos(rng);
      noisy.ls.insert(noisy.ls.begin() + at, {l, inv(l)});
      require(rw.rewrite(noisy) == rw.rewrite(w1),
              "rewriting does not respect free reduction");
    }
  }

  for (int trial = 0; trial < 50; ++trial) {
    int rank = 2 + static_cast<int>(rng() % 2);
    int n = 2 + static_cast<int>(rng() % 6);
    Presentation fr;
    fr.n_generators = rank;
    CosetTable t;
    for (;;) {
      std::vector<std::vector<int>> perms;
      for (int g = 0; g < rank; ++g) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        perms.push_back(p);
      }
      try {
        t = coset_table_from_permutations(fr, perms);
        break;
      } catch (const error&) {
      }
    }
    RewrittenPresentation rp = reidemeister_schreier(fr, t);
    require(rp.presentation.n_generators == 1 + n * (rank - 1),
            "free subgroup rank formula failed");
    require(rp.presentation.relators.empty(),
            "free subgroup must have no relators");
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"congruence subgroups p in {2,3,5,7,11,13}: index, torsion law, "
       "p=11 free of rank 3",
       congruence_subgroups},
      {"smith normal form vs minor-gcd oracle, 500 matrices, chain and "
       "unimodular fuzz",
       elementary_divisors},
      {"operator-group separation: divisor 1 yet S nontrivial in the "
       "finite quotient",
       operator_separation},
      {"trefoil operator polynomial x^2-x+1, cross-checked by the "
       "relation-matrix oracle",
       alexander_polynomial},
      {"surface classification: c values, 200 fuzz trials per seed form, "
       "stepwise invariance",
       surface_classification},
      {"word-problem cross-solvers agree (genus 2 and 3, 10^4 words, "
       "relator products)",
       word_problem_cross_solver},
      {"branched coverings: order formula, characteristic double count, "
       "unbranched scaling",
       branched_coverings},
      {"planar trichotomy reproduces the spherical/euclidean/hyperbolic "
       "lists",
       planar_trichotomy},
      {"graph layer: euler trail counts, bridge instance, petersen "
       "2-factorizations",
       graph_layer},
      {"reidemeister-schreier rewriting soundness and the free rank "
       "formula",
       rewriting_soundness},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      criteria[i].body();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
      ++failures;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << verdict << " " << i + 1 << ": " << criteria[i].title << " ["
              << ms << " ms]";
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
