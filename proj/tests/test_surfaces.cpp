#include <random>
#include <set>

#include "ct/surfaces.hpp"
#include "doctest.h"

using namespace ct;

namespace {

SurfaceComplex sphere_minimal() {
  return normal_form_complex({NormalForm::kSphere, 0});
}

// Applies n random elementary extensions of all three kinds.
SurfaceComplex fuzz_extend(SurfaceComplex c, std::mt19937_64& rng, int n) {
  for (int i = 0; i < n; ++i) {
    switch (rng() % 3) {
      case 0: {
        int seg = static_cast<int>(rng() % c.segs.size());
        c = extend_first_kind(c, seg);
        break;
      }
      case 1: {
        int face = static_cast<int>(rng() % c.faces.size());
        int len = static_cast<int>(c.faces[face].size());
        if (len < 2) break;
        int c1 = static_cast<int>(rng() % len);
        int c2 = static_cast<int>(rng() % len);
        if (c1 == c2) break;
        c = extend_second_kind(c, face, c1, c2);
        break;
      }
      default: {
        ManifoldCert cert = validate_manifold(c);
        int point = static_cast<int>(rng() % c.n_points);
        int m = static_cast<int>(cert.stars[point].size());
        if (m < 2) break;
        int start = static_cast<int>(rng() % m);
        int len = 1 + static_cast<int>(rng() % (m - 1));
        c = extend_third_kind(c, point, start, len, cert);
        break;
      }
    }
  }
  validate_manifold(c);
  return c;
}

}  // namespace

TEST_CASE("manifold validation accepts the classics") {
  // one-face torus
  SurfaceComplex torus = polygon_complex(word_from({1, 2, -1, -2}));
  ManifoldCert cert = validate_manifold(torus);
  CHECK(cert.stars[0].size() == 4);

  // minimal sphere: two points, one segment pair, word s s^-1
  SurfaceComplex sph = sphere_minimal();
  ManifoldCert cs = validate_manifold(sph);
  CHECK(cs.stars[0].size() == 1);
  CHECK(cs.stars[1].size() == 1);

  // projective plane
  validate_manifold(polygon_complex(word_from({1, 1})));

  // genus-2 normal form
  validate_manifold(polygon_complex(surface_relator(true, 2)));
}

TEST_CASE("manifold validation names violations") {
  // dangling segment bounds no face
  SurfaceComplex c;
  c.n_points = 1;
  c.segs.push_back({0, 0});
  c.segs.push_back({0, 0});
  c.faces.push_back(word_from({1, 1}));
  CHECK_THROWS_WITH_AS(validate_manifold(c), doctest::Contains("A.5"),
                       error);

  // a segment traversed four times
  SurfaceComplex c2 = polygon_complex(word_from({1, 1, 1, 1}));
  CHECK_THROWS_WITH_AS(validate_manifold(c2), doctest::Contains("A.6"),
                       error);

  // pinched sphere: two spheres glued at a point (star disconnects)
  SurfaceComplex c3;
  c3.n_points = 1;
  c3.segs.push_back({0, 0});
  c3.segs.push_back({0, 0});
  c3.faces.push_back(word_from({1, -1}));
  c3.faces.push_back(word_from({2, -2}));
  CHECK_THROWS_WITH_AS(validate_manifold(c3), doctest::Contains("A.7"),
                       error);

  // disconnected skeleton
  SurfaceComplex c4;
  c4.n_points = 2;
  c4.segs.push_back({0, 0});
  c4.segs.push_back({1, 1});
  c4.faces.push_back(word_from({1, 1}));
  c4.faces.push_back(word_from({2, 2}));
  CHECK_THROWS_WITH_AS(validate_manifold(c4), doctest::Contains("A.4"),
                       error);
}

TEST_CASE("characteristic") {
  CHECK(characteristic(sphere_minimal()) == -2);
  for (int g = 1; g <= 5; ++g)
    CHECK(characteristic(polygon_complex(surface_relator(true, g))) ==
          2 * g - 2);
  for (int g = 1; g <= 5; ++g)
    CHECK(characteristic(polygon_complex(surface_relator(false, g))) ==
          g - 2);

  // invariant under elementary extensions
  std::mt19937_64 rng(1);
  SurfaceComplex c = polygon_complex(word_from({1, 2, -1, -2}));
  long chi = characteristic(c);
  for (int i = 0; i < 30; ++i) {
    c = fuzz_extend(c, rng, 1);
    CHECK(characteristic(c) == chi);
  }
}

TEST_CASE("orientability") {
  SurfaceComplex torus = polygon_complex(word_from({1, 2, -1, -2}));
  CHECK(orientable(torus, validate_manifold(torus)));
  SurfaceComplex proj = polygon_complex(word_from({1, 1}));
  CHECK_FALSE(orientable(proj, validate_manifold(proj)));
  SurfaceComplex klein = polygon_complex(word_from({1, 2, 1, -2}));
  CHECK_FALSE(orientable(klein, validate_manifold(klein)));

  // seed-independence: orienticity equal when faces are listed in any
  // rotation (checked by re-listing faces in reversed order)
  SurfaceComplex sph = sphere_minimal();
  SurfaceComplex sph2 = extend_second_kind(sph, 0, 0, 1);
  ManifoldCert cert = validate_manifold(sph2);
  CHECK(orientable(sph2, cert));
  std::swap(sph2.faces[0], sph2.faces[1]);
  CHECK(orientable(sph2, validate_manifold(sph2)));
}

TEST_CASE("classification of the standard forms") {
  {
    Classification r = classify(sphere_minimal());
    CHECK(r.nf == NormalForm{NormalForm::kSphere, 0});
  }
  {
    Classification r = classify(polygon_complex(word_from({1, 2, -1, -2})));
    CHECK(r.nf == NormalForm{NormalForm::kOrientable, 1});
  }
  {
    // Klein bottle gluing a b a b^-1
    Classification r = classify(polygon_complex(word_from({1, 2, 1, -2})));
    CHECK(r.nf == NormalForm{NormalForm::kNonOrientable, 2});
  }
  {
    Classification r = classify(polygon_complex(word_from({1, 1})));
    CHECK(r.nf == NormalForm{NormalForm::kNonOrientable, 1});
  }
  for (int g = 1; g <= 4; ++g) {
    Classification r = classify(polygon_complex(surface_relator(true, g)));
    CHECK(r.nf == NormalForm{NormalForm::kOrientable, g});
    Classification rn = classify(polygon_complex(surface_relator(false, g)));
    CHECK(rn.nf == NormalForm{NormalForm::kNonOrientable, g});
  }
}

TEST_CASE("classification is idempotent and preserves invariants stepwise") {
  std::vector<NormalForm> forms = {
      {NormalForm::kSphere, 0},      {NormalForm::kOrientable, 1},
      {NormalForm::kOrientable, 2},  {NormalForm::kNonOrientable, 1},
      {NormalForm::kNonOrientable, 2}, {NormalForm::kNonOrientable, 3}};
  for (const auto& nf : forms) {
    SurfaceComplex c = normal_form_complex(nf);
    Classification r = classify(c);
    CHECK(r.nf == nf);
    ManifoldCert cert = validate_manifold(c);
    long chi = characteristic(c);
    bool ori = orientable(c, cert);
    for (const auto& step : r.trace) {
      CHECK(step.chi == chi);
      CHECK(step.orient == ori);
    }
  }
}

TEST_CASE("classification recovers fuzzed normal forms") {
  std::mt19937_64 rng(77);
  std::vector<NormalForm> forms = {
      {NormalForm::kSphere, 0},        {NormalForm::kOrientable, 1},
      {NormalForm::kOrientable, 2},    {NormalForm::kNonOrientable, 1},
      {NormalForm::kNonOrientable, 2}, {NormalForm::kNonOrientable, 3}};
  for (const auto& nf : forms) {
    for (int trial = 0; trial < 15; ++trial) {
      SurfaceComplex c = normal_form_complex(nf);
      c = fuzz_extend(c, rng, 1 + static_cast<int>(rng() % 10));
      Classification r = classify(c);
      CHECK(r.nf == nf);
    }
  }
}

TEST_CASE("classification agrees with the fundamental group abelianized") {
  std::mt19937_64 rng(2025);
  std::vector<NormalForm> seeds = {
      {NormalForm::kSphere, 0},        {NormalForm::kOrientable, 1},
      {NormalForm::kOrientable, 3},    {NormalForm::kNonOrientable, 1},
      {NormalForm::kNonOrientable, 4}};
  for (const auto& nf : seeds) {
    for (int trial = 0; trial < 20; ++trial) {
      SurfaceComplex c =
          fuzz_extend(normal_form_complex(nf), rng, 1 + trial % 12);
      NormalForm got = classify(c).nf;
      AbelianInvariants inv = abelian_invariants(fundamental_group(c, 0));
      if (got.kind == NormalForm::kSphere) {
        CHECK(inv == AbelianInvariants{{}, 0});
      } else if (got.kind == NormalForm::kOrientable) {
        CHECK(inv ==
              AbelianInvariants{{}, static_cast<std::size_t>(2 * got.genus)});
      } else {
        CHECK(inv == AbelianInvariants{{2},
                                       static_cast<std::size_t>(got.genus - 1)});
      }
    }
  }
}

TEST_CASE("dual complexes") {
  // torus one-vertex square: dual has 1 point, 2 pairs, 1 face
  SurfaceComplex torus = polygon_complex(word_from({1, 2, -1, -2}));
  ManifoldCert cert = validate_manifold(torus);
  SurfaceComplex d = dual_complex(torus, cert);
  CHECK(d.n_points == 1);
  CHECK(d.segs.size() == 2);
  CHECK(d.faces.size() == 1);
  validate_manifold(d);
  CHECK(characteristic(d) == characteristic(torus));

  // sphere minimal: dual has 1 point, 1 segment pair, 2 face pairs
  SurfaceComplex sph = sphere_minimal();
  SurfaceComplex ds = dual_complex(sph, validate_manifold(sph));
  CHECK(ds.n_points == 1);
  CHECK(ds.segs.size() == 1);
  CHECK(ds.faces.size() == 2);
  validate_manifold(ds);
  CHECK(characteristic(ds) == -2);

  // dual of the dual has the original counts, and chi always agrees
  std::mt19937_64 rng(3);
  std::vector<SurfaceComplex> samples = {
      torus, sph, polygon_complex(word_from({1, 1})),
      polygon_complex(surface_relator(true, 2)),
      polygon_complex(surface_relator(false, 3))};
  for (int trial = 0; trial < 10; ++trial)
    samples.push_back(
        fuzz_extend(samples[trial % samples.size()], rng, 1 + trial % 5));
  for (const auto& c : samples) {
    ManifoldCert cc = validate_manifold(c);
    SurfaceComplex dd = dual_complex(c, cc);
    ManifoldCert cd = validate_manifold(dd);
    CHECK(characteristic(dd) == characteristic(c));
    CHECK(orientable(dd, cd) == orientable(c, cc));
    SurfaceComplex ddd = dual_complex(dd, cd);
    validate_manifold(ddd);
    CHECK(ddd.n_points == c.n_points);
    CHECK(ddd.segs.size() == c.segs.size());
    CHECK(ddd.faces.size() == c.faces.size());
  }
}

TEST_CASE("fundamental groups of surfaces") {
  SurfaceComplex torus = polygon_complex(word_from({1, 2, -1, -2}));
  CHECK(abelian_invariants(fundamental_group(torus, 0)) ==
        AbelianInvariants{{}, 2});

  SurfaceComplex proj = polygon_complex(word_from({1, 1}));
  CHECK(abelian_invariants(fundamental_group(proj, 0)) ==
        AbelianInvariants{{2}, 0});

  SurfaceComplex sph = sphere_minimal();
  CHECK(abelian_invariants(fundamental_group(sph, 0)) ==
        AbelianInvariants{{}, 0});

  // invariance under the spanning tree used
  std::mt19937_64 rng(5);
  SurfaceComplex big = fuzz_extend(torus, rng, 12);
  AbelianInvariants base = abelian_invariants(fundamental_group(big, 0));
  CHECK(base == AbelianInvariants{{}, 2});
  Graph1 skel = big.skeleton();
  for (int trial = 0; trial < 10; ++trial) {
    auto tree = spanning_tree_shuffled(skel, trial);
    CHECK(abelian_invariants(fundamental_group(big, 0, tree)) == base);
  }
}

TEST_CASE("homology classes and the intersection form") {
  // the surface relator has zero homology
  for (int g = 1; g <= 3; ++g) {
    auto v = homology_class(surface_relator(true, g), g);
    for (long x : v) CHECK(x == 0);
  }
  auto e1 = homology_class(word_from({1}), 2);
  CHECK(e1 == std::vector<long>{1, 0, 0, 0});

  // homomorphism
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    Word w1, w2;
    for (int i = 0; i < 6; ++i) {
      int g1 = 1 + static_cast<int>(rng() % 4);
      int g2 = 1 + static_cast<int>(rng() % 4);
      w1.ls.push_back(rng() % 2 ? g1 : -g1);
      w2.ls.push_back(rng() % 2 ? g2 : -g2);
    }
    auto va = homology_class(w1, 2);
    auto vb = homology_class(w2, 2);
    Word prod = w1;
    prod *= w2;
    auto vp = homology_class(prod, 2);
    for (int i = 0; i < 4; ++i) CHECK(vp[i] == va[i] + vb[i]);
  }

  // N(S_i, T_i) = 1, other basis pairs vanish
  const int g = 3;
  auto basis_vec = [&](int idx) {
    std::vector<long> v(2 * g, 0);
    v[idx] = 1;
    return v;
  };
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < g; ++k) {
      CHECK(intersection_number(basis_vec(2 * i), basis_vec(2 * k + 1)) ==
            (i == k ? 1 : 0));
      CHECK(intersection_number(basis_vec(2 * i), basis_vec(2 * k)) == 0);
      CHECK(intersection_number(basis_vec(2 * i + 1), basis_vec(2 * k + 1)) ==
            0);
    }

  // antisymmetry and bilinearity
  std::uniform_int_distribution<long> d(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<long> v1(2 * g), v2(2 * g), v3(2 * g);
    for (int i = 0; i < 2 * g; ++i) {
      v1[i] = d(rng);
      v2[i] = d(rng);
      v3[i] = d(rng);
    }
    CHECK(intersection_number(v1, v2) == -intersection_number(v2, v1));
    std::vector<long> sum(2 * g);
    for (int i = 0; i < 2 * g; ++i) sum[i] = v1[i] + v3[i];
    CHECK(intersection_number(sum, v2) ==
          intersection_number(v1, v2) + intersection_number(v3, v2));
  }

  CHECK_THROWS_AS(intersection_number({1, 0}, {1, 0, 0, 0}), error);
}

TEST_CASE("segment sidedness") {
  CHECK(segment_sidedness(polygon_complex(word_from({1, 1})), 0) ==
        Sidedness::kOneSided);
  CHECK(segment_sidedness(polygon_complex(word_from({1, 2, -1, -2})), 0) ==
        Sidedness::kTwoSided);
  CHECK(segment_sidedness(polygon_complex(word_from({1, 2, 1, -2})), 0) ==
        Sidedness::kOneSided);
  CHECK(segment_sidedness(polygon_complex(word_from({1, 2, 1, -2})), 1) ==
        Sidedness::kTwoSided);
}
