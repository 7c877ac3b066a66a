#include <random>

#include "ct/matrices.hpp"
#include "doctest.h"

using namespace ct;

namespace {

IntMatrix from_rows(std::vector<std::vector<long>> rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                        long lim) {
  std::uniform_int_distribution<long> d(-lim, lim);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

bool snf_valid(const IntMatrix& m, const SmithResult& s) {
  // left * m * right equals the diagonal and the transforms are unimodular
  IntMatrix prod = mat_mul(mat_mul(s.left, m), s.right);
  for (std::size_t i = 0; i < prod.rows; ++i)
    for (std::size_t j = 0; j < prod.cols; ++j) {
      mpz_class want = 0;
      if (i == j && i < s.rank) want = s.diagonal[i];
      if (prod.at(i, j) != want) return false;
    }
  if (abs(mat_det(s.left)) != 1 || abs(mat_det(s.right)) != 1) return false;
  for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i)
    if (s.diagonal[i + 1] % s.diagonal[i] != 0) return false;
  for (const auto& d : s.diagonal)
    if (d <= 0) return false;
  return true;
}

LaurentPoly poly(std::initializer_list<std::pair<int, long>> terms) {
  LaurentPoly p;
  for (auto [e, c] : terms) p.set(e, p.coeff(e) + c);
  return p;
}

}  // namespace

TEST_CASE("smith normal form basics") {
  {
    SmithResult s = smith_normal_form(IntMatrix::identity(3));
    CHECK(s.rank == 3);
    for (const auto& d : s.diagonal) CHECK(d == 1);
  }
  {
    SmithResult s = smith_normal_form(from_rows({{2, 0}, {0, 3}}));
    REQUIRE(s.rank == 2);
    CHECK(s.diagonal[0] == 1);
    CHECK(s.diagonal[1] == 6);
  }
  {
    SmithResult s = smith_normal_form(from_rows({{0, 0}, {0, 0}}));
    CHECK(s.rank == 0);
    CHECK(s.diagonal.empty());
  }
  {
    IntMatrix m(0, 3);
    SmithResult s = smith_normal_form(m);
    CHECK(s.rank == 0);
  }
}

TEST_CASE("minor-gcd oracle") {
  {
    MinorDivisors d =
        elementary_divisors_via_minors(from_rows({{2, 0}, {0, 3}}));
    REQUIRE(d.rank == 2);
    CHECK(d.divisors[0] == 1);
    CHECK(d.divisors[1] == 6);
  }
  {
    MinorDivisors d = elementary_divisors_via_minors(from_rows({{0}}));
    CHECK(d.rank == 0);
  }
  CHECK_THROWS_AS(elementary_divisors_via_minors(IntMatrix(40, 40), 1000),
                  error);
}

TEST_CASE("snf agrees with the minor oracle on 500 random matrices") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    IntMatrix m = random_matrix(rng, dim(rng), dim(rng), 9);
    SmithResult s = smith_normal_form(m);
    CHECK(snf_valid(m, s));
    MinorDivisors d = elementary_divisors_via_minors(m);
    REQUIRE(s.rank == d.rank);
    for (std::size_t i = 0; i < s.rank; ++i)
      CHECK(s.diagonal[i] == d.divisors[i]);
  }
}

TEST_CASE("snf invariant under unimodular fuzz") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<std::size_t> dim(2, 4);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_matrix(rng, dim(rng), dim(rng), 9);
    SmithResult base = smith_normal_form(m);
    IntMatrix f = m;
    for (int move = 0; move < 20; ++move) {
      std::uniform_int_distribution<std::size_t> ri(0, f.rows - 1);
      std::uniform_int_distribution<std::size_t> ci(0, f.cols - 1);
      switch (rng() % 3) {
        case 0: {  // row swap
          std::size_t a = ri(rng), b = ri(rng);
          for (std::size_t j = 0; j < f.cols; ++j)
            std::swap(f.at(a, j), f.at(b, j));
          break;
        }
        case 1: {  // add multiple of another row
          std::size_t a = ri(rng), b = ri(rng);
          if (a == b) break;
          long k = coef(rng);
          for (std::size_t j = 0; j < f.cols; ++j)
            f.at(a, j) += k * f.at(b, j);
          break;
        }
        default: {  // column ops
          std::size_t a = ci(rng), b = ci(rng);
          if (a == b) {
            for (std::size_t i = 0; i < f.rows; ++i)
              f.at(i, a) = -f.at(i, a);
            break;
          }
          long k = coef(rng);
          for (std::size_t i = 0; i < f.rows; ++i)
            f.at(i, a) += k * f.at(i, b);
          break;
        }
      }
    }
    SmithResult fuzz = smith_normal_form(f);
    CHECK(base.rank == fuzz.rank);
    CHECK(base.diagonal == fuzz.diagonal);
  }
}

TEST_CASE("content and primitive part") {
  {
    LaurentPoly f = poly({{-1, 2}, {1, 4}});  // 2x^-1 + 4x
    CHECK(content(f) == 2);
    CHECK(primitive_part(f) == poly({{0, 1}, {2, 2}}));  // 1 + 2x^2
  }
  {
    LaurentPoly f = poly({{3, 1}});  // x^3
    CHECK(content(f) == 1);
    CHECK(primitive_part(f) == poly({{0, 1}}));
  }
  CHECK(content(LaurentPoly{}) == 0);
  CHECK(primitive_part(LaurentPoly{}).zero());

  // product of primitives is primitive
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    LaurentPoly f, g;
    for (int k = 0; k < 4; ++k) {
      f.set(k, c(rng));
      g.set(k, c(rng));
    }
    if (f.zero() || g.zero()) continue;
    LaurentPoly fp = primitive_part(f), gp = primitive_part(g);
    CHECK(content(fp * gp) == 1);
  }
}

TEST_CASE("laurent gcd") {
  LaurentPoly x2p1 = poly({{2, 1}, {0, 1}});
  LaurentPoly two = poly({{0, 2}});
  CHECK(laurent_gcd({x2p1, two}) == poly({{0, 1}}));
  {
    LaurentPoly f = poly({{-2, 2}, {0, 4}});
    CHECK(laurent_gcd({f, f}) == laurent_canonical(f));
  }
  CHECK_THROWS_AS(laurent_gcd({LaurentPoly{}, LaurentPoly{}}), error);

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> c(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    LaurentPoly g, h1, h2;
    for (int k = 0; k < 3; ++k) {
      g.set(k, c(rng));
      h1.set(k, c(rng));
      h2.set(k, c(rng));
    }
    if (g.zero() || h1.zero() || h2.zero()) continue;
    g = primitive_part(g);
    LaurentPoly d = laurent_gcd({g * h1, g * h2});
    // g divides the gcd, and the gcd divides both inputs
    CHECK(laurent_divides(g, d));
    CHECK(laurent_divides(d, g * h1));
    CHECK(laurent_divides(d, g * h2));
  }
}

TEST_CASE("laurent elementary divisors") {
  {
    // column matrix [[x^2+1],[2]]: the divisors do not see the difference
    LaurentMatrix m(2, 1);
    m.at(0, 0) = poly({{2, 1}, {0, 1}});
    m.at(1, 0) = poly({{0, 2}});
    LaurentDivisors d = laurent_elementary_divisors(m);
    REQUIRE(d.rank == 1);
    CHECK(d.divisors[0] == poly({{0, 1}}));
  }
  {
    LaurentMatrix m(1, 1);
    m.at(0, 0) = poly({{1, 1}, {0, -1}});  // x - 1
    LaurentDivisors d = laurent_elementary_divisors(m);
    REQUIRE(d.rank == 1);
    CHECK(d.divisors[0] == laurent_canonical(poly({{1, 1}, {0, -1}})));
  }
  {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> c(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
      LaurentPoly f, g;
      for (int k = 0; k < 3; ++k) {
        f.set(k, c(rng));
        g.set(k, c(rng));
      }
      if (f.zero() || g.zero()) continue;
      f = primitive_part(f);
      LaurentMatrix m(2, 2);
      m.at(0, 0) = f;
      m.at(1, 1) = f * g;
      LaurentDivisors d = laurent_elementary_divisors(m);
      REQUIRE(d.rank == 2);
      CHECK(laurent_divides(d.divisors[0], f));
      CHECK(laurent_divides(d.divisors[0], laurent_canonical(f * g)));
      CHECK(laurent_divides(f, d.divisors[1]));
    }
  }
}

TEST_CASE("exact division guards") {
  LaurentPoly x = poly({{1, 1}});
  LaurentPoly xp1 = poly({{1, 1}, {0, 1}});
  CHECK(laurent_div_exact(xp1 * xp1, xp1) == xp1);
  CHECK_THROWS_AS(laurent_div_exact(poly({{0, 1}}), xp1), error);
  CHECK(laurent_div_exact(x, x) == poly({{0, 1}}));
}

TEST_CASE("polynomial text format") {
  LaurentPoly f = poly({{-2, 3}, {1, 1}, {3, -1}});
  CHECK(f.str() == "3x^-2 + x + -1x^3");
  CHECK(LaurentPoly{}.str() == "0");
}
