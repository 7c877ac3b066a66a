#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "ct/words.hpp"

namespace ct {

// Dense matrix of arbitrary-precision integers.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<mpz_class> a;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  mpz_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }

  static IntMatrix identity(std::size_t n);
  bool operator==(const IntMatrix&) const = default;
};

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
mpz_class mat_det(const IntMatrix& m);

// left * m * right = diag(d_1..d_s, 0...) with d_i > 0 and d_i | d_{i+1};
// left and right are unimodular.
struct SmithResult {
  std::vector<mpz_class> diagonal;  // the s nonzero entries
  std::size_t rank = 0;
  IntMatrix left, right;
};
SmithResult smith_normal_form(const IntMatrix& m);

// Elementary divisors from gcds of k x k minors; the independent route.
// Throws when C(rows,k)*C(cols,k) would exceed the guard for some k.
struct MinorDivisors {
  std::vector<mpz_class> divisors;
  std::size_t rank = 0;
};
MinorDivisors elementary_divisors_via_minors(const IntMatrix& m,
                                             unsigned long guard = 1000000);

// Torsion coefficients (> 1, divisibility chain) and free rank.
struct AbelianInvariants {
  std::vector<mpz_class> torsion;
  std::size_t betti = 0;

  bool operator==(const AbelianInvariants&) const = default;
};

// Integer Laurent polynomial: exponent -> nonzero coefficient.
struct LaurentPoly {
  std::map<int, mpz_class> c;

  LaurentPoly() = default;
  static LaurentPoly constant(long v);
  static LaurentPoly monomial(long coeff, int exp);

  bool zero() const { return c.empty(); }
  void set(int exp, mpz_class v);
  mpz_class coeff(int exp) const;
  int min_exp() const;
  int max_exp() const;

  bool operator==(const LaurentPoly&) const = default;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;

  std::string str() const;  // "3x^-2 + x + -1x^3"
};

// gcd of the coefficients (0 for the zero polynomial).
mpz_class content(const LaurentPoly& f);

// The ordinary polynomial q with f = sign * content * x^n * q, having
// nonzero constant term, positive leading coefficient and coefficient gcd 1.
// primitive_part(0) = 0.
LaurentPoly primitive_part(const LaurentPoly& f);

// content * primitive_part: the canonical associate under +-x^n.
LaurentPoly laurent_canonical(const LaurentPoly& f);

// Exact division; throws when the division does not come out even.
LaurentPoly laurent_div_exact(const LaurentPoly& f, const LaurentPoly& g);
bool laurent_divides(const LaurentPoly& g, const LaurentPoly& f);

// Greatest common divisor, canonical form. All-zero input is an error.
LaurentPoly laurent_gcd(const std::vector<LaurentPoly>& fs);

struct LaurentMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<LaurentPoly> a;

  LaurentMatrix() = default;
  LaurentMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  LaurentPoly& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const LaurentPoly& at(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }
};

// Elementary divisors d_k = delta^(k) / delta^(k-1) with delta^(k) the gcd
// of all k x k minors, everything canonicalized.
struct LaurentDivisors {
  std::vector<LaurentPoly> divisors;
  std::size_t rank = 0;
};
LaurentDivisors laurent_elementary_divisors(const LaurentMatrix& m,
                                            unsigned long guard = 1000000);

}  // namespace ct
