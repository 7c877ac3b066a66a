#include "ct/matrices.hpp"

#include <algorithm>
#include <sstream>

namespace ct {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw error("matrix size mismatch");
  IntMatrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

mpz_class mat_det(const IntMatrix& m) {
  if (m.rows != m.cols) throw error("determinant of non-square matrix");
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  // Fraction-free Gaussian elimination (Bareiss).
  IntMatrix w = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && w.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        w.at(i, j) = q;
      }
    prev = w.at(k, k);
  }
  return sign * w.at(n - 1, n - 1);
}

namespace {

struct Worker {
  IntMatrix m, left, right;

  explicit Worker(const IntMatrix& in)
      : m(in),
        left(IntMatrix::identity(in.rows)),
        right(IntMatrix::identity(in.cols)) {}

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
    for (std::size_t j = 0; j < left.cols; ++j)
      std::swap(left.at(a, j), left.at(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
    for (std::size_t i = 0; i < right.rows; ++i)
      std::swap(right.at(i, a), right.at(i, b));
  }
  void add_row(std::size_t dst, std::size_t src, const mpz_class& f) {
    for (std::size_t j = 0; j < m.cols; ++j) m.at(dst, j) += f * m.at(src, j);
    for (std::size_t j = 0; j < left.cols; ++j)
      left.at(dst, j) += f * left.at(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const mpz_class& f) {
    for (std::size_t i = 0; i < m.rows; ++i) m.at(i, dst) += f * m.at(i, src);
    for (std::size_t i = 0; i < right.rows; ++i)
      right.at(i, dst) += f * right.at(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
    for (std::size_t j = 0; j < left.cols; ++j) left.at(r, j) = -left.at(r, j);
  }

  // Euclid at corner t: afterwards at(t,t) > 0 and row/column t are clear
  // outside the corner. Assumes some nonzero entry is already at (t,t).
  void clear_corner(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(),
                   m.at(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (m.at(i, t) != 0) {
          swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(),
                   m.at(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (m.at(t, j) != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (clean) break;
    }
    if (m.at(t, t) < 0) negate_row(t);
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& input) {
  Worker w(input);
  const std::size_t n = std::min(input.rows, input.cols);
  std::size_t t = 0;

  for (; t < n; ++t) {
    // Pivot: smallest nonzero absolute value, rows before columns,
    // ties by lowest index.
    std::size_t pi = t, pj = t;
    bool found = false;
    mpz_class best;
    for (std::size_t i = t; i < w.m.rows; ++i)
      for (std::size_t j = t; j < w.m.cols; ++j) {
        if (w.m.at(i, j) == 0) continue;
        mpz_class v = abs(w.m.at(i, j));
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    w.clear_corner(t);
  }

  // Repair the divisibility chain. Rows and columns i, j are zero outside
  // the diagonal, so the operations stay inside the 2x2 block.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < t; ++i)
      for (std::size_t j = i + 1; j < t; ++j) {
        if (w.m.at(j, j) % w.m.at(i, i) == 0) continue;
        changed = true;
        w.add_col(i, j, 1);  // block is now [[a,0],[b,b]]
        // gcd of the two entries in column i lands at (i,i).
        while (w.m.at(j, i) != 0) {
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), w.m.at(i, i).get_mpz_t(),
                     w.m.at(j, i).get_mpz_t());
          w.add_row(i, j, -q);
          w.swap_rows(i, j);
        }
        // Fill-in at (i,j) is a multiple of the old d_j, hence of the gcd.
        if (w.m.at(i, j) != 0) {
          mpz_class q = w.m.at(i, j) / w.m.at(i, i);
          if (q * w.m.at(i, i) != w.m.at(i, j))
            throw std::logic_error("snf chain repair not exact");
          w.add_col(j, i, -q);
        }
        if (w.m.at(i, i) < 0) w.negate_row(i);
        if (w.m.at(j, j) < 0) w.negate_row(j);
        if (w.m.at(i, j) != 0 || w.m.at(j, i) != 0)
          throw std::logic_error("snf chain repair left off-diagonal");
      }
  }

  SmithResult res;
  res.rank = t;
  for (std::size_t i = 0; i < t; ++i) res.diagonal.push_back(w.m.at(i, i));
  res.left = std::move(w.left);
  res.right = std::move(w.right);
  return res;
}

namespace {

unsigned long binom_guarded(std::size_t n, std::size_t k,
                            unsigned long guard) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  if (b > guard) return guard + 1;
  return b.get_ui();
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < n) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

MinorDivisors elementary_divisors_via_minors(const IntMatrix& m,
                                             unsigned long guard) {
  MinorDivisors out;
  const std::size_t n = std::min(m.rows, m.cols);
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    unsigned long cr = binom_guarded(m.rows, k, guard);
    unsigned long cc = binom_guarded(m.cols, k, guard);
    if (cr > guard || cc > guard || cr > guard / cc)
      throw error("minor enumeration guard exceeded");
    mpz_class g = 0;
    std::vector<std::size_t> ri(k);
    for (std::size_t i = 0; i < k; ++i) ri[i] = i;
    do {
      std::vector<std::size_t> ci(k);
      for (std::size_t i = 0; i < k; ++i) ci[i] = i;
      do {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            sub.at(i, j) = m.at(ri[i], ci[j]);
        mpz_class d = mat_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (next_subset(ci, m.cols));
    } while (next_subset(ri, m.rows));
    if (g == 0) break;
    out.divisors.push_back(g / prev);
    prev = g;
    out.rank = k;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Laurent polynomials

LaurentPoly LaurentPoly::constant(long v) {
  LaurentPoly p;
  if (v != 0) p.c[0] = v;
  return p;
}

LaurentPoly LaurentPoly::monomial(long coeff, int exp) {
  LaurentPoly p;
  if (coeff != 0) p.c[exp] = coeff;
  return p;
}

void LaurentPoly::set(int exp, mpz_class v) {
  if (v == 0)
    c.erase(exp);
  else
    c[exp] = std::move(v);
}

mpz_class LaurentPoly::coeff(int exp) const {
  auto it = c.find(exp);
  return it == c.end() ? mpz_class(0) : it->second;
}

int LaurentPoly::min_exp() const {
  if (c.empty()) throw error("zero polynomial has no degree");
  return c.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (c.empty()) throw error("zero polynomial has no degree");
  return c.rbegin()->first;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& kv : o.c) r.set(kv.first, r.coeff(kv.first) + kv.second);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& kv : o.c) r.set(kv.first, r.coeff(kv.first) - kv.second);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& kv : c) r.c[kv.first] = -kv.second;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& x : c)
    for (const auto& y : o.c)
      r.set(x.first + y.first, r.coeff(x.first + y.first) + x.second * y.second);
  return r;
}

std::string LaurentPoly::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, v] : c) {
    if (!first) os << " + ";
    first = false;
    if (e == 0) {
      os << v;
      continue;
    }
    if (v != 1) os << v;
    os << "x";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

mpz_class content(const LaurentPoly& f) {
  mpz_class g = 0;
  for (const auto& kv : f.c)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), kv.second.get_mpz_t());
  return g;
}

LaurentPoly primitive_part(const LaurentPoly& f) {
  if (f.zero()) return f;
  mpz_class cont = content(f);
  int shift = f.min_exp();
  LaurentPoly p;
  for (const auto& [e, v] : f.c) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), cont.get_mpz_t());
    p.c[e - shift] = q;
  }
  if (p.c.rbegin()->second < 0) p = -p;
  return p;
}

LaurentPoly laurent_canonical(const LaurentPoly& f) {
  if (f.zero()) return f;
  LaurentPoly p = primitive_part(f);
  mpz_class cont = content(f);
  LaurentPoly r;
  for (const auto& [e, v] : p.c) r.c[e] = v * cont;
  return r;
}

LaurentPoly laurent_div_exact(const LaurentPoly& f, const LaurentPoly& g) {
  if (g.zero()) throw error("division by zero polynomial");
  if (f.zero()) return f;
  LaurentPoly rem = f, quot;
  const int gspan = g.max_exp() - g.min_exp();
  const mpz_class& glead = g.c.rbegin()->second;
  while (!rem.zero()) {
    if (rem.max_exp() - rem.min_exp() < gspan)
      throw error("polynomial division is not exact");
    int e = rem.max_exp();
    mpz_class q = rem.c.rbegin()->second / glead;
    if (q * glead != rem.c.rbegin()->second)
      throw error("polynomial division is not exact");
    LaurentPoly t = LaurentPoly::monomial(1, e - g.max_exp());
    t.c[e - g.max_exp()] = q;
    quot = quot + t;
    rem = rem - t * g;
    if (!rem.zero() && rem.max_exp() >= e)
      throw std::logic_error("division failed to reduce degree");
  }
  return quot;
}

bool laurent_divides(const LaurentPoly& g, const LaurentPoly& f) {
  if (f.zero()) return true;
  if (g.zero()) return false;
  try {
    laurent_div_exact(f, g);
    return true;
  } catch (const error&) {
    return false;
  }
}

namespace {

// Dense rational polynomial for the Euclidean route.
using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qpoly_of(const LaurentPoly& f) {
  LaurentPoly p = primitive_part(f);
  QPoly q(p.max_exp() + 1, mpq_class(0));
  for (const auto& [e, v] : p.c) q[e] = mpq_class(v);
  return q;
}

QPoly qmod(QPoly a, const QPoly& b) {
  qtrim(a);
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class f = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.back() = 0;
    qtrim(a);
  }
  return a;
}

LaurentPoly from_qpoly(const QPoly& q) {
  mpz_class lcm = 1;
  for (const auto& v : q)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
  LaurentPoly p;
  for (std::size_t i = 0; i < q.size(); ++i) {
    mpq_class scaled = q[i] * lcm;
    if (scaled != 0) p.c[static_cast<int>(i)] = scaled.get_num();
  }
  return primitive_part(p);
}

}  // namespace

LaurentPoly laurent_gcd(const std::vector<LaurentPoly>& fs) {
  std::vector<LaurentPoly> nz;
  for (const auto& f : fs)
    if (!f.zero()) nz.push_back(f);
  if (nz.empty()) throw error("gcd of all-zero polynomials");

  mpz_class a = 0;
  for (const auto& f : nz)
    mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), content(f).get_mpz_t());

  QPoly d = qpoly_of(nz[0]);
  for (std::size_t i = 1; i < nz.size() && d.size() > 1; ++i) {
    QPoly b = qpoly_of(nz[i]);
    while (!b.empty()) {
      QPoly r = qmod(d, b);
      d = b;
      b = r;
    }
  }
  LaurentPoly prim = from_qpoly(d);
  LaurentPoly r;
  for (const auto& [e, v] : prim.c) r.c[e] = v * a;
  return r;
}

namespace {

LaurentPoly laurent_det(const LaurentMatrix& m,
                        const std::vector<std::size_t>& ri,
                        const std::vector<std::size_t>& ci) {
  // Laplace expansion; the enumeration guard keeps minors tiny.
  if (ri.empty()) return LaurentPoly::constant(1);
  if (ri.size() == 1) return m.at(ri[0], ci[0]);
  LaurentPoly det;
  for (std::size_t j = 0; j < ci.size(); ++j) {
    const LaurentPoly& e = m.at(ri[0], ci[j]);
    if (e.zero()) continue;
    std::vector<std::size_t> ri2(ri.begin() + 1, ri.end());
    std::vector<std::size_t> ci2;
    for (std::size_t k = 0; k < ci.size(); ++k)
      if (k != j) ci2.push_back(ci[k]);
    LaurentPoly sub = laurent_det(m, ri2, ci2) * e;
    det = (j % 2 == 0) ? det + sub : det - sub;
  }
  return det;
}

}  // namespace

LaurentDivisors laurent_elementary_divisors(const LaurentMatrix& m,
                                            unsigned long guard) {
  LaurentDivisors out;
  const std::size_t n = std::min(m.rows, m.cols);
  LaurentPoly prev = LaurentPoly::constant(1);
  for (std::size_t k = 1; k <= n; ++k) {
    unsigned long cr = binom_guarded(m.rows, k, guard);
    unsigned long cc = binom_guarded(m.cols, k, guard);
    if (cr > guard || cc > guard || cr > guard / cc)
      throw error("minor enumeration guard exceeded");
    std::vector<LaurentPoly> minors;
    std::vector<std::size_t> ri(k);
    for (std::size_t i = 0; i < k; ++i) ri[i] = i;
    do {
      std::vector<std::size_t> ci(k);
      for (std::size_t i = 0; i < k; ++i) ci[i] = i;
      do {
        LaurentPoly d = laurent_det(m, ri, ci);
        if (!d.zero()) minors.push_back(d);
      } while (next_subset(ci, m.cols));
    } while (next_subset(ri, m.rows));
    if (minors.empty()) break;
    LaurentPoly g = laurent_gcd(minors);
    out.divisors.push_back(laurent_canonical(laurent_div_exact(g, prev)));
    prev = g;
    out.rank = k;
  }
  return out;
}

}  // namespace ct
