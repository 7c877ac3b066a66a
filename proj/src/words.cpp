#include "ct/words.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ct {

Word Word::inverse() const {
  Word r;
  r.ls.reserve(ls.size());
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) r.ls.push_back(inv(*it));
  return r;
}

Word& Word::operator*=(const Word& w) {
  ls.insert(ls.end(), w.ls.begin(), w.ls.end());
  return *this;
}

int Word::max_gen() const {
  int m = 0;
  for (Letter l : ls) m = std::max(m, gen_of(l));
  return m;
}

Word word_from(std::initializer_list<Letter> ls) {
  return Word(std::vector<Letter>(ls));
}

Word free_reduce(const Word& w) {
  Word out;
  out.ls.reserve(w.ls.size());
  for (Letter l : w.ls) {
    if (l == 0) throw error("zero is not a letter");
    if (!out.ls.empty() && out.ls.back() == inv(l))
      out.ls.pop_back();
    else
      out.ls.push_back(l);
  }
  return out;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.ls.size(); ++i)
    if (w.ls[i] == inv(w.ls[i - 1])) return false;
  return true;
}

namespace {

std::size_t canonical_offset(const std::vector<Letter>& ls) {
  const std::size_t n = ls.size();
  std::size_t best = 0;
  for (std::size_t cand = 1; cand < n; ++cand) {
    for (std::size_t k = 0; k < n; ++k) {
      Letter a = ls[(cand + k) % n], b = ls[(best + k) % n];
      if (a == b) continue;
      if (letter_less(a, b)) best = cand;
      break;
    }
  }
  return best;
}

}  // namespace

CyclicWord canonical_rotation(std::vector<Letter> ls) {
  CyclicWord cw;
  if (ls.empty()) return cw;
  const std::size_t n = ls.size();
  std::size_t best = canonical_offset(ls);
  cw.ls.reserve(n);
  for (std::size_t k = 0; k < n; ++k) cw.ls.push_back(ls[(best + k) % n]);
  return cw;
}

CyclicReduction cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t i = 0, j = r.ls.size();
  while (j - i >= 2 && r.ls[i] == inv(r.ls[j - 1])) {
    ++i;
    --j;
  }
  CyclicReduction out;
  out.conjugator.ls.assign(r.ls.begin(), r.ls.begin() + i);
  std::vector<Letter> core(r.ls.begin() + i, r.ls.begin() + j);
  if (!core.empty()) {
    // Rotating the core conjugates it by its rotated-out prefix; fold that
    // prefix into the conjugator so w = conj * core * conj^-1 stays exact.
    std::size_t off = canonical_offset(core);
    out.conjugator.ls.insert(out.conjugator.ls.end(), core.begin(),
                             core.begin() + off);
    std::rotate(core.begin(), core.begin() + off, core.end());
  }
  out.core.ls = std::move(core);
  return out;
}

bool conjugate_in_free(const Word& a, const Word& b) {
  return cyclic_reduce(a).core == cyclic_reduce(b).core;
}

long CyclicOrders::order(int gen) const {
  if (gen < 1 || static_cast<std::size_t>(gen) > orders.size())
    throw error("generator index outside the declared alphabet");
  return orders[gen - 1];
}

void CyclicOrders::check(int max_gen) const {
  if (static_cast<std::size_t>(max_gen) > orders.size())
    throw error("word uses generators beyond the declared orders");
  for (long a : orders)
    if (a == 1 || a < 0) throw error("cyclic orders must be 0 or >= 2");
}

namespace {

struct Syllable {
  int gen;
  long exp;  // nonzero
};

// Reduce exponent mod the order into [0, a); returns the syllable list of
// the normal form. Exponents of infinite-order generators stay unchanged.
std::vector<Syllable> syllables_mod(const Word& w, const CyclicOrders& orders) {
  std::vector<Syllable> st;
  auto norm = [&](int gen, long e) {
    long a = orders.order(gen);
    if (a == 0) return e;
    e %= a;
    if (e < 0) e += a;
    return e;
  };
  for (Letter l : w.ls) {
    int g = gen_of(l);
    long e = sign_of(l);
    if (!st.empty() && st.back().gen == g) {
      st.back().exp = norm(g, st.back().exp + e);
      if (st.back().exp == 0) st.pop_back();
    } else {
      e = norm(g, e);
      if (e != 0) st.push_back({g, e});
    }
    // A pop can bring equal-generator syllables together; merge greedily.
    while (st.size() >= 2) {
      auto& a = st[st.size() - 2];
      auto& b = st.back();
      if (a.gen != b.gen) break;
      a.exp = norm(a.gen, a.exp + b.exp);
      st.pop_back();
      if (st.back().exp == 0) st.pop_back();
    }
  }
  return st;
}

Word expand(const std::vector<Syllable>& sy) {
  Word out;
  for (const auto& s : sy) {
    Letter l = s.exp > 0 ? s.gen : -s.gen;
    for (long k = 0; k < std::abs(s.exp); ++k) out.ls.push_back(l);
  }
  return out;
}

}  // namespace

Word normal_form_cyclic_product(const Word& w, const CyclicOrders& orders) {
  orders.check(w.max_gen());
  return expand(syllables_mod(w, orders));
}

bool conjugate_in_cyclic_product(const Word& a, const Word& b,
                                 const CyclicOrders& orders) {
  orders.check(std::max(a.max_gen(), b.max_gen()));
  auto cyclic = [&](const Word& w) {
    std::vector<Syllable> sy = syllables_mod(w, orders);
    // Merge first/last syllables of the same generator until the sequence is
    // cyclically alternating.
    auto norm = [&](int gen, long e) {
      long x = orders.order(gen);
      if (x == 0) return e;
      e %= x;
      if (e < 0) e += x;
      return e;
    };
    while (sy.size() >= 2 && sy.front().gen == sy.back().gen) {
      long e = norm(sy.front().gen, sy.front().exp + sy.back().exp);
      sy.pop_back();
      if (e == 0)
        sy.erase(sy.begin());
      else
        sy.front().exp = e;
    }
    // Rotation-minimal representative of the syllable cycle.
    auto key = [](const Syllable& s) {
      return std::pair<int, long>(s.gen, s.exp);
    };
    std::size_t n = sy.size(), best = 0;
    for (std::size_t cand = 1; cand < n; ++cand)
      for (std::size_t k = 0; k < n; ++k) {
        auto x = key(sy[(cand + k) % n]), y = key(sy[(best + k) % n]);
        if (x == y) continue;
        if (x < y) best = cand;
        break;
      }
    std::vector<Syllable> rot;
    rot.reserve(n);
    for (std::size_t k = 0; k < n; ++k) rot.push_back(sy[(best + k) % n]);
    return rot;
  };
  auto x = cyclic(a), y = cyclic(b);
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].gen != y[i].gen || x[i].exp != y[i].exp) return false;
  return true;
}

Word normal_form_torus_type(const Word& w, long a1, long a2) {
  if (a1 < 2 || a2 < 2) throw error("torus-type orders must be >= 2");
  if (w.max_gen() > 2) throw error("torus-type words use generators 1 and 2");
  // S1^a1 = S2^-a2 is central; overflow of either block feeds the central
  // exponent k of S1^(k*a1).
  std::vector<Syllable> st;
  long central = 0;
  auto norm = [&](int gen, long e) {
    long a = gen == 1 ? a1 : a2;
    long q = e >= 0 ? e / a : -((-e + a - 1) / a);
    long r = e - q * a;
    central += gen == 1 ? q : -q;
    return r;
  };
  for (Letter l : w.ls) {
    int g = gen_of(l);
    long e = sign_of(l);
    if (!st.empty() && st.back().gen == g) {
      st.back().exp = norm(g, st.back().exp + e);
      if (st.back().exp == 0) st.pop_back();
    } else {
      e = norm(g, e);
      if (e != 0) st.push_back({g, e});
    }
    while (st.size() >= 2) {
      auto& a = st[st.size() - 2];
      auto& b = st.back();
      if (a.gen != b.gen) break;
      a.exp = norm(a.gen, a.exp + b.exp);
      st.pop_back();
      if (st.back().exp == 0) st.pop_back();
    }
  }
  Word out = expand(st);
  Letter l = central > 0 ? 1 : -1;
  for (long k = 0; k < std::abs(central) * a1; ++k) out.ls.push_back(l);
  return out;
}

Word substitute(const Word& w, int gen, const Word& image) {
  Word out;
  Word image_inv = image.inverse();
  for (Letter l : w.ls) {
    if (gen_of(l) != gen) {
      out.ls.push_back(l);
    } else {
      const Word& piece = l > 0 ? image : image_inv;
      out.ls.insert(out.ls.end(), piece.ls.begin(), piece.ls.end());
    }
  }
  return free_reduce(out);
}

long exponent_sum(const Word& w, int gen) {
  long s = 0;
  for (Letter l : w.ls)
    if (gen_of(l) == gen) s += sign_of(l);
  return s;
}

}  // namespace ct
