#include "ct/surfaces.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ct {

Graph1 SurfaceComplex::skeleton() const {
  Graph1 g;
  g.n_points = n_points;
  g.segs = segs;
  return g;
}

void SurfaceComplex::check_basic() const {
  Graph1 g = skeleton();
  g.check();
  for (const auto& f : faces) {
    if (f.empty()) throw error("face with empty boundary word");
    if (!is_closed_path(g, f))
      throw error("face boundary is not a closed path");
  }
}

SurfaceComplex polygon_complex(const Word& boundary) {
  SurfaceComplex c;
  c.n_points = 1;
  for (int s = 0; s < boundary.max_gen(); ++s) c.segs.push_back({0, 0});
  c.faces.push_back(boundary);
  return c;
}

namespace {

int letter_start(const SurfaceComplex& c, Letter l) {
  const auto& s = c.segs[gen_of(l) - 1];
  return l > 0 ? s.from : s.to;
}
int letter_end(const SurfaceComplex& c, Letter l) {
  const auto& s = c.segs[gen_of(l) - 1];
  return l > 0 ? s.to : s.from;
}

}  // namespace

ManifoldCert validate_manifold(const SurfaceComplex& c) {
  c.check_basic();
  if (c.n_points == 0) throw error("empty complex");
  Graph1 g = c.skeleton();
  if (!g.connected()) throw error("A.4: skeleton is not connected");

  ManifoldCert cert;
  // A.5 + A.6: each segment pair occurs exactly twice over all boundaries.
  std::vector<std::vector<FaceOccurrence>> occs(c.segs.size());
  for (std::size_t f = 0; f < c.faces.size(); ++f) {
    const Word& w = c.faces[f];
    for (std::size_t i = 0; i < w.ls.size(); ++i)
      occs[gen_of(w.ls[i]) - 1].push_back(
          {static_cast<int>(f), static_cast<int>(i)});
  }
  cert.occ.resize(c.segs.size());
  for (std::size_t s = 0; s < c.segs.size(); ++s) {
    if (occs[s].empty()) {
      std::ostringstream os;
      os << "A.5: segment " << s + 1 << " bounds no face";
      throw error(os.str());
    }
    if (occs[s].size() != 2) {
      std::ostringstream os;
      os << "A.6: segment " << s + 1 << " is traversed " << occs[s].size()
         << " times";
      throw error(os.str());
    }
    cert.occ[s] = {occs[s][0], occs[s][1]};
  }

  // A.7 via the link of each point. Corner (f,i) joins the directed
  // segments inv(w[i]) and w[i+1], both emanating from the end of w[i];
  // every directed segment owns exactly two corner slots, and the slots
  // must chain into a single cycle per point.
  struct SlotRef {
    Letter other;
    FaceOccurrence corner;
    bool other_is_second;  // the partner sits on the corner's y side
  };
  std::map<std::pair<int, Letter>, std::vector<SlotRef>> slots;
  for (std::size_t f = 0; f < c.faces.size(); ++f) {
    const Word& w = c.faces[f];
    const int n = static_cast<int>(w.ls.size());
    for (int i = 0; i < n; ++i) {
      Letter x = w.ls[i];
      Letter y = w.ls[(i + 1) % n];
      int p = letter_end(c, x);
      FaceOccurrence corner{static_cast<int>(f), i};
      slots[{p, inv(x)}].push_back({y, corner, true});
      slots[{p, y}].push_back({inv(x), corner, false});
    }
  }
  for (const auto& [key, v] : slots)
    if (v.size() != 2) {
      std::ostringstream os;
      os << "A.7: directed segment " << key.second << " at point "
         << key.first << " sits in " << v.size() << " corners";
      throw error(os.str());
    }

  cert.stars.assign(c.n_points, {});
  for (int p = 0; p < c.n_points; ++p) {
    std::vector<Letter> emanating;
    for (std::size_t s = 0; s < c.segs.size(); ++s) {
      if (c.segs[s].from == p) emanating.push_back(static_cast<int>(s) + 1);
      if (c.segs[s].to == p) emanating.push_back(-(static_cast<int>(s) + 1));
    }
    if (emanating.empty()) {
      std::ostringstream os;
      os << "A.7: isolated point " << p;
      throw error(os.str());
    }
    Letter start = emanating.front();
    std::vector<StarEntry> star;
    Letter cur = start;
    int exit_slot = 0;
    for (;;) {
      const SlotRef ref = slots.at({p, cur})[exit_slot];
      Letter nxt = ref.other;
      const auto& nsl = slots.at({p, nxt});
      // Entry slot at the next vertex: the slot carrying this corner; a
      // self-loop corner fills both slots, so take the one not just used.
      int entry;
      if (nsl[0].corner == ref.corner && nsl[1].corner == ref.corner)
        entry = 1 - exit_slot;
      else
        entry = nsl[0].corner == ref.corner ? 0 : 1;
      star.push_back({nxt, ref.corner, ref.other_is_second});
      cur = nxt;
      exit_slot = 1 - entry;
      if (cur == start && exit_slot == 0) break;
      if (star.size() > emanating.size()) break;
    }
    // The walk ends on the start vertex; rotate it to the front.
    if (star.empty() || star.back().seg != start ||
        star.size() != emanating.size()) {
      std::ostringstream os;
      os << "A.7: star at point " << p
         << " does not close over all segments";
      throw error(os.str());
    }
    std::rotate(star.begin(), star.end() - 1, star.end());
    cert.stars[p] = star;
  }
  return cert;
}

std::vector<SurfaceComplex> split_components(const SurfaceComplex& c) {
  // Union points through segments.
  std::vector<int> comp(c.n_points, -1);
  int n_comp = 0;
  for (int seed = 0; seed < c.n_points; ++seed) {
    if (comp[seed] >= 0) continue;
    comp[seed] = n_comp;
    std::vector<int> stack = {seed};
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      for (const auto& s : c.segs)
        for (int q : {s.from == p ? s.to : -1, s.to == p ? s.from : -1})
          if (q >= 0 && comp[q] < 0) {
            comp[q] = n_comp;
            stack.push_back(q);
          }
    }
    ++n_comp;
  }
  std::vector<SurfaceComplex> parts(n_comp);
  std::vector<int> point_local(c.n_points);
  for (int p = 0; p < c.n_points; ++p)
    point_local[p] = parts[comp[p]].n_points++;
  std::vector<int> seg_local(c.segs.size()), seg_comp(c.segs.size());
  for (std::size_t s = 0; s < c.segs.size(); ++s) {
    int k = comp[c.segs[s].from];
    seg_comp[s] = k;
    seg_local[s] = static_cast<int>(parts[k].segs.size());
    parts[k].segs.push_back(
        {point_local[c.segs[s].from], point_local[c.segs[s].to]});
  }
  for (const auto& f : c.faces) {
    int k = comp[c.segs[gen_of(f.ls[0]) - 1].from];
    Word w;
    for (Letter l : f.ls) {
      if (seg_comp[gen_of(l) - 1] != k)
        throw std::logic_error("face crosses components");
      int local = seg_local[gen_of(l) - 1] + 1;
      w.ls.push_back(l > 0 ? local : -local);
    }
    parts[k].faces.push_back(w);
  }
  return parts;
}

long characteristic(const SurfaceComplex& c) {
  return -static_cast<long>(c.n_points) + static_cast<long>(c.segs.size()) -
         static_cast<long>(c.faces.size());
}

bool orientable(const SurfaceComplex& c, const ManifoldCert& cert) {
  // Face signs +-1; a segment traversed with signs s1,s2 in faces f1,f2
  // forces eps(f1)*s1 = -eps(f2)*s2.
  std::vector<int> eps(c.faces.size(), 0);
  for (std::size_t seed = 0; seed < c.faces.size(); ++seed) {
    if (eps[seed] != 0) continue;
    eps[seed] = 1;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t s = 0; s < c.segs.size(); ++s) {
        const auto& o = cert.occ[s];
        int f1 = o[0].face, f2 = o[1].face;
        int s1 = sign_of(c.faces[f1].ls[o[0].pos]);
        int s2 = sign_of(c.faces[f2].ls[o[1].pos]);
        if (f1 == f2) {
          if (s1 == s2) return false;
          continue;
        }
        if (eps[f1] != 0 && eps[f2] == 0) {
          eps[f2] = -eps[f1] * s1 * s2;
          changed = true;
        } else if (eps[f2] != 0 && eps[f1] == 0) {
          eps[f1] = -eps[f2] * s1 * s2;
          changed = true;
        } else if (eps[f1] != 0 && eps[f2] != 0) {
          if (eps[f1] * s1 != -eps[f2] * s2) return false;
        }
      }
    }
  }
  return true;
}

SurfaceComplex normal_form_complex(const NormalForm& nf) {
  if (nf.kind == NormalForm::kSphere ||
      (nf.kind == NormalForm::kOrientable && nf.genus == 0)) {
    SurfaceComplex c;
    c.n_points = 2;
    c.segs.push_back({0, 1});
    c.faces.push_back(word_from({1, -1}));
    return c;
  }
  bool orient = nf.kind == NormalForm::kOrientable;
  return polygon_complex(surface_relator(orient, nf.genus));
}

// ---------------------------------------------------------------------------
// Classification

namespace {

// Contracts the non-loop segment s (0-based): merges its endpoints, deletes
// the segment, removes its occurrences from all boundary words.
SurfaceComplex contract_segment(const SurfaceComplex& c, int s) {
  const int from = c.segs[s].from, to = c.segs[s].to;
  if (from == to) throw std::logic_error("contracting a loop");
  SurfaceComplex out;
  out.n_points = c.n_points - 1;
  auto pmap = [&](int p) {
    if (p == to) p = from;
    return p > to ? p - 1 : p;
  };
  for (std::size_t i = 0; i < c.segs.size(); ++i) {
    if (static_cast<int>(i) == s) continue;
    out.segs.push_back({pmap(c.segs[i].from), pmap(c.segs[i].to)});
  }
  auto smap = [&](Letter l) -> Letter {
    int gen = gen_of(l);
    int shifted = gen > s + 1 ? gen - 1 : gen;
    return l > 0 ? shifted : -shifted;
  };
  for (const auto& f : c.faces) {
    Word w;
    for (Letter l : f.ls)
      if (gen_of(l) != s + 1) w.ls.push_back(smap(l));
    out.faces.push_back(w);
  }
  return out;
}

// Fuses two distinct faces along a segment occurring once in each; the
// segment disappears.
SurfaceComplex fuse_faces(const SurfaceComplex& c, int seg,
                          const ManifoldCert& cert) {
  const auto& o = cert.occ[seg];
  int f1 = o[0].face, f2 = o[1].face;
  if (f1 == f2) throw std::logic_error("fusing a face with itself");
  Word a = c.faces[f1], b = c.faces[f2];
  int pos_a = o[0].pos, pos_b = o[1].pos;
  if (sign_of(a.ls[pos_a]) < 0) {
    int n = static_cast<int>(a.ls.size());
    a = a.inverse();
    pos_a = n - 1 - pos_a;
  }
  if (sign_of(b.ls[pos_b]) > 0) {
    int n = static_cast<int>(b.ls.size());
    b = b.inverse();
    pos_b = n - 1 - pos_b;
  }
  auto rotate = [](const Word& w, std::size_t first) {
    Word r;
    for (std::size_t k = 0; k < w.ls.size(); ++k)
      r.ls.push_back(w.ls[(first + k) % w.ls.size()]);
    return r;
  };
  Word ar = rotate(a, (pos_a + 1) % a.ls.size());  // ends with +seg
  Word br = rotate(b, pos_b);                      // starts with -seg
  Word fused;
  fused.ls.assign(ar.ls.begin(), ar.ls.end() - 1);
  fused.ls.insert(fused.ls.end(), br.ls.begin() + 1, br.ls.end());

  SurfaceComplex out;
  out.n_points = c.n_points;
  auto smap = [&](Letter l) -> Letter {
    int gen = gen_of(l);
    int shifted = gen > seg + 1 ? gen - 1 : gen;
    return l > 0 ? shifted : -shifted;
  };
  for (std::size_t i = 0; i < c.segs.size(); ++i)
    if (static_cast<int>(i) != seg) out.segs.push_back(c.segs[i]);
  for (std::size_t f = 0; f < c.faces.size(); ++f) {
    if (static_cast<int>(f) == f1 || static_cast<int>(f) == f2) continue;
    Word w;
    for (Letter l : c.faces[f].ls) w.ls.push_back(smap(l));
    out.faces.push_back(w);
  }
  Word w;
  for (Letter l : fused.ls) w.ls.push_back(smap(l));
  out.faces.push_back(w);
  return out;
}

// One neighbor move on a one-point one-face word: cut the cyclic word at c1
// and c2, bridge with a chord, fuse back along fuse_seg (1-based id), which
// the chord inherits.
Word split_fuse_word(const Word& w, std::size_t c1, std::size_t c2,
                     int fuse_seg) {
  const std::size_t n = w.ls.size();
  if (c1 == c2) throw std::logic_error("degenerate cut");
  auto chunk = [&](std::size_t a, std::size_t b) {
    Word r;
    for (std::size_t k = a; k != b; k = (k + 1) % n) r.ls.push_back(w.ls[k]);
    return r;
  };
  const int t = w.max_gen() + 1;
  Word f1 = chunk(c1, c2);
  f1.ls.push_back(-t);
  Word f2;
  f2.ls.push_back(t);
  f2 *= chunk(c2, c1);

  auto occ_in = [&](const Word& f) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < f.ls.size(); ++i)
      if (gen_of(f.ls[i]) == fuse_seg) v.push_back(i);
    return v;
  };
  if (occ_in(f1).size() != 1 || occ_in(f2).size() != 1)
    throw std::logic_error("cuts must separate the fused occurrences");

  Word a = f1, b = f2;
  if (sign_of(a.ls[occ_in(a)[0]]) < 0) a = a.inverse();
  if (sign_of(b.ls[occ_in(b)[0]]) > 0) b = b.inverse();
  std::size_t pa = occ_in(a)[0], pb = occ_in(b)[0];
  auto rotate = [](const Word& w0, std::size_t first) {
    Word r;
    for (std::size_t k = 0; k < w0.ls.size(); ++k)
      r.ls.push_back(w0.ls[(first + k) % w0.ls.size()]);
    return r;
  };
  Word ar = rotate(a, (pa + 1) % a.ls.size());
  Word br = rotate(b, pb);
  Word fused;
  fused.ls.assign(ar.ls.begin(), ar.ls.end() - 1);
  fused.ls.insert(fused.ls.end(), br.ls.begin() + 1, br.ls.end());
  for (Letter& l : fused.ls)
    if (gen_of(l) == t) l = l > 0 ? fuse_seg : -fuse_seg;
  if (fused.ls.size() != n) throw std::logic_error("move changed word length");
  return fused;
}

struct WordAnalysis {
  struct Pair {
    int pos1 = -1, pos2 = -1;
    int sign1 = 0, sign2 = 0;
    bool same_direction() const { return sign1 == sign2; }
  };
  std::vector<Pair> pairs;      // index = pair id - 1
  std::set<int> square_block;   // ids inside adjacent same-direction pairs
  std::set<int> comm_block;     // ids inside adjacent commutator blocks
  std::vector<int> square_pos;  // block start positions (deduplicated)
  std::vector<int> comm_pos;
};

WordAnalysis analyze(const Word& w) {
  WordAnalysis an;
  const int n = static_cast<int>(w.ls.size());
  an.pairs.resize(w.max_gen());
  for (int i = 0; i < n; ++i) {
    auto& p = an.pairs[gen_of(w.ls[i]) - 1];
    if (p.pos1 < 0) {
      p.pos1 = i;
      p.sign1 = sign_of(w.ls[i]);
    } else {
      p.pos2 = i;
      p.sign2 = sign_of(w.ls[i]);
    }
  }
  auto at = [&](int i) { return w.ls[((i % n) + n) % n]; };
  std::vector<bool> in_block(n, false);
  for (int i = 0; i < n; ++i) {
    if (in_block[i]) continue;
    if (n >= 4 && gen_of(at(i)) != gen_of(at(i + 1)) &&
        at(i + 2) == inv(at(i)) && at(i + 3) == inv(at(i + 1))) {
      bool fresh = true;
      for (int k = 0; k < 4; ++k)
        if (in_block[(i + k) % n]) fresh = false;
      if (fresh) {
        for (int k = 0; k < 4; ++k) in_block[(i + k) % n] = true;
        an.comm_block.insert(gen_of(at(i)));
        an.comm_block.insert(gen_of(at(i + 1)));
        an.comm_pos.push_back(i);
        continue;
      }
    }
    if (at(i) == at(i + 1) && !in_block[(i + 1) % n]) {
      in_block[i] = in_block[(i + 1) % n] = true;
      an.square_block.insert(gen_of(at(i)));
      an.square_pos.push_back(i);
    }
  }
  return an;
}

struct Classifier {
  SurfaceComplex work;
  std::vector<TraceStep> trace;
  long chi0 = 0;
  bool orient0 = false;

  void record(const std::string& move) {
    ManifoldCert cert = validate_manifold(work);
    long chi = characteristic(work);
    bool ori = orientable(work, cert);
    if (chi != chi0 || ori != orient0)
      throw std::logic_error("move changed chi or orientability");
    trace.push_back({move, chi, ori});
  }
};

}  // namespace

Classification classify(const SurfaceComplex& input) {
  ManifoldCert cert0 = validate_manifold(input);
  Classifier cl;
  cl.work = input;
  cl.chi0 = characteristic(input);
  cl.orient0 = orientable(input, cert0);

  auto finish_sphere = [&]() {
    if (cl.chi0 != -2 || !cl.orient0)
      throw std::logic_error("sphere detection with wrong invariants");
    return Classification{{NormalForm::kSphere, 0}, cl.trace};
  };

  // Stage 1: contract non-loop segments (a spanning tree) to one point.
  for (;;) {
    int target = -1;
    for (std::size_t s = 0; s < cl.work.segs.size(); ++s)
      if (cl.work.segs[s].from != cl.work.segs[s].to) {
        target = static_cast<int>(s);
        break;
      }
    if (target < 0) break;
    bool empties = false;
    for (const auto& f : cl.work.faces) {
      bool all_target = true;
      for (Letter l : f.ls)
        if (gen_of(l) != target + 1) all_target = false;
      if (all_target) empties = true;
    }
    if (empties) return finish_sphere();
    cl.work = contract_segment(cl.work, target);
    cl.record("contract");
  }

  // Stage 2: fuse faces to one.
  while (cl.work.faces.size() > 1) {
    ManifoldCert cert = validate_manifold(cl.work);
    int seg = -1;
    for (std::size_t s = 0; s < cl.work.segs.size(); ++s)
      if (cert.occ[s][0].face != cert.occ[s][1].face) {
        seg = static_cast<int>(s);
        break;
      }
    if (seg < 0)
      throw std::logic_error("multiple faces but no shared segment");
    if (cl.work.faces[cert.occ[seg][0].face].size() == 1 &&
        cl.work.faces[cert.occ[seg][1].face].size() == 1)
      return finish_sphere();
    cl.work = fuse_faces(cl.work, seg, cert);
    cl.record("fuse");
  }

  auto word = [&]() -> const Word& { return cl.work.faces[0]; };
  auto set_word = [&](const Word& w, const std::string& move) {
    cl.work = polygon_complex(w);
    cl.record(move);
  };

  // Collects one same-direction pair into an adjacent square; returns false
  // when the pair is not same-direction or already collected.
  auto collect_square_of = [&](int id) {
    WordAnalysis an = analyze(word());
    if (!an.pairs[id - 1].same_direction() || an.square_block.count(id))
      return false;
    Word w = word();
    if (an.pairs[id - 1].sign1 < 0)
      for (Letter& l : w.ls)
        if (gen_of(l) == id) l = -l;
    const auto pr = analyze(w).pairs[id - 1];
    w = split_fuse_word(w, pr.pos1, pr.pos2, id);
    set_word(w, "square");
    return true;
  };

  // Stage 3a: collect squares until every same-direction pair is adjacent.
  auto collect_squares = [&]() {
    for (;;) {
      WordAnalysis an = analyze(word());
      int pick = 0;
      for (std::size_t s = 0; s < an.pairs.size(); ++s)
        if (an.pairs[s].same_direction() &&
            !an.square_block.count(static_cast<int>(s) + 1)) {
          pick = static_cast<int>(s) + 1;
          break;
        }
      if (pick == 0) break;
      collect_square_of(pick);
    }
  };
  collect_squares();

  // Stage 3b: collect commutators from separating pairs.
  for (;;) {
    WordAnalysis an = analyze(word());
    const int n = static_cast<int>(word().size());
    auto is_free = [&](int id) {
      return !an.square_block.count(id) && !an.comm_block.count(id);
    };
    int s1 = 0;
    int best_span = n + 1;
    for (std::size_t s = 0; s < an.pairs.size(); ++s) {
      if (!is_free(static_cast<int>(s) + 1)) continue;
      const auto& p = an.pairs[s];
      int d = p.pos2 - p.pos1;
      int span = std::min(d, n - d);
      if (span < best_span) {
        best_span = span;
        s1 = static_cast<int>(s) + 1;
      }
    }
    if (s1 == 0) break;

    Word w = word();
    {
      // Work with the shorter span of s1; find a free partner s2 with
      // exactly one occurrence inside it.
      const auto prs = analyze(w).pairs;
      const auto& p1 = prs[s1 - 1];
      int i = p1.pos1, j = p1.pos2;
      if (p1.pos2 - p1.pos1 > n - (p1.pos2 - p1.pos1)) std::swap(i, j);
      auto inside = [&](int pos) {
        int d_pos = ((pos - i) % n + n) % n;
        int d_j = ((j - i) % n + n) % n;
        return 0 < d_pos && d_pos < d_j;
      };
      int s2 = 0;
      for (std::size_t s = 0; s < prs.size(); ++s) {
        int id = static_cast<int>(s) + 1;
        if (!is_free(id) || id == s1) continue;
        if (inside(prs[s].pos1) != inside(prs[s].pos2)) {
          s2 = id;
          break;
        }
      }
      if (s2 == 0)
        throw std::logic_error("no separating partner for a free pair");

      // Gap-emptying rounds: pattern s1 A s2 B s1^- C s2^- D becomes a
      // contiguous block in at most three neighbor moves.
      for (int round = 0; round < 3; ++round) {
        if (analyze(w).comm_block.count(s1)) break;
        // Orient both pairs so the cyclic pattern reads
        // s1 ... s2 ... s1^-1 ... s2^-1.
        auto locate = [&](int id, bool positive) {
          for (std::size_t k = 0; k < w.ls.size(); ++k)
            if (gen_of(w.ls[k]) == id && (sign_of(w.ls[k]) > 0) == positive)
              return static_cast<int>(k);
          throw std::logic_error("lost an occurrence");
        };
        int pos_s1p = locate(s1, true);
        int pos_s1m = locate(s1, false);
        auto between = [&](int pos) {
          int d_pos = ((pos - pos_s1p) % n + n) % n;
          int d_j = ((pos_s1m - pos_s1p) % n + n) % n;
          return 0 < d_pos && d_pos < d_j;
        };
        const auto prs2 = analyze(w).pairs;
        int q_in = between(prs2[s2 - 1].pos1) ? prs2[s2 - 1].pos1
                                              : prs2[s2 - 1].pos2;
        if (!between(q_in))
          throw std::logic_error("pattern lost separation");
        if (sign_of(w.ls[q_in]) < 0)
          for (Letter& l : w.ls)
            if (gen_of(l) == s2) l = -l;
        int pos_s2p = locate(s2, true);
        int pos_s2m = locate(s2, false);
        auto gap_empty = [&](int a, int b) { return (a + 1) % n == b; };
        bool gB = gap_empty(pos_s2p, pos_s1m);
        bool gC = gap_empty(pos_s1m, pos_s2m);
        bool gD = gap_empty(pos_s2m, pos_s1p);
        if (!gB) {
          w = split_fuse_word(w, pos_s2p, pos_s1m, s2);
          set_word(w, "link-b");
        } else if (!gC) {
          w = split_fuse_word(w, pos_s1m, pos_s2m, s1);
          set_word(w, "link-c");
        } else if (!gD) {
          w = split_fuse_word(w, pos_s2m, pos_s1p, s2);
          set_word(w, "link-d");
        } else {
          break;  // contiguous already
        }
        w = word();
      }
      if (!analyze(word()).comm_block.count(s1))
        throw std::logic_error("commutator collection did not converge");
    }
  }

  // Stage 3c: mixed words become all squares.
  for (;;) {
    WordAnalysis an = analyze(word());
    if (an.square_pos.empty() || an.comm_pos.empty()) break;
    const int n = static_cast<int>(word().size());
    int sq = -1;
    for (int s : an.square_pos)
      for (int k : an.comm_pos)
        if ((s + 2) % n == k) sq = s;
    if (sq < 0)
      throw std::logic_error("blocks exist but no square-commutator adjacency");
    Word w = word();
    int id = gen_of(w.ls[sq]);
    int first_id = gen_of(w.ls[(sq + 2) % n]);
    int second_id = gen_of(w.ls[(sq + 3) % n]);
    if (sign_of(w.ls[sq]) < 0)
      for (Letter& l : w.ls)
        if (gen_of(l) == id) l = -l;
    w = split_fuse_word(w, (sq + 1) % n, (sq + 4) % n, id);
    set_word(w, "mix");
    // Collect the ex-commutator pair first, then the chord; this order ends
    // in three squares, while other orders can re-form the block.
    collect_square_of(first_id);
    collect_square_of(second_id);
    collect_square_of(id);
    collect_squares();
  }

  // Read off the normal form.
  WordAnalysis an = analyze(word());
  const int n_pairs = static_cast<int>(cl.work.segs.size());
  NormalForm nf;
  if (static_cast<int>(an.square_pos.size()) == n_pairs &&
      an.comm_pos.empty()) {
    nf.kind = NormalForm::kNonOrientable;
    nf.genus = n_pairs;
  } else if (static_cast<int>(an.comm_pos.size()) * 2 == n_pairs &&
             an.square_pos.empty()) {
    nf.kind = NormalForm::kOrientable;
    nf.genus = static_cast<int>(an.comm_pos.size());
  } else {
    throw std::logic_error("word did not normalize to blocks");
  }
  long expect_chi = nf.kind == NormalForm::kOrientable ? 2L * nf.genus - 2
                                                       : nf.genus - 2L;
  if (expect_chi != cl.chi0 ||
      (nf.kind == NormalForm::kOrientable) != cl.orient0)
    throw std::logic_error("normal form disagrees with invariants");
  return {nf, cl.trace};
}

// ---------------------------------------------------------------------------

SurfaceComplex dual_complex(const SurfaceComplex& c,
                            const ManifoldCert& cert) {
  SurfaceComplex d;
  d.n_points = static_cast<int>(c.faces.size());
  std::vector<std::array<FaceOccurrence, 2>> occ = cert.occ;
  for (auto& o : occ)
    if (o[1] < o[0]) std::swap(o[0], o[1]);
  for (std::size_t s = 0; s < c.segs.size(); ++s)
    d.segs.push_back({occ[s][0].face, occ[s][1].face});

  // Dual face around point p: cross the dual of each star segment in star
  // order. The crossing of star[i] enters at the occurrence its entry
  // corner touches it by, and leaves at the occurrence the next entry's
  // corner touches it by (the side opposite to the next entry).
  auto touch = [&](const FaceOccurrence& corner, bool second) {
    const Word& w = c.faces[corner.face];
    const int n = static_cast<int>(w.ls.size());
    return second ? FaceOccurrence{corner.face, (corner.pos + 1) % n}
                  : corner;
  };
  for (int p = 0; p < c.n_points; ++p) {
    const auto& star = cert.stars[p];
    const int m = static_cast<int>(star.size());
    Word dual_word;
    for (int i = 0; i < m; ++i) {
      Letter u = star[i].seg;
      const StarEntry& here = star[i];
      const StarEntry& next = star[(i + 1) % m];
      FaceOccurrence from = touch(here.corner, here.entered_second);
      FaceOccurrence to = touch(next.corner, !next.entered_second);
      int s = gen_of(u);
      if (from == occ[s - 1][0] && to == occ[s - 1][1])
        dual_word.ls.push_back(s);
      else if (from == occ[s - 1][1] && to == occ[s - 1][0])
        dual_word.ls.push_back(-s);
      else
        throw std::logic_error("dual crossing does not use both occurrences");
    }
    d.faces.push_back(dual_word);
  }
  return d;
}

Presentation fundamental_group(const SurfaceComplex& c, int basepoint,
                               const std::vector<int>& tree) {
  Graph1 g = c.skeleton();
  if (!g.connected()) throw error("complex is not connected");
  GraphBasis basis = fundamental_group_basis(g, basepoint, tree);
  Presentation p;
  p.n_generators = static_cast<int>(basis.cotree.size());
  for (const auto& f : c.faces)
    p.relators.push_back(path_in_basis(basis, f));
  return p;
}

Presentation fundamental_group(const SurfaceComplex& c, int basepoint) {
  return fundamental_group(c, basepoint, spanning_tree(c.skeleton()));
}

std::vector<long> homology_class(const Word& w, int genus) {
  if (w.max_gen() > 2 * genus)
    throw error("word uses generators beyond the normal form");
  std::vector<long> v(2 * genus, 0);
  for (Letter l : w.ls) v[gen_of(l) - 1] += sign_of(l);
  return v;
}

long intersection_number(const std::vector<long>& v1,
                         const std::vector<long>& v2) {
  if (v1.size() != v2.size() || v1.size() % 2 != 0)
    throw error("homology vectors must have equal even length");
  long n = 0;
  for (std::size_t i = 0; i + 1 < v1.size(); i += 2)
    n += v1[i] * v2[i + 1] - v2[i] * v1[i + 1];
  return n;
}

Sidedness segment_sidedness(const SurfaceComplex& c, int seg) {
  if (c.faces.size() != 1 || c.n_points != 1)
    throw error("sidedness needs a one-point one-face manifold");
  const Word& w = c.faces[0];
  std::vector<int> signs;
  for (Letter l : w.ls)
    if (gen_of(l) == seg + 1) signs.push_back(sign_of(l));
  if (signs.size() != 2) throw error("segment must occur exactly twice");
  return signs[0] == signs[1] ? Sidedness::kOneSided : Sidedness::kTwoSided;
}

// ---------------------------------------------------------------------------
// Elementary extensions

SurfaceComplex extend_first_kind(const SurfaceComplex& c, int seg) {
  if (seg < 0 || seg >= static_cast<int>(c.segs.size()))
    throw error("no such segment");
  SurfaceComplex out = c;
  int mid = out.n_points++;
  int old_to = out.segs[seg].to;
  out.segs[seg].to = mid;                      // s1: from -> mid
  out.segs.push_back({old_to, mid});           // s2: old_to -> mid
  int s2 = static_cast<int>(out.segs.size());  // 1-based id
  int s1 = seg + 1;
  for (auto& f : out.faces) {
    Word w;
    for (Letter l : f.ls) {
      if (gen_of(l) != s1) {
        w.ls.push_back(l);
      } else if (l > 0) {
        w.ls.push_back(s1);
        w.ls.push_back(-s2);
      } else {
        w.ls.push_back(s2);
        w.ls.push_back(-s1);
      }
    }
    f = w;
  }
  return out;
}

SurfaceComplex extend_second_kind(const SurfaceComplex& c, int face, int cut1,
                                  int cut2) {
  if (face < 0 || face >= static_cast<int>(c.faces.size()))
    throw error("no such face");
  const Word& w = c.faces[face];
  const int n = static_cast<int>(w.ls.size());
  if (cut1 == cut2 || cut1 < 0 || cut2 < 0 || cut1 >= n || cut2 >= n)
    throw error("cuts must be distinct word positions");
  SurfaceComplex out = c;
  auto chunk = [&](int a, int b) {
    Word r;
    for (int k = a; k != b; k = (k + 1) % n) r.ls.push_back(w.ls[k]);
    return r;
  };
  Word w1 = chunk(cut1, cut2), w2 = chunk(cut2, cut1);
  int p1 = letter_start(c, w.ls[cut1]);
  int p2 = letter_start(c, w.ls[cut2]);
  out.segs.push_back({p1, p2});
  int t = static_cast<int>(out.segs.size());
  Word f1 = w1;
  f1.ls.push_back(-t);
  Word f2;
  f2.ls.push_back(t);
  f2 *= w2;
  out.faces[face] = f1;
  out.faces.push_back(f2);
  return out;
}

SurfaceComplex extend_third_kind(const SurfaceComplex& c, int point,
                                 int arc_start, int arc_len,
                                 const ManifoldCert& cert) {
  if (point < 0 || point >= c.n_points) throw error("no such point");
  const auto& star = cert.stars[point];
  const int m = static_cast<int>(star.size());
  if (arc_len < 1 || arc_len >= m) throw error("arc must be a proper substar");
  std::set<Letter> arc;
  for (int k = 0; k < arc_len; ++k)
    arc.insert(star[(arc_start + k) % m].seg);

  SurfaceComplex out = c;
  int np = out.n_points++;  // the new point carries the arc
  for (const Letter u : arc) {
    int s = gen_of(u) - 1;
    if (u > 0)
      out.segs[s].from = np;
    else
      out.segs[s].to = np;
  }
  out.segs.push_back({np, point});
  int t = static_cast<int>(out.segs.size());

  int insertions = 0;
  for (auto& f : out.faces) {
    Word w;
    const int n = static_cast<int>(f.ls.size());
    for (int i = 0; i < n; ++i) {
      Letter x = f.ls[i];
      w.ls.push_back(x);
      Letter y = f.ls[(i + 1) % n];
      if (letter_end(c, x) != point) continue;
      bool x_at_new = arc.count(inv(x)) > 0;
      bool y_at_new = arc.count(y) > 0;
      if (x_at_new && !y_at_new) {
        w.ls.push_back(t);  // np -> point
        ++insertions;
      } else if (!x_at_new && y_at_new) {
        w.ls.push_back(-t);
        ++insertions;
      }
    }
    f = w;
  }
  if (insertions != 2)
    throw std::logic_error("point split must cross exactly two corners");
  return out;
}

}  // namespace ct
