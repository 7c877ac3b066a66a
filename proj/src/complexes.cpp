#include "ct/complexes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace ct {

int Graph1::add_seg(int from, int to) {
  segs.push_back({from, to});
  return static_cast<int>(segs.size()) - 1;
}

void Graph1::check() const {
  for (const auto& s : segs)
    if (s.from < 0 || s.from >= n_points || s.to < 0 || s.to >= n_points)
      throw error("segment endpoint references a missing point");
}

int Graph1::order(int p) const {
  int k = 0;
  for (const auto& s : segs) {
    if (s.from == p) ++k;
    if (s.to == p) ++k;  // the inverse segment emanates from the far end
  }
  return k;
}

bool Graph1::connected() const {
  if (n_points == 0) return true;
  std::vector<bool> seen(n_points, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    int p = stack.back();
    stack.pop_back();
    for (const auto& s : segs) {
      if (s.from == p && !seen[s.to]) seen[s.to] = true, stack.push_back(s.to);
      if (s.to == p && !seen[s.from])
        seen[s.from] = true, stack.push_back(s.from);
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

int path_start(const Graph1& g, const GraphPath& w) {
  if (w.empty()) throw error("empty path has no endpoints");
  Letter l = w.ls.front();
  return l > 0 ? g.segs[gen_of(l) - 1].from : g.segs[gen_of(l) - 1].to;
}

int path_end(const Graph1& g, const GraphPath& w) {
  if (w.empty()) throw error("empty path has no endpoints");
  Letter l = w.ls.back();
  return l > 0 ? g.segs[gen_of(l) - 1].to : g.segs[gen_of(l) - 1].from;
}

bool is_path(const Graph1& g, const GraphPath& w) {
  for (std::size_t i = 0; i < w.ls.size(); ++i) {
    int seg = gen_of(w.ls[i]) - 1;
    if (seg < 0 || seg >= static_cast<int>(g.segs.size())) return false;
    if (i + 1 < w.ls.size()) {
      Letter a = w.ls[i], b = w.ls[i + 1];
      int end_a = a > 0 ? g.segs[gen_of(a) - 1].to : g.segs[gen_of(a) - 1].from;
      int start_b =
          b > 0 ? g.segs[gen_of(b) - 1].from : g.segs[gen_of(b) - 1].to;
      if (end_a != start_b) return false;
    }
  }
  return true;
}

bool is_closed_path(const Graph1& g, const GraphPath& w) {
  return is_path(g, w) && !w.empty() && path_start(g, w) == path_end(g, w);
}

namespace {

// Hierholzer tour over a set of directed edge slots; each segment pair is
// one undirected edge usable once in either direction.
GraphPath euler_tour_from(const Graph1& g, const std::vector<int>& segs_here,
                          int start, std::vector<bool>& used) {
  // adjacency: point -> list of (seg id, direction)
  std::vector<std::vector<std::pair<int, int>>> adj(g.n_points);
  for (int s : segs_here) {
    adj[g.segs[s].from].push_back({s, +1});
    adj[g.segs[s].to].push_back({s, -1});
  }
  std::vector<std::size_t> next(g.n_points, 0);
  std::vector<Letter> stack_letters;
  std::vector<int> stack_points = {start};
  GraphPath tour;
  while (!stack_points.empty()) {
    int p = stack_points.back();
    bool advanced = false;
    while (next[p] < adj[p].size()) {
      auto [s, dir] = adj[p][next[p]++];
      if (used[s]) continue;
      used[s] = true;
      stack_points.push_back(dir > 0 ? g.segs[s].to : g.segs[s].from);
      stack_letters.push_back(dir > 0 ? s + 1 : -(s + 1));
      advanced = true;
      break;
    }
    if (!advanced) {
      stack_points.pop_back();
      if (!stack_letters.empty() && !stack_points.empty()) {
        tour.ls.push_back(stack_letters.back());
        stack_letters.pop_back();
      }
    }
  }
  std::reverse(tour.ls.begin(), tour.ls.end());
  return tour;
}

}  // namespace

std::vector<GraphPath> euler_trails(const Graph1& g) {
  g.check();
  if (!g.connected()) throw error("graph is not connected");
  if (g.segs.empty()) return {};

  std::vector<int> odd;
  for (int p = 0; p < g.n_points; ++p)
    if (g.order(p) % 2 == 1) odd.push_back(p);

  // Pair up odd points with virtual segments, tour, then split.
  Graph1 aug = g;
  std::set<int> virtual_segs;
  for (std::size_t i = 0; i + 1 < odd.size(); i += 2)
    virtual_segs.insert(aug.add_seg(odd[i], odd[i + 1]));

  std::vector<int> all(aug.segs.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<bool> used(aug.segs.size(), false);
  int start = odd.empty() ? 0 : odd[0];
  GraphPath tour = euler_tour_from(aug, all, start, used);
  if (tour.ls.size() != aug.segs.size())
    throw std::logic_error("euler tour missed segments");

  if (virtual_segs.empty()) return {tour};

  // Split the closed tour at virtual segments.
  std::vector<GraphPath> trails;
  // Rotate so the tour starts right after a virtual segment.
  std::size_t n = tour.ls.size();
  std::size_t first_virtual = 0;
  while (!virtual_segs.count(gen_of(tour.ls[first_virtual]) - 1))
    ++first_virtual;
  GraphPath cur;
  for (std::size_t k = 1; k <= n; ++k) {
    Letter l = tour.ls[(first_virtual + k) % n];
    if (virtual_segs.count(gen_of(l) - 1)) {
      if (!cur.empty()) trails.push_back(cur);
      cur = GraphPath{};
    } else {
      cur.ls.push_back(l);
    }
  }
  if (!cur.empty()) trails.push_back(cur);
  return trails;
}

namespace {

std::vector<int> spanning_tree_impl(const Graph1& g, std::mt19937_64* rng) {
  g.check();
  if (!g.connected()) throw error("graph is not connected");
  std::vector<int> tree;
  std::vector<bool> seen(g.n_points, false);
  if (g.n_points == 0) return tree;
  seen[0] = true;
  std::vector<int> frontier = {0};
  while (!frontier.empty()) {
    std::vector<int> next;
    std::vector<std::pair<int, int>> candidates;  // (seg, new point)
    for (int p : frontier)
      for (std::size_t s = 0; s < g.segs.size(); ++s) {
        if (g.segs[s].from == p && !seen[g.segs[s].to])
          candidates.push_back({static_cast<int>(s), g.segs[s].to});
        if (g.segs[s].to == p && !seen[g.segs[s].from])
          candidates.push_back({static_cast<int>(s), g.segs[s].from});
      }
    if (rng) std::shuffle(candidates.begin(), candidates.end(), *rng);
    for (auto [s, q] : candidates) {
      if (seen[q]) continue;
      seen[q] = true;
      tree.push_back(s);
      next.push_back(q);
    }
    frontier = std::move(next);
  }
  return tree;
}

}  // namespace

std::vector<int> spanning_tree(const Graph1& g) {
  return spanning_tree_impl(g, nullptr);
}

std::vector<int> spanning_tree_shuffled(const Graph1& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return spanning_tree_impl(g, &rng);
}

long connectivity_number(const Graph1& g) {
  if (!g.connected()) throw error("graph is not connected");
  return -static_cast<long>(g.n_points) + static_cast<long>(g.segs.size()) + 1;
}

namespace {

// Tree paths from the basepoint to every point, as GraphPaths.
std::vector<GraphPath> tree_paths(const Graph1& g, int basepoint,
                                  const std::vector<int>& tree) {
  std::vector<GraphPath> path(g.n_points);
  std::vector<bool> seen(g.n_points, false);
  seen[basepoint] = true;
  std::vector<int> stack = {basepoint};
  while (!stack.empty()) {
    int p = stack.back();
    stack.pop_back();
    for (int s : tree) {
      if (g.segs[s].from == p && !seen[g.segs[s].to]) {
        int q = g.segs[s].to;
        seen[q] = true;
        path[q] = path[p];
        path[q].ls.push_back(s + 1);
        stack.push_back(q);
      }
      if (g.segs[s].to == p && !seen[g.segs[s].from]) {
        int q = g.segs[s].from;
        seen[q] = true;
        path[q] = path[p];
        path[q].ls.push_back(-(s + 1));
        stack.push_back(q);
      }
    }
  }
  for (int p = 0; p < g.n_points; ++p)
    if (!seen[p]) throw error("tree does not span the graph");
  return path;
}

}  // namespace

GraphBasis fundamental_group_basis(const Graph1& g, int basepoint,
                                   const std::vector<int>& tree) {
  GraphBasis b;
  std::vector<bool> in_tree(g.segs.size(), false);
  for (int s : tree) {
    if (s < 0 || s >= static_cast<int>(g.segs.size()))
      throw error("tree references a missing segment");
    if (in_tree[s]) throw error("tree lists a segment twice");
    in_tree[s] = true;
  }
  if (tree.size() + 1 != static_cast<std::size_t>(g.n_points))
    throw error("tree has the wrong segment count");
  std::vector<GraphPath> to = tree_paths(g, basepoint, tree);
  b.gen_of_seg.assign(g.segs.size(), 0);
  for (std::size_t s = 0; s < g.segs.size(); ++s) {
    if (in_tree[s]) continue;
    b.cotree.push_back(static_cast<int>(s));
    GraphPath loop = to[g.segs[s].from];
    loop.ls.push_back(static_cast<int>(s) + 1);
    loop *= to[g.segs[s].to].inverse();
    b.loops.push_back(free_reduce(loop));
    b.gen_of_seg[s] = static_cast<int>(b.cotree.size());
  }
  return b;
}

Word path_in_basis(const GraphBasis& b, const GraphPath& w) {
  Word out;
  for (Letter l : w.ls) {
    int gen = b.gen_of_seg[gen_of(l) - 1];
    if (gen != 0) out.ls.push_back(l > 0 ? gen : -gen);
  }
  return free_reduce(out);
}

void Voltage::check(const Graph1& g) const {
  if (k < 1) throw error("voltage sheet count must be positive");
  if (perm.size() != g.segs.size())
    throw error("need one permutation per segment pair");
  for (const auto& p : perm) {
    if (static_cast<int>(p.size()) != k)
      throw error("voltage permutation on the wrong set");
    std::vector<bool> hit(k, false);
    for (int v : p) {
      if (v < 0 || v >= k || hit[v]) throw error("voltage is not a bijection");
      hit[v] = true;
    }
  }
}

void Voltage::check(const Graph1& g, const std::vector<int>& tree) const {
  check(g);
  for (int s : tree) {
    if (s < 0 || s >= static_cast<int>(g.segs.size()))
      throw error("tree references a missing segment");
    for (int i = 0; i < k; ++i)
      if (perm[s][i] != i)
        throw error("tree segments must carry the identity voltage");
  }
}

int Voltage::apply_inv(int seg, int sheet) const {
  const auto& p = perm[seg];
  for (int i = 0; i < k; ++i)
    if (p[i] == sheet) return i;
  throw std::logic_error("voltage inverse lookup failed");
}

int GraphCover::point_of(int base_point, int sheet) const {
  return sheet * base_points + base_point;
}
int GraphCover::seg_of(int base_seg, int sheet) const {
  return sheet * base_segs + base_seg;
}

GraphCover build_cover(const Graph1& g, const Voltage& v) {
  g.check();
  v.check(g);
  GraphCover c;
  c.sheets = v.k;
  c.base_points = g.n_points;
  c.base_segs = static_cast<int>(g.segs.size());
  c.cover.n_points = g.n_points * v.k;
  c.cover.segs.resize(g.segs.size() * v.k);
  for (int i = 0; i < v.k; ++i)
    for (std::size_t s = 0; s < g.segs.size(); ++s)
      c.cover.segs[c.seg_of(static_cast<int>(s), i)] = {
          c.point_of(g.segs[s].from, i),
          c.point_of(g.segs[s].to, v.apply(static_cast<int>(s), i))};
  return c;
}

GraphCover build_cover(const Graph1& g, const std::vector<int>& tree,
                       const Voltage& v) {
  v.check(g, tree);
  return build_cover(g, v);
}

int lift_sheet(const Voltage& v, const GraphPath& base_path) {
  int sheet = 0;
  for (Letter l : base_path.ls) {
    int s = gen_of(l) - 1;
    sheet = l > 0 ? v.apply(s, sheet) : v.apply_inv(s, sheet);
  }
  return sheet;
}

namespace {

std::vector<std::vector<int>> close_permutations(
    const std::vector<std::vector<int>>& gens, std::size_t guard,
    const char* guard_msg) {
  if (gens.empty()) throw error("need at least one permutation");
  std::size_t k = gens[0].size();
  std::vector<int> id(k);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> elems = {id};
  seen.insert(id);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gperm : gens) {
      if (gperm.size() != k) throw error("permutations on different sets");
      std::vector<int> prod(k);
      for (std::size_t i = 0; i < k; ++i) prod[i] = gperm[elems[head][i]];
      if (seen.insert(prod).second) {
        if (elems.size() >= guard) throw error(guard_msg);
        elems.push_back(std::move(prod));
      }
    }
  }
  return elems;
}

}  // namespace

Regularity is_regular_cover(const Graph1& g, const Voltage& v,
                            std::size_t guard) {
  g.check();
  v.check(g);
  std::vector<std::vector<int>> gens;
  for (const auto& p : v.perm) gens.push_back(p);
  std::vector<std::vector<int>> elems;
  try {
    elems = close_permutations(gens, guard, "voltage group guard exceeded");
  } catch (const error&) {
    return Regularity::kUndecidedAtGuard;
  }
  // Regular means every lift of a closed base path is closed whenever one
  // is: each voltage-group element fixes all sheets or none.
  std::vector<int> id(v.k);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& e : elems) {
    if (e == id) continue;
    for (int i = 0; i < v.k; ++i)
      if (e[i] == i) return Regularity::kNotRegular;
  }
  return Regularity::kRegular;
}

Regularity is_regular_cover(const Graph1& g, const std::vector<int>& tree,
                            const Voltage& v, std::size_t guard) {
  v.check(g, tree);
  return is_regular_cover(g, v, guard);
}

CayleyGraph cayley_graph(const std::vector<std::vector<int>>& generators,
                         std::size_t guard) {
  CayleyGraph cg;
  cg.elements =
      close_permutations(generators, guard, "group closure guard exceeded");
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < cg.elements.size(); ++i)
    index[cg.elements[i]] = static_cast<int>(i);
  cg.graph.n_points = static_cast<int>(cg.elements.size());
  std::size_t k = generators[0].size();
  for (std::size_t e = 0; e < cg.elements.size(); ++e)
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
      std::vector<int> prod(k);
      for (std::size_t i = 0; i < k; ++i)
        prod[i] = generators[gi][cg.elements[e][i]];
      cg.graph.add_seg(static_cast<int>(e), index.at(prod));
      cg.label_of_seg.push_back(static_cast<int>(gi));
    }
  cg.identity_point = 0;
  return cg;
}

namespace {

// Component-wise Euler tour orientation; returns per-segment direction
// (+1 keeps stored orientation, -1 flips) such that every point has equal
// in- and out-degree.
std::vector<int> euler_orientation(const Graph1& g,
                                   const std::vector<int>& segs_here) {
  std::vector<int> dir(g.segs.size(), 0);
  std::vector<bool> done(g.segs.size(), false);
  for (int s0 : segs_here) {
    if (done[s0]) continue;
    // Collect the component of s0 within the subgraph.
    std::vector<int> comp;
    std::vector<int> stack = {g.segs[s0].from};
    std::vector<bool> pseen(g.n_points, false);
    pseen[g.segs[s0].from] = true;
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      for (int s : segs_here) {
        if (done[s]) continue;
        if (g.segs[s].from == p || g.segs[s].to == p) {
          if (!done[s]) comp.push_back(s), done[s] = true;
          for (int q : {g.segs[s].from, g.segs[s].to})
            if (!pseen[q]) pseen[q] = true, stack.push_back(q);
        }
      }
    }
    std::vector<bool> u(g.segs.size(), false);
    GraphPath tour = euler_tour_from(g, comp, g.segs[comp[0]].from, u);
    for (Letter l : tour.ls) dir[gen_of(l) - 1] = sign_of(l);
  }
  return dir;
}

// Perfect matching in a bipartite graph given as left -> list of
// (right, edge id); augmenting-path search.
std::vector<int> bipartite_perfect_matching(
    int n_left, int n_right,
    const std::vector<std::vector<std::pair<int, int>>>& adj) {
  std::vector<int> match_right(n_right, -1), match_left(n_left, -1);
  std::vector<int> match_edge(n_left, -1);
  for (int u = 0; u < n_left; ++u) {
    std::vector<bool> visited(n_right, false);
    // Iterative DFS would be uglier; recursion depth is bounded by n.
    std::function<bool(int)> try_match = [&](int x) -> bool {
      for (auto [y, e] : adj[x]) {
        if (visited[y]) continue;
        visited[y] = true;
        if (match_right[y] == -1 || try_match(match_right[y])) {
          match_right[y] = x;
          match_left[x] = y;
          match_edge[x] = e;
          return true;
        }
      }
      return false;
    };
    if (!try_match(u)) throw std::logic_error("regular bipartite graph without perfect matching");
  }
  return match_edge;
}

}  // namespace

std::vector<std::vector<int>> petersen_2_factorization(const Graph1& g) {
  g.check();
  if (g.segs.empty() && g.n_points == 0) return {};
  int deg = g.n_points > 0 ? g.order(0) : 0;
  for (int p = 0; p < g.n_points; ++p)
    if (g.order(p) != deg) throw error("graph is not regular");
  if (deg % 2 != 0) throw error("degree must be even");
  if (deg == 0) return {};
  const int r = deg / 2;

  std::vector<int> remaining(g.segs.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::vector<int>> factors;

  for (int step = 0; step < r; ++step) {
    if (static_cast<int>(factors.size()) == r - 1) {
      factors.push_back(remaining);
      break;
    }
    int deg_now = 2 * (r - step);
    std::vector<int> factor;
    if (deg_now == 4) {
      // Alternate segments along an Euler tour, per component.
      std::vector<bool> done(g.segs.size(), false);
      for (int s0 : remaining) {
        if (done[s0]) continue;
        std::vector<int> comp;
        std::vector<int> stack = {g.segs[s0].from};
        std::vector<bool> pseen(g.n_points, false);
        pseen[g.segs[s0].from] = true;
        while (!stack.empty()) {
          int p = stack.back();
          stack.pop_back();
          for (int s : remaining) {
            if (done[s]) continue;
            if (g.segs[s].from == p || g.segs[s].to == p) {
              done[s] = true;
              comp.push_back(s);
              for (int q : {g.segs[s].from, g.segs[s].to})
                if (!pseen[q]) pseen[q] = true, stack.push_back(q);
            }
          }
        }
        std::vector<bool> u(g.segs.size(), false);
        GraphPath tour = euler_tour_from(g, comp, g.segs[comp[0]].from, u);
        for (std::size_t i = 0; i < tour.ls.size(); i += 2)
          factor.push_back(gen_of(tour.ls[i]) - 1);
      }
    } else {
      // Orient along Euler tours, then match out-slots to in-slots.
      std::vector<int> dir = euler_orientation(g, remaining);
      std::vector<std::vector<std::pair<int, int>>> adj(g.n_points);
      for (int s : remaining) {
        int from = dir[s] > 0 ? g.segs[s].from : g.segs[s].to;
        int to = dir[s] > 0 ? g.segs[s].to : g.segs[s].from;
        adj[from].push_back({to, s});
      }
      std::vector<int> match = bipartite_perfect_matching(
          g.n_points, g.n_points, adj);
      factor.assign(match.begin(), match.end());
    }
    std::sort(factor.begin(), factor.end());
    factors.push_back(factor);
    std::vector<int> rest;
    std::set_difference(remaining.begin(), remaining.end(), factor.begin(),
                        factor.end(), std::back_inserter(rest));
    remaining = std::move(rest);
  }
  return factors;
}

}  // namespace ct
