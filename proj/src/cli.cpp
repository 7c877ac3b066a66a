#include "ct/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "ct/complexes.hpp"
#include "ct/coverings.hpp"
#include "ct/matrices.hpp"
#include "ct/presentations.hpp"
#include "ct/subgroups.hpp"
#include "ct/surfaces.hpp"
#include "ct/textio.hpp"
#include "ct/words.hpp"

namespace ct {

namespace {

struct Usage {
  std::string message;
};

struct Ctx {
  std::vector<std::string> pos;
  std::map<std::string, std::string> flags;
  bool porcelain = false;
  std::istream* stdin_stream = nullptr;

  std::string input_text(const std::string& path) const {
    if (path == "-") {
      std::ostringstream os;
      os << stdin_stream->rdbuf();
      return os.str();
    }
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  }

  const std::string& arg(std::size_t i, const char* what) const {
    if (i >= pos.size()) throw Usage{std::string("missing argument: ") + what};
    return pos[i];
  }

  std::string flag(const std::string& name, const std::string& dflt) const {
    auto it = flags.find(name);
    return it == flags.end() ? dflt : it->second;
  }
  bool has_flag(const std::string& name) const {
    return flags.count(name) > 0;
  }
};

long to_long(const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw error("bad number: " + s);
    return v;
  } catch (const std::exception&) {
    throw error("bad number: " + s);
  }
}

std::string join_rest(const Ctx& c, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < c.pos.size(); ++i) {
    if (i > from) out += ' ';
    out += c.pos[i];
  }
  return out;
}

std::vector<long> split_longs(const std::string& s) {
  std::vector<long> out;
  std::string piece;
  std::istringstream is(s);
  while (std::getline(is, piece, ','))
    if (!piece.empty()) out.push_back(to_long(piece));
  return out;
}

std::string join_longs(const std::vector<long>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

void emit(std::ostream& out, bool porcelain,
          const std::vector<std::pair<std::string, std::string>>& kv) {
  if (porcelain) {
    auto sorted = kv;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [k, v] : sorted) out << k << '=' << v << '\n';
  } else {
    for (std::size_t i = 0; i < kv.size(); ++i) {
      if (i) out << ' ';
      out << kv[i].first << '=' << kv[i].second;
    }
    out << '\n';
  }
}

// -------------------------------------------------------------------------

int cmd_reduce(const Ctx& c, std::ostream& out) {
  Word w = parse_word(join_rest(c, 1));
  out << print_word(free_reduce(w)) << '\n';
  return 0;
}

int cmd_conjugate(const Ctx& c, std::ostream& out) {
  Word a = parse_word(c.arg(1, "first word"));
  Word b = parse_word(c.arg(2, "second word"));
  if (c.has_flag("orders")) {
    CyclicOrders orders{split_longs(c.flag("orders", ""))};
    emit(out, c.porcelain,
         {{"conjugate",
           conjugate_in_cyclic_product(a, b, orders) ? "true" : "false"}});
  } else {
    emit(out, c.porcelain,
         {{"conjugate", conjugate_in_free(a, b) ? "true" : "false"}});
  }
  return 0;
}

int cmd_nf_cyclic(const Ctx& c, std::ostream& out) {
  if (!c.has_flag("orders")) throw Usage{"nf-cyclic needs --orders a,b,..."};
  CyclicOrders orders{split_longs(c.flag("orders", ""))};
  Word w = parse_word(join_rest(c, 1));
  out << print_word(normal_form_cyclic_product(w, orders)) << '\n';
  return 0;
}

int cmd_snf(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "matrix file")));
  IntMatrix m = parse_int_matrix(in);
  SmithResult s = smith_normal_form(m);
  std::string diag;
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
    if (i) diag += ',';
    diag += s.diagonal[i].get_str();
  }
  emit(out, c.porcelain,
       {{"rank", std::to_string(s.rank)}, {"diagonal", diag}});
  return 0;
}

int cmd_abelian(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "presentation file")));
  Presentation p = parse_presentation(in);
  AbelianInvariants inv = abelian_invariants(p);
  std::string tor;
  for (std::size_t i = 0; i < inv.torsion.size(); ++i) {
    if (i) tor += ',';
    tor += inv.torsion[i].get_str();
  }
  emit(out, c.porcelain,
       {{"betti", std::to_string(inv.betti)}, {"torsion", tor}});
  return 0;
}

int cmd_laurent_ed(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "matrix file")));
  LaurentMatrix m = parse_laurent_matrix(in);
  LaurentDivisors d = laurent_elementary_divisors(m);
  std::vector<std::pair<std::string, std::string>> kv;
  kv.push_back({"rank", std::to_string(d.rank)});
  for (std::size_t i = 0; i < d.divisors.size(); ++i)
    kv.push_back({"d" + std::to_string(i + 1), d.divisors[i].str()});
  emit(out, c.porcelain, kv);
  return 0;
}

int cmd_rs(const Ctx& c, std::ostream& out) {
  std::istringstream pin(c.input_text(c.arg(1, "presentation file")));
  Presentation p = parse_presentation(pin);
  std::istringstream tin(c.input_text(c.arg(2, "permutation file")));
  auto perms = parse_permutation_list(tin, p.n_generators);
  CosetTable t = coset_table_from_permutations(p, perms);
  RewrittenPresentation rp = reidemeister_schreier(p, t);
  Presentation result = rp.presentation;
  if (c.has_flag("simplify")) result = simplify_bounded(result);
  out << print_presentation(result);
  return 0;
}

int cmd_modular(const Ctx& c, std::ostream& out) {
  if (!c.has_flag("p")) throw Usage{"modular needs -p <prime>"};
  long p = to_long(c.flag("p", ""));
  if (c.has_flag("table")) {
    CosetTable t = modular_congruence_table(p);
    out << "n " << t.n_cosets() << '\n';
    out << "perm a " << print_permutation_cycles(t.act[0]) << '\n';
    out << "perm b " << print_permutation_cycles(t.act[1]) << '\n';
    return 0;
  }
  CongruenceReport r = congruence_subgroup_report(p);
  if (r.free_group) {
    emit(out, c.porcelain,
         {{"index", std::to_string(r.index)},
          {"free", "true"},
          {"rank", std::to_string(r.free_rank)}});
  } else {
    emit(out, c.porcelain,
         {{"index", std::to_string(r.index)},
          {"generators", std::to_string(r.n_generators)},
          {"torsion", join_longs(r.torsion_orders)}});
  }
  return 0;
}

int cmd_alexander(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "presentation file")));
  Presentation p = parse_presentation(in);
  out << commutator_operator_polynomial(p).str() << '\n';
  return 0;
}

std::string print_trail(const NamedGraph& g, const GraphPath& w) {
  std::string out;
  for (std::size_t i = 0; i < w.ls.size(); ++i) {
    if (i) out += ' ';
    if (w.ls[i] < 0) out += '-';
    out += g.seg_names[gen_of(w.ls[i]) - 1];
  }
  return out;
}

int cmd_euler(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "graph file")));
  NamedGraph g = parse_graph(in);
  auto trails = euler_trails(g.graph);
  emit(out, c.porcelain, {{"trails", std::to_string(trails.size())}});
  for (const auto& t : trails) out << print_trail(g, t) << '\n';
  return 0;
}

int cmd_tree(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "graph file")));
  NamedGraph g = parse_graph(in);
  auto tree = spanning_tree(g.graph);
  std::string names;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (i) names += ' ';
    names += g.seg_names[tree[i]];
  }
  emit(out, c.porcelain,
       {{"connectivity", std::to_string(connectivity_number(g.graph))}});
  out << names << '\n';
  return 0;
}

int cmd_cover_graph(const Ctx& c, std::ostream& out) {
  std::istringstream gin(c.input_text(c.arg(1, "graph file")));
  NamedGraph g = parse_graph(gin);
  std::istringstream vin(c.input_text(c.arg(2, "voltage file")));
  Voltage v = parse_voltage(vin, g);
  GraphCover cover = build_cover(g.graph, v);
  emit(out, c.porcelain,
       {{"sheets", std::to_string(v.k)},
        {"points", std::to_string(cover.cover.n_points)},
        {"segments", std::to_string(cover.cover.segs.size())},
        {"connected", cover.cover.connected() ? "true" : "false"}});
  for (int i = 0; i < cover.cover.n_points; ++i)
    out << "point " << g.point_names[i % cover.base_points] << "."
        << i / cover.base_points << '\n';
  for (std::size_t s = 0; s < cover.cover.segs.size(); ++s) {
    int base = static_cast<int>(s) % cover.base_segs;
    int sheet = static_cast<int>(s) / cover.base_segs;
    const auto& e = cover.cover.segs[s];
    out << "seg " << g.seg_names[base] << "." << sheet << ' '
        << g.point_names[e.from % cover.base_points] << "."
        << e.from / cover.base_points << ' '
        << g.point_names[e.to % cover.base_points] << "."
        << e.to / cover.base_points << '\n';
  }
  return 0;
}

int cmd_cayley(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "permutation file")));
  // Parse every perm line in order.
  std::vector<std::vector<int>> gens;
  {
    int n = -1;
    std::vector<std::pair<std::string, std::string>> raw;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string head;
      ls >> head;
      if (head.empty() || head[0] == '#') continue;
      if (head == "n") {
        ls >> n;
      } else if (head == "perm") {
        std::string name, rest, tok;
        ls >> name;
        while (ls >> tok) rest += tok + " ";
        raw.push_back({name, rest});
      } else {
        throw error("bad permutation line: " + line);
      }
    }
    if (n < 1) throw error("permutation file needs an n line");
    for (const auto& [name, cyc] : raw)
      gens.push_back(parse_permutation_cycles(cyc, n));
  }
  CayleyGraph cg = cayley_graph(gens);
  emit(out, c.porcelain,
       {{"order", std::to_string(cg.graph.n_points)},
        {"segments", std::to_string(cg.graph.segs.size())}});
  return 0;
}

int cmd_petersen(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "graph file")));
  NamedGraph g = parse_graph(in);
  auto factors = petersen_2_factorization(g.graph);
  emit(out, c.porcelain, {{"factors", std::to_string(factors.size())}});
  for (const auto& f : factors) {
    for (std::size_t i = 0; i < f.size(); ++i)
      out << (i ? " " : "") << g.seg_names[f[i]];
    out << '\n';
  }
  return 0;
}

int cmd_validate_surface(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "surface file")));
  NamedSurface s = parse_surface(in);
  ManifoldCert cert = validate_manifold(s.complex);
  emit(out, c.porcelain,
       {{"valid", "true"},
        {"points", std::to_string(s.complex.n_points)},
        {"segments", std::to_string(s.complex.segs.size())},
        {"faces", std::to_string(s.complex.faces.size())},
        {"orientable", orientable(s.complex, cert) ? "true" : "false"}});
  return 0;
}

int cmd_classify(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "surface file")));
  NamedSurface s = parse_surface(in);
  Classification r = classify(s.complex);
  long cc = characteristic(s.complex);
  std::string kind = r.nf.kind == NormalForm::kSphere ? "sphere"
                     : r.nf.kind == NormalForm::kOrientable
                         ? "orientable"
                         : "non-orientable";
  if (c.porcelain) {
    emit(out, true,
         {{"kind", kind},
          {"genus", std::to_string(r.nf.genus)},
          {"chi", std::to_string(-cc)},
          {"c", std::to_string(cc)},
          {"moves", std::to_string(r.trace.size())}});
  } else {
    out << kind << " genus=" << r.nf.genus << " chi=" << -cc << '\n';
  }
  return 0;
}

int cmd_dual(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "surface file")));
  NamedSurface s = parse_surface(in);
  ManifoldCert cert = validate_manifold(s.complex);
  SurfaceComplex d = dual_complex(s.complex, cert);
  for (int p = 0; p < d.n_points; ++p) out << "point f" << p << '\n';
  for (std::size_t i = 0; i < d.segs.size(); ++i)
    out << "seg x" << i + 1 << " f" << d.segs[i].from << " f" << d.segs[i].to
        << '\n';
  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    out << "face p" << f;
    for (Letter l : d.faces[f].ls)
      out << ' ' << (l < 0 ? "-" : "") << 'x' << gen_of(l);
    out << '\n';
  }
  return 0;
}

int cmd_pi1(const Ctx& c, std::ostream& out) {
  std::istringstream in(c.input_text(c.arg(1, "surface file")));
  NamedSurface s = parse_surface(in);
  int base = static_cast<int>(to_long(c.flag("basepoint", "0")));
  Presentation p = fundamental_group(s.complex, base);
  out << print_presentation(p);
  AbelianInvariants inv = abelian_invariants(p);
  std::string tor;
  for (std::size_t i = 0; i < inv.torsion.size(); ++i) {
    if (i) tor += ',';
    tor += inv.torsion[i].get_str();
  }
  emit(out, c.porcelain,
       {{"betti", std::to_string(inv.betti)}, {"torsion", tor}});
  return 0;
}

int cmd_intersection(const Ctx& c, std::ostream& out) {
  std::vector<long> v1 = split_longs(c.arg(1, "first vector"));
  std::vector<long> v2 = split_longs(c.arg(2, "second vector"));
  emit(out, c.porcelain,
       {{"n", std::to_string(intersection_number(v1, v2))}});
  return 0;
}

int cmd_cover_surface(const Ctx& c, std::ostream& out) {
  std::istringstream sin(c.input_text(c.arg(1, "surface file")));
  NamedSurface s = parse_surface(sin);
  std::istringstream vin(c.input_text(c.arg(2, "voltage file")));
  Voltage v = parse_voltage(vin, s.seg_names, s.complex.segs.size());
  SurfaceCover cover = build_surface_cover({s.complex, v});
  emit(out, c.porcelain,
       {{"degree", std::to_string(cover.report.degree)},
        {"points", std::to_string(cover.cover.n_points)},
        {"segments", std::to_string(cover.cover.segs.size())},
        {"faces", std::to_string(cover.cover.faces.size())},
        {"c", std::to_string(characteristic(cover.cover))},
        {"chi", std::to_string(-characteristic(cover.cover))},
        {"order_formula",
         verify_order_formula(cover.report) ? "ok" : "violated"},
        {"riemann_hurwitz",
         riemann_hurwitz_check(s.complex, cover.cover, cover.report)
             ? "ok"
             : "violated"}});
  for (std::size_t f = 0; f < cover.report.per_face.size(); ++f) {
    out << "face " << s.face_names[f] << ":";
    for (const auto& cyc : cover.report.per_face[f])
      out << " l=" << cyc.length << " b=" << cyc.branching_number;
    out << '\n';
  }
  return 0;
}

int cmd_branch_orders(const Ctx& c, std::ostream& out) {
  std::istringstream tin(c.input_text(c.arg(1, "table file")));
  Word core = parse_word(c.arg(2, "relator word"));
  long k = to_long(c.arg(3, "power"));
  auto perms = parse_permutation_list(tin, core.max_gen());
  Presentation free_p;
  free_p.n_generators = core.max_gen();
  CosetTable t = coset_table_from_permutations(free_p, perms);
  auto orders = branching_orders_of_subgroup(t, core, k);
  std::vector<std::pair<std::string, std::string>> kv;
  kv.push_back({"cycles", std::to_string(orders.size())});
  for (std::size_t i = 0; i < orders.size(); ++i)
    kv.push_back({"cycle" + std::to_string(i),
                  "l=" + std::to_string(orders[i].cycle_length) +
                      ",order=" + std::to_string(orders[i].order)});
  emit(out, c.porcelain, kv);
  return 0;
}

int cmd_dehn(const Ctx& c, std::ostream& out) {
  if (!c.has_flag("g")) throw Usage{"dehn needs -g <genus>"};
  int genus = static_cast<int>(to_long(c.flag("g", "")));
  Word w = parse_word(join_rest(c, 1));
  Word reduced = dehn_reduce(w, genus);
  emit(out, c.porcelain,
       {{"identity", reduced.empty() ? "true" : "false"},
        {"reduced", print_word(reduced)}});
  return 0;
}

int cmd_planar_class(const Ctx& c, std::ostream& out) {
  PlanarClass r;
  if (c.pos.size() == 2 && c.pos[1] == "torus") {
    r = classify_planar_group({}, 1, true);
  } else {
    std::vector<long> orders;
    for (std::size_t i = 1; i < c.pos.size(); ++i)
      orders.push_back(to_long(c.pos[i]));
    if (orders.empty()) throw Usage{"planar-class needs branch orders"};
    r = classify_planar_group(orders);
  }
  std::string cls = r.cls == GeometryClass::kSpherical ? "spherical"
                    : r.cls == GeometryClass::kEuclidean ? "euclidean"
                                                         : "hyperbolic";
  std::vector<std::pair<std::string, std::string>> kv = {{"class", cls}};
  if (!r.name.empty()) kv.push_back({"name", r.name});
  emit(out, c.porcelain, kv);
  return 0;
}

void print_usage(std::ostream& err) {
  err << "usage: ctop <subcommand> [--porcelain] [args]\n"
         "  words:     reduce <letters..> | conjugate [--orders a,b] <w1> "
         "<w2> | nf-cyclic --orders a,b <letters..>\n"
         "  matrices:  snf <file|-> | abelian <presentation|-> | "
         "laurent-ed <file|->\n"
         "  subgroups: rs [--simplify] <presentation> <perms> | modular -p "
         "<prime> [--table] | alexander <presentation|->\n"
         "  graphs:    euler <graph|-> | tree <graph|-> | cover-graph "
         "<graph> <voltage> | cayley <perms|-> | petersen <graph|->\n"
         "  surfaces:  validate-surface <surface|-> | classify <surface|-> "
         "| dual <surface|-> | pi1 [--basepoint n] <surface|-> | "
         "intersection <v1> <v2>\n"
         "  coverings: cover-surface <surface> <voltage> | branch-orders "
         "<perms> <word> <k> | dehn -g <genus> <letters..> | planar-class "
         "<orders..|torus>\n";
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, std::istream& in) {
  Ctx c;
  c.stdin_stream = &in;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--porcelain") {
      c.porcelain = true;
    } else if (a.size() > 2 && a.rfind("--", 0) == 0) {
      std::string name = a.substr(2);
      std::string value = "true";
      if (name == "orders" || name == "basepoint") {
        if (i + 1 >= args.size()) {
          err << "usage: --" << name << " needs a value\n";
          return 2;
        }
        value = args[++i];
      }
      c.flags[name] = value;
    } else if (a.size() == 2 && a[0] == '-' &&
               std::isalpha(static_cast<unsigned char>(a[1]))) {
      if (i + 1 >= args.size()) {
        err << "usage: " << a << " needs a value\n";
        return 2;
      }
      c.flags[a.substr(1)] = args[++i];
    } else {
      c.pos.push_back(a);
    }
  }
  if (c.pos.empty()) {
    print_usage(err);
    return 2;
  }
  const std::string& cmd = c.pos[0];
  try {
    if (cmd == "reduce") return cmd_reduce(c, out);
    if (cmd == "conjugate") return cmd_conjugate(c, out);
    if (cmd == "nf-cyclic") return cmd_nf_cyclic(c, out);
    if (cmd == "snf") return cmd_snf(c, out);
    if (cmd == "abelian") return cmd_abelian(c, out);
    if (cmd == "laurent-ed") return cmd_laurent_ed(c, out);
    if (cmd == "rs") return cmd_rs(c, out);
    if (cmd == "modular") return cmd_modular(c, out);
    if (cmd == "alexander") return cmd_alexander(c, out);
    if (cmd == "euler") return cmd_euler(c, out);
    if (cmd == "tree") return cmd_tree(c, out);
    if (cmd == "cover-graph") return cmd_cover_graph(c, out);
    if (cmd == "cayley") return cmd_cayley(c, out);
    if (cmd == "petersen") return cmd_petersen(c, out);
    if (cmd == "validate-surface") return cmd_validate_surface(c, out);
    if (cmd == "classify") return cmd_classify(c, out);
    if (cmd == "dual") return cmd_dual(c, out);
    if (cmd == "pi1") return cmd_pi1(c, out);
    if (cmd == "intersection") return cmd_intersection(c, out);
    if (cmd == "cover-surface") return cmd_cover_surface(c, out);
    if (cmd == "branch-orders") return cmd_branch_orders(c, out);
    if (cmd == "dehn") return cmd_dehn(c, out);
    if (cmd == "planar-class") return cmd_planar_class(c, out);
    err << "unknown subcommand " << cmd << '\n';
    print_usage(err);
    return 2;
  } catch (const Usage& u) {
    err << "usage: " << u.message << '\n';
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ct
