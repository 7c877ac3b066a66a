#include "ct/textio.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <sstream>

namespace ct {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

Letter parse_letter(const std::string& tok) {
  if (tok.empty()) throw error("empty word token");
  if (tok[0] == 'x' || tok[0] == 'X') {
    if (tok.size() > 1 &&
        std::all_of(tok.begin() + 1, tok.end(),
                    [](char c) { return std::isdigit(c); })) {
      int idx = std::stoi(tok.substr(1));
      if (idx < 1) throw error("generator index must be positive");
      return tok[0] == 'x' ? idx : -idx;
    }
  }
  if (tok.size() == 1 && std::isalpha(static_cast<unsigned char>(tok[0]))) {
    char c = tok[0];
    if (std::islower(static_cast<unsigned char>(c))) return c - 'a' + 1;
    return -(c - 'A' + 1);
  }
  throw error("bad word token: " + tok);
}

std::string letter_name(Letter l) {
  int g = gen_of(l);
  if (g <= 26) {
    char c = static_cast<char>((l > 0 ? 'a' : 'A') + g - 1);
    return std::string(1, c);
  }
  return (l > 0 ? "x" : "X") + std::to_string(g);
}

}  // namespace

Word parse_word(const std::string& text) {
  Word w;
  for (const auto& tok : tokens_of(text)) w.ls.push_back(parse_letter(tok));
  return w;
}

std::string print_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.ls.size(); ++i) {
    if (i) out += ' ';
    out += letter_name(w.ls[i]);
  }
  return out;
}

namespace {

std::string toggle_case(const std::string& name) {
  std::string out = name;
  if (!out.empty() && std::isalpha(static_cast<unsigned char>(out[0]))) {
    unsigned char c = static_cast<unsigned char>(out[0]);
    out[0] = static_cast<char>(std::isupper(c) ? std::tolower(c)
                                               : std::toupper(c));
  }
  return out;
}

}  // namespace

Presentation parse_presentation(std::istream& in) {
  Presentation p;
  std::vector<std::string> names;
  bool have_gens = false;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "gens:") {
      names.assign(toks.begin() + 1, toks.end());
      p.n_generators = static_cast<int>(names.size());
      have_gens = true;
    } else if (toks[0] == "rel:") {
      Word r;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        Letter l = 0;
        for (std::size_t g = 0; g < names.size(); ++g) {
          if (toks[i] == names[g]) l = static_cast<int>(g) + 1;
          if (toks[i] == toggle_case(names[g])) l = -(static_cast<int>(g) + 1);
        }
        if (l == 0) throw error("relator uses unknown generator " + toks[i]);
        r.ls.push_back(l);
      }
      p.relators.push_back(free_reduce(r));
    } else {
      throw error("bad presentation line: " + line);
    }
  }
  if (!have_gens) throw error("presentation file needs a gens: line");
  return p;
}

std::string print_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "gens:";
  for (int g = 1; g <= p.n_generators; ++g) os << ' ' << letter_name(g);
  os << '\n';
  for (const auto& r : p.relators) os << "rel: " << print_word(r) << '\n';
  return os.str();
}

int NamedGraph::point_index(const std::string& name) const {
  for (std::size_t i = 0; i < point_names.size(); ++i)
    if (point_names[i] == name) return static_cast<int>(i);
  throw error("unknown point: " + name);
}

int NamedGraph::seg_index(const std::string& name) const {
  for (std::size_t i = 0; i < seg_names.size(); ++i)
    if (seg_names[i] == name) return static_cast<int>(i);
  throw error("unknown segment: " + name);
}

NamedGraph parse_graph(std::istream& in) {
  NamedGraph g;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "point" && toks.size() == 2) {
      g.point_names.push_back(toks[1]);
      g.graph.add_point();
    } else if (toks[0] == "seg" && toks.size() == 4) {
      g.seg_names.push_back(toks[1]);
      g.graph.add_seg(g.point_index(toks[2]), g.point_index(toks[3]));
    } else {
      throw error("bad graph line: " + line);
    }
  }
  return g;
}

namespace {

Word parse_seg_word(const std::vector<std::string>& toks, std::size_t from,
                    const std::vector<std::string>& seg_names) {
  Word w;
  for (std::size_t i = from; i < toks.size(); ++i) {
    std::string t = toks[i];
    int sign = 1;
    if (t.size() > 1 && t[0] == '-') {
      sign = -1;
      t = t.substr(1);
    }
    bool found = false;
    for (std::size_t s = 0; s < seg_names.size(); ++s)
      if (seg_names[s] == t) {
        w.ls.push_back(sign * (static_cast<int>(s) + 1));
        found = true;
        break;
      }
    if (!found) {
      // Single-letter segment names may use case for direction.
      if (t.size() >= 1 && std::isupper(static_cast<unsigned char>(t[0]))) {
        std::string lower = t;
        lower[0] = static_cast<char>(
            std::tolower(static_cast<unsigned char>(lower[0])));
        for (std::size_t s = 0; s < seg_names.size(); ++s)
          if (seg_names[s] == lower) {
            w.ls.push_back(-sign * (static_cast<int>(s) + 1));
            found = true;
            break;
          }
      }
    }
    if (!found) throw error("unknown segment in word: " + t);
  }
  return w;
}

}  // namespace

NamedSurface parse_surface(std::istream& in) {
  NamedSurface s;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "polygon") {
      std::string rest;
      for (std::size_t i = 1; i < toks.size(); ++i) rest += toks[i] + " ";
      Word w = parse_word(rest);
      s.complex = polygon_complex(w);
      s.point_names = {"p"};
      for (int k = 1; k <= w.max_gen(); ++k)
        s.seg_names.push_back(letter_name(k));
      s.face_names = {"f"};
      return s;
    }
    if (toks[0] == "point" && toks.size() == 2) {
      s.point_names.push_back(toks[1]);
      ++s.complex.n_points;
    } else if (toks[0] == "seg" && toks.size() == 4) {
      s.seg_names.push_back(toks[1]);
      auto idx = [&](const std::string& name) {
        for (std::size_t i = 0; i < s.point_names.size(); ++i)
          if (s.point_names[i] == name) return static_cast<int>(i);
        throw error("unknown point: " + name);
      };
      s.complex.segs.push_back({idx(toks[2]), idx(toks[3])});
    } else if (toks[0] == "face" && toks.size() >= 3) {
      s.face_names.push_back(toks[1]);
      s.complex.faces.push_back(parse_seg_word(toks, 2, s.seg_names));
    } else {
      throw error("bad surface line: " + line);
    }
  }
  return s;
}

std::vector<int> parse_permutation_cycles(const std::string& text, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::string trimmed;
  {
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) trimmed += (trimmed.empty() ? "" : " ") + tok;
  }
  if (trimmed == "id" || trimmed == "()" || trimmed.empty()) return perm;
  const std::string& body = trimmed;
  std::size_t i = 0;
  while (i < body.size()) {
    if (std::isspace(static_cast<unsigned char>(body[i]))) {
      ++i;
      continue;
    }
    if (body[i] != '(') throw error("bad cycle notation: " + body);
    std::size_t close = body.find(')', i);
    if (close == std::string::npos) throw error("unbalanced cycle: " + body);
    std::istringstream is(body.substr(i + 1, close - i - 1));
    std::vector<int> cyc;
    std::string tok;
    while (is >> tok) {
      // allow comma separators
      std::istringstream ts(tok);
      std::string piece;
      while (std::getline(ts, piece, ','))
        if (!piece.empty()) cyc.push_back(std::stoi(piece));
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw error("cycle element out of range");
      perm[a] = b;
    }
    i = close + 1;
  }
  return perm;
}

std::string print_permutation_cycles(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || perm[i] == i) continue;
    os << '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j;
      first = false;
      j = perm[j];
    }
    os << ')';
    any = true;
  }
  if (!any) return "id";
  return os.str();
}

Voltage parse_voltage(std::istream& in, const std::vector<std::string>& segs,
                      std::size_t n_segs) {
  Voltage v;
  v.k = 1;
  std::vector<std::pair<int, std::string>> raw;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "sheets" && toks.size() == 2) {
      v.k = std::stoi(toks[1]);
    } else if (toks[0] == "volt" && toks.size() >= 3) {
      int idx = -1;
      for (std::size_t i = 0; i < segs.size(); ++i)
        if (segs[i] == toks[1]) idx = static_cast<int>(i);
      if (idx < 0) throw error("unknown segment in voltage: " + toks[1]);
      std::string rest;
      for (std::size_t i = 2; i < toks.size(); ++i) rest += toks[i] + " ";
      raw.push_back({idx, rest});
    } else {
      throw error("bad voltage line: " + line);
    }
  }
  if (v.k < 1) throw error("sheet count must be positive");
  v.perm.assign(n_segs, {});
  for (auto& p : v.perm) {
    p.resize(v.k);
    for (int i = 0; i < v.k; ++i) p[i] = i;
  }
  for (const auto& [idx, cyc] : raw)
    v.perm[idx] = parse_permutation_cycles(cyc, v.k);
  return v;
}

Voltage parse_voltage(std::istream& in, const NamedGraph& g) {
  return parse_voltage(in, g.seg_names, g.graph.segs.size());
}

std::vector<std::vector<int>> parse_permutation_list(std::istream& in,
                                                     int n_generators) {
  int n = -1;
  std::map<std::string, std::string> raw;
  std::vector<std::string> order;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "n" && toks.size() == 2) {
      n = std::stoi(toks[1]);
    } else if (toks[0] == "perm" && toks.size() >= 3) {
      std::string rest;
      for (std::size_t i = 2; i < toks.size(); ++i) rest += toks[i] + " ";
      raw[toks[1]] = rest;
      order.push_back(toks[1]);
    } else {
      throw error("bad permutation line: " + line);
    }
  }
  if (n < 1) throw error("permutation file needs an n line");
  std::vector<std::vector<int>> out;
  for (int g = 1; g <= n_generators; ++g) {
    std::string name = letter_name(g);
    auto it = raw.find(name);
    if (it == raw.end()) throw error("missing permutation for " + name);
    out.push_back(parse_permutation_cycles(it->second, n));
  }
  return out;
}

IntMatrix parse_int_matrix(std::istream& in) {
  std::vector<std::vector<mpz_class>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ';', ' ');
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    std::vector<mpz_class> row;
    for (const auto& t : toks) row.push_back(mpz_class(t));
    rows.push_back(row);
  }
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw error("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

LaurentPoly parse_laurent(const std::string& text) {
  LaurentPoly p;
  // terms joined by '+'; each term like 3x^-2, x, -1x^3, 7
  std::string term;
  std::istringstream is(text);
  std::vector<std::string> terms;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '+') {
        terms.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    terms.push_back(cur);
  }
  for (auto t : terms) {
    t.erase(std::remove_if(t.begin(), t.end(),
                           [](char c) {
                             return std::isspace(static_cast<unsigned char>(c));
                           }),
            t.end());
    if (t.empty()) continue;
    if (t == "0") continue;
    std::size_t xpos = t.find('x');
    mpz_class coeff;
    int exp = 0;
    if (xpos == std::string::npos) {
      coeff = mpz_class(t);
    } else {
      std::string c = t.substr(0, xpos);
      if (c.empty())
        coeff = 1;
      else if (c == "-")
        coeff = -1;
      else
        coeff = mpz_class(c);
      std::string e = t.substr(xpos + 1);
      if (e.empty()) {
        exp = 1;
      } else {
        if (e[0] != '^') throw error("bad polynomial term: " + t);
        exp = std::stoi(e.substr(1));
      }
    }
    p.set(exp, p.coeff(exp) + coeff);
  }
  return p;
}

LaurentMatrix parse_laurent_matrix(std::istream& in) {
  std::vector<std::vector<LaurentPoly>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (tokens_of(line).empty()) continue;
    if (!line.empty() && line[0] == '#') continue;
    std::vector<LaurentPoly> row;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ';')) row.push_back(parse_laurent(cell));
    rows.push_back(row);
  }
  LaurentMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw error("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace ct
