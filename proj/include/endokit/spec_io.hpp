#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "endokit/galois_form.hpp"

namespace endokit {

struct GroupSpec {
  std::string name;
  GaloisForm form;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline long parse_int(const std::string& tok, int line, const std::string& field) {
  try {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, field, "expected an integer, got '" + tok + "'");
  }
}

inline LatVec parse_vec(const std::string& s, int line, const std::string& field) {
  auto toks = split_ws(s);
  if (toks.empty()) throw ParseError(line, field, "empty vector");
  LatVec v(toks.size());
  for (std::size_t i = 0; i < toks.size(); ++i) v[i] = parse_int(toks[i], line, field);
  return v;
}

// Indecomposable roots positive on the first cocharacter (1, k, k^2, ...) that pairs nonzero with every root.
inline std::vector<LatVec> default_base(const std::vector<LatVec>& roots, std::size_t rank) {
  for (long k = 2;; ++k) {
    LatVec xi(rank);
    Integer p = 1;
    for (std::size_t i = 0; i < rank; ++i, p *= k) xi[i] = p;
    if (std::any_of(roots.begin(), roots.end(), [&](const LatVec& a) { return pair(a, xi) == 0; })) continue;
    std::set<LatVec> pos;
    for (const auto& a : roots)
      if (pair(a, xi) > 0) pos.insert(a);
    std::vector<LatVec> out;
    for (const auto& a : pos) {
      bool sum = false;
      for (const auto& b : pos)
        if (b != a && pos.count(a - b)) sum = true;
      if (!sum) out.push_back(a);
    }
    return out;
  }
}

}  // namespace detail

// Parses a group spec; see docs/spec-format.md for the grammar.
inline GroupSpec parse_spec(const std::string& text) {
  using namespace detail;
  std::string name, family, galois = "split";
  long size = 0, rank = -1;
  int galois_line = 0, builtin_line = 0, rank_line = 0;
  std::vector<LatVec> roots, coroots, simple;
  std::vector<int> orders;
  std::vector<IntMatrix> gammas;
  std::vector<int> gamma_lines, root_lines, simple_lines;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, body, "expected 'key = value'");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (value.empty()) throw ParseError(line, key, "missing value");
    if (key == "name") {
      name = value;
    } else if (key == "builtin") {
      auto toks = split_ws(value);
      if (toks.size() != 2) throw ParseError(line, key, "expected 'FAMILY SIZE'");
      family = toks[0];
      size = parse_int(toks[1], line, key);
      if (size <= 0) throw ParseError(line, key, "size must be positive");
      builtin_line = line;
    } else if (key == "rank") {
      rank = parse_int(value, line, key);
      if (rank < 0) throw ParseError(line, key, "rank must be non-negative");
      rank_line = line;
    } else if (key == "root") {
      auto parts = split_on(value, '|');
      if (parts.size() != 2) throw ParseError(line, key, "expected 'ROOT | COROOT'");
      roots.push_back(parse_vec(parts[0], line, key));
      coroots.push_back(parse_vec(parts[1], line, key));
      root_lines.push_back(line);
    } else if (key == "simple") {
      simple.push_back(parse_vec(value, line, key));
      simple_lines.push_back(line);
    } else if (key == "galois") {
      galois = value;
      galois_line = line;
    } else if (key == "gamma") {
      auto colon = value.find(':');
      if (colon == std::string::npos) throw ParseError(line, key, "expected 'ORDER : ROW ; ROW ...'");
      long order = parse_int(trim(value.substr(0, colon)), line, key);
      if (order <= 0) throw ParseError(line, key, "order must be positive");
      std::vector<LatVec> rows;
      for (const auto& r : split_on(value.substr(colon + 1), ';')) rows.push_back(parse_vec(r, line, key));
      for (const auto& r : rows)
        if (r.size() != rows.size()) throw ParseError(line, key, "matrix must be square");
      orders.push_back(static_cast<int>(order));
      gammas.push_back(IntMatrix::from_rows(rows, rows.size()));
      gamma_lines.push_back(line);
    } else {
      throw ParseError(line, key, "unknown field");
    }
  }

  BasedRootDatum d;
  if (!family.empty()) {
    if (rank >= 0) throw ParseError(rank_line, "rank", "cannot combine 'rank' with 'builtin'");
    if (!roots.empty() || !simple.empty())
      throw ParseError(builtin_line, "builtin", "cannot combine explicit roots with 'builtin'");
    try {
      d = builtin_datum(family, static_cast<std::size_t>(size));
    } catch (const Error& e) {
      throw ParseError(builtin_line, "builtin", e.what());
    }
  } else {
    if (rank < 0) throw ParseError(line, "rank", "either 'builtin' or 'rank' is required");
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (roots[i].size() != static_cast<std::size_t>(rank) || coroots[i].size() != static_cast<std::size_t>(rank))
        throw ParseError(root_lines[i], "root", "expected " + std::to_string(rank) + " coordinates on each side");
    for (std::size_t i = 0; i < simple.size(); ++i)
      if (simple[i].size() != static_cast<std::size_t>(rank))
        throw ParseError(simple_lines[i], "simple", "expected " + std::to_string(rank) + " coordinates");
    if (simple.empty() && !roots.empty()) simple = default_base(roots, static_cast<std::size_t>(rank));
    try {
      d = BasedRootDatum(RootDatum{static_cast<std::size_t>(rank), roots, coroots}, simple, {},
                         name.empty() ? "G" : name);
    } catch (const Error& e) {
      throw ParseError(root_lines.empty() ? rank_line : root_lines.front(), "root", e.what());
    }
  }
  if (!name.empty()) d.set_name(name);

  if (galois != "split" && !gammas.empty())
    throw ParseError(galois_line, "galois", "cannot combine a galois shortcut with 'gamma' lines");
  auto toks = split_ws(galois);
  if (toks.size() == 1 && toks[0] == "split") {
    // explicit gamma lines, if any, define the action
  } else if (toks.size() == 1 && toks[0] == "flip") {
    orders = {2};
    if (family == "GU") {
      const std::size_t n = d.rank() - 1;
      IntMatrix m(n + 1, n + 1);
      for (std::size_t j = 0; j <= n; ++j) m(0, j) = 1;
      for (std::size_t i = 1; i <= n; ++i) m(i, n + 1 - i) = -1;
      gammas = {m};
    } else {
      gammas = {opposition_flip(d)};
    }
  } else if (toks.size() == 2 && toks[0] == "trivial") {
    long n = parse_int(toks[1], galois_line, "galois");
    if (n <= 0) throw ParseError(galois_line, "galois", "order must be positive");
    orders = {static_cast<int>(n)};
    gammas = {IntMatrix::identity(d.rank())};
  } else {
    throw ParseError(galois_line, "galois", "expected 'split', 'flip' or 'trivial N'");
  }
  GroupSpec spec;
  spec.name = d.name();
  try {
    spec.form = GaloisForm(d, orders, gammas, spec.name);
  } catch (const Error& e) {
    int at = gamma_lines.empty() ? galois_line : gamma_lines.front();
    throw ParseError(at, gamma_lines.empty() ? "galois" : "gamma", e.what());
  }
  return spec;
}

inline GroupSpec parse_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace endokit
