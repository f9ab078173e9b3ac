#pragma once

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "endokit/report.hpp"
#include "endokit/spec_io.hpp"

namespace endokit {

namespace cli {

inline RatVec parse_ratvec(const std::string& s, const std::string& what) {
  RatVec v;
  std::vector<Rational> xs;
  for (const auto& tok : detail::split_on(s, ',')) {
    try {
      xs.push_back(parse_rational(detail::trim(tok)));
    } catch (const std::exception&) {
      throw UsageError("--" + what + ": '" + tok + "' is not a rational number");
    }
  }
  return RatVec(xs);
}

inline LatVec parse_latvec(const std::string& s, const std::string& what) {
  auto v = to_lat(parse_ratvec(s, what));
  if (!v) throw UsageError("--" + what + " must have integer entries");
  return *v;
}

inline std::vector<int> parse_levi(const std::string& s) {
  std::vector<int> out;
  if (s.empty() || s == "-") return out;
  for (const auto& tok : detail::split_on(s, ',')) {
    try {
      out.push_back(std::stoi(detail::trim(tok)));
    } catch (const std::exception&) {
      throw UsageError("--levi: '" + tok + "' is not a simple root label");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class V>
void check_rank(const V& v, const GaloisForm& g, const std::string& what) {
  if (v.size() != g.datum().rank())
    throw UsageError("--" + what + " needs " + std::to_string(g.datum().rank()) + " entries");
}

struct Common {
  std::string spec;
  std::string format = "tsv";
  unsigned jobs = 1;
  int max_order = 2;
  bool all = false;
};

inline std::vector<EndoTriple> listing(const AmbientPtr& amb, const Common& c) {
  EnumerateOptions o;
  o.max_order = c.max_order;
  o.elliptic_only = !c.all;
  o.jobs = c.jobs;
  return enumerate_triples(amb, o);
}

inline std::vector<EndoTriple> select(const std::vector<EndoTriple>& list, const std::string& id) {
  if (id.empty()) return list;
  if (std::all_of(id.begin(), id.end(), ::isdigit)) {
    std::size_t i = std::stoul(id);
    if (i >= list.size()) throw UsageError("--class index " + id + " out of range");
    return {list[i]};
  }
  for (const auto& t : list)
    if (canonical_id(t) == id) return {t};
  throw UsageError("--class '" + id + "' not found");
}

}  // namespace cli

// Entry point of the command line tool; returns the process exit code.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace cli;
  CLI::App app{"Endoscopic and Kottwitz-set computations on quasi-split groups", "endokit"};
  app.require_subcommand(1);
  Common c;
  std::string levi, cls, mu, nu, w, b_idx;

  auto common = [&](CLI::App* s) {
    s->add_option("spec", c.spec, "group spec file")->required();
    s->add_option("--format", c.format, "tsv or json");
    s->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--max-order", c.max_order, "order bound for endoscopic elements")->check(CLI::PositiveNumber);
  };
  auto* validate = app.add_subcommand("validate", "check a spec and print its invariants");
  common(validate);
  auto* endo = app.add_subcommand("endoscopy", "list endoscopic classes");
  common(endo);
  endo->add_flag("--all", c.all, "include non-elliptic classes");
  auto* fib = app.add_subcommand("fiber", "embedded data of a class over a Levi");
  common(fib);
  fib->add_option("--levi", levi, "simple root labels, comma separated")->required();
  fib->add_option("--class", cls, "class index or id")->required();
  fib->add_option("--nu", nu, "keep only data admitting an acceptable element for this slope");
  fib->add_flag("--all", c.all, "select among non-elliptic classes too");
  auto* acc = app.add_subcommand("acceptable", "test acceptability of w for slope nu");
  common(acc);
  acc->add_option("--nu", nu, "dominant slope")->required();
  acc->add_option("--w", w, "valuation vector")->required();
  auto* kot = app.add_subcommand("kottwitz", "list B(G, mu)");
  common(kot);
  kot->add_option("--mu", mu, "dominant cocharacter")->required();
  auto* sum = app.add_subcommand("sum-check", "check the sum formula");
  common(sum);
  sum->add_option("--mu", mu, "dominant cocharacter")->required();
  sum->add_option("--class", cls, "class index or id (default: all)");
  sum->add_flag("--all", c.all, "include non-elliptic classes");
  auto* ind = app.add_subcommand("induction-check", "check the induction formula");
  common(ind);
  ind->add_option("--levi", levi, "simple root labels of M_S")->required();
  ind->add_option("--mu", mu, "dominant cocharacter")->required();
  ind->add_option("--b", b_idx, "index into the kottwitz listing")->required();
  ind->add_option("--class", cls, "class index or id (default: all)");
  ind->add_flag("--all", c.all, "include non-elliptic classes");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Format fmt = parse_format(c.format);
    GroupSpec spec = parse_spec_file(c.spec);
    const GaloisForm& g = spec.form;
    Table t;
    int code = 0;

    if (*validate) {
      auto amb = dual_ambient(g);
      t.columns = {"field", "value"};
      t.rows = {{"name", spec.name},
                {"rank", std::to_string(g.datum().rank())},
                {"roots", std::to_string(g.datum().num_roots())},
                {"semisimple_rank", std::to_string(g.datum().semisimple_rank())},
                {"weyl_order", std::to_string(amb->weyl().size())},
                {"galois_order", std::to_string(g.order())},
                {"relative_rank", std::to_string(relative_roots(g).count())}};
    } else if (*endo) {
      auto amb = dual_ambient(g);
      t.columns = {"index", "class", "elliptic", "endoscopic_roots", "out_order"};
      auto list = listing(amb, c);
      for (std::size_t i = 0; i < list.size(); ++i)
        t.rows.push_back({std::to_string(i), canonical_id(list[i]), is_elliptic(list[i]) ? "yes" : "no",
                          std::to_string(list[i].h_roots.size()), std::to_string(out_group(list[i]).order())});
    } else if (*fib) {
      auto amb = dual_ambient(g);
      auto labels = parse_levi(levi);
      if (!g.is_stable(labels)) throw UsageError("--levi is not Galois-stable");
      auto h = select(listing(amb, c), cls).front();
      auto data = fiber(h, labels);
      if (!nu.empty()) {
        RatVec v = parse_ratvec(nu, "nu");
        check_rank(v, g, "nu");
        data = eff_filter(data, slope_datum(g.datum(), v));
      }
      t.columns = {"conjugator", "h_levi_rank", "restricted_class", "inner_classes"};
      for (const auto& e : data)
        t.rows.push_back({detail::word_str(amb->weyl()[e.conjugator].word), std::to_string(e.h_levi.size()),
                          canonical_id(x_map(e)), std::to_string(inner_class_count(e))});
    } else if (*acc) {
      RatVec v = parse_ratvec(nu, "nu"), x = parse_ratvec(w, "w");
      check_rank(v, g, "nu");
      check_rank(x, g, "w");
      bool ok = is_acceptable(g.datum(), v, ValuationElt{x});
      t.columns = {"acceptable"};
      t.rows = {{ok ? "yes" : "no"}};
      code = ok ? 0 : 1;
    } else if (*kot) {
      LatVec m = parse_latvec(mu, "mu");
      check_rank(m, g, "mu");
      auto world = CocharWorld::of_group(g);
      t.columns = {"index", "nu", "levi", "kappa"};
      auto pts = kottwitz_set(world, m);
      for (std::size_t i = 0; i < pts.size(); ++i)
        t.rows.push_back({std::to_string(i), join_vec(pts[i].nu), join_labels(pts[i].levi), join_vec(pts[i].kappa)});
    } else if (*sum) {
      LatVec m = parse_latvec(mu, "mu");
      check_rank(m, g, "mu");
      auto world = CocharWorld::of_group(g);
      auto classes = select(listing(world.dual(), c), cls);
      auto pts = kottwitz_set(world, m);
      t.columns = {"triple", "b", "term", "coefficient"};
      for (const auto& h : classes) {
        std::string id = canonical_id(h);
        auto parts = parallel_map(pts.size(), c.jobs, [&](std::size_t i) { return m_sum(world, h, pts[i], m); });
        for (std::size_t i = 0; i < pts.size(); ++i)
          for (const auto& [tid, term] : parts[i].terms()) t.rows.push_back({id, join_vec(pts[i].nu), tid, signed_str(term.coeff)});
        auto r = verify_sum_formula(world, h, m, c.jobs);
        for (const auto& [tid, term] : r.terms()) t.rows.push_back({id, "residual", tid, signed_str(term.coeff)});
        if (!r.is_zero()) code = 1;
      }
    } else if (*ind) {
      LatVec m = parse_latvec(mu, "mu");
      check_rank(m, g, "mu");
      auto labels = parse_levi(levi);
      auto world = CocharWorld::of_group(g);
      auto pts = kottwitz_set(world, m);
      if (b_idx.empty() || !std::all_of(b_idx.begin(), b_idx.end(), ::isdigit) || std::stoul(b_idx) >= pts.size())
        throw UsageError("--b must index the kottwitz listing (0.." + std::to_string(pts.size()) + ")");
      const auto& b = pts[std::stoul(b_idx)];
      auto classes = select(listing(world.dual(), c), cls);
      t.columns = {"triple", "side", "term", "coefficient"};
      for (const auto& h : classes) {
        std::string id = canonical_id(h);
        auto group = m_sum(world, h, b, m);
        for (const auto& [tid, term] : group.terms())
          t.rows.push_back({id, "group", tid, signed_str(term.coeff)});
        auto r = verify_induction(world, labels, h, b, m, c.jobs);
        for (const auto& [tid, term] : r.terms()) t.rows.push_back({id, "residual", tid, signed_str(term.coeff)});
        if (!r.is_zero()) code = 1;
      }
    }
    out << render(t, fmt);
    return code;
  } catch (const ParseError& e) {
    err << c.spec << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace endokit
