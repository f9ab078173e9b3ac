#pragma once

#include <json.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "endokit/kottwitz.hpp"

namespace endokit {

enum class Format { tsv, json };

inline Format parse_format(const std::string& s) {
  if (s == "tsv") return Format::tsv;
  if (s == "json") return Format::json;
  throw UsageError("unknown report format '" + s + "' (expected tsv or json)");
}

inline std::string class_id(const EndoTriple& t) { return canonical_id(t); }

// Sorted by term id, like terms merged, zero terms dropped.
inline std::vector<SumTerm> canonicalize(const std::vector<SumTerm>& terms) {
  EndoCochainSum s;
  for (const auto& t : terms) s.add(t);
  std::vector<SumTerm> out;
  for (const auto& [id, t] : s.terms()) out.push_back(t);
  return out;
}

inline std::vector<SumTerm> terms_of(const EndoCochainSum& s) {
  std::vector<SumTerm> out;
  for (const auto& [id, t] : s.terms()) out.push_back(t);
  return out;
}

// A table of string cells; rendered with a header row (TSV) or as an array of objects (JSON).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

inline std::string render(const Table& t, Format f) {
  if (f == Format::tsv) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "\t" : "") + cells[i];
      out += "\n";
    };
    line(t.columns);
    for (const auto& r : t.rows) line(r);
    return out;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json o = nlohmann::json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r.at(i);
    rows.push_back(std::move(o));
  }
  nlohmann::json doc = nlohmann::json::object();
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

inline std::string signed_str(const Integer& c) { return (c > 0 ? "+" : "") + c.get_str(); }

inline std::string join_labels(const std::vector<int>& l) {
  std::string s;
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s;
}

template <class V>
std::string join_vec(const V& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

inline Table sum_table(const std::vector<SumTerm>& terms) {
  Table t{{"class", "coefficient"}, {}};
  for (const auto& x : canonicalize(terms)) t.rows.push_back({term_id(x.levi, x.mu, x.class_id), signed_str(x.coeff)});
  return t;
}

inline std::string render(const EndoCochainSum& s, Format f) { return render(sum_table(terms_of(s)), f); }
inline std::string render(const std::vector<SumTerm>& s, Format f) { return render(sum_table(s), f); }

}  // namespace endokit
