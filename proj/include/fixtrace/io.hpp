#pragma once

#include "fixtrace/bicat.hpp"
#include "fixtrace/embedding.hpp"
#include "fixtrace/group_table.hpp"
#include "fixtrace/simplicial.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtrace {

using nlohmann::json;

// Error with a stable machine-readable code; the CLI serializes it into
// the report's error object.
struct CliError : std::runtime_error {
  std::string code;
  CliError(std::string code_, const std::string& message)
      : std::runtime_error(message), code(std::move(code_)) {}
};

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("E_IO", "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw CliError("E_PARSE", path + ": " + e.what());
  }
  return j;
}

// complex file: { "vertices": [labels...], "maximal": [[label,...], ...] }
inline SimplicialComplex parse_complex(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("maximal"))
    throw CliError("E_PARSE", "complex file needs 'vertices' and 'maximal'");
  std::vector<std::string> labels;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw CliError("E_PARSE", "vertex labels must be strings");
    labels.push_back(v.get<std::string>());
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t k = i + 1; k < labels.size(); ++k)
      if (labels[i] == labels[k])
        throw CliError("E_PARSE", "duplicate vertex label: " + labels[i]);
  auto index_of = [&](const std::string& lbl) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == lbl) return static_cast<int>(i);
    throw CliError("E_UNKNOWN_VERTEX", "unknown vertex label: " + lbl);
  };
  std::vector<std::vector<int>> maximal;
  for (const auto& simplex : j.at("maximal")) {
    std::vector<int> s;
    std::ostringstream desc;
    desc << "[";
    for (const auto& v : simplex) {
      if (!v.is_string())
        throw CliError("E_PARSE", "simplex entries must be vertex labels");
      s.push_back(index_of(v.get<std::string>()));
      desc << v.get<std::string>() << " ";
    }
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        if (s[a] == s[b])
          throw CliError("E_BAD_SIMPLEX",
                         "repeated vertex in simplex " + desc.str() + "]");
    maximal.push_back(std::move(s));
  }
  return close_complex(std::move(labels), maximal);
}

// The facets (simplices that are not faces of larger ones), so that
// parse(serialize(K)) == K.
inline json serialize_complex(const SimplicialComplex& k) {
  json j;
  j["vertices"] = k.vertex_labels;
  json maximal = json::array();
  for (int d = k.dim(); d >= 0; --d)
    for (const auto& s : k.simplices[d]) {
      bool is_facet = true;
      for (int e = d + 1; e <= k.dim() && is_facet; ++e)
        for (const auto& big : k.simplices[e]) {
          bool subset = true;
          for (int v : s)
            if (std::find(big.begin(), big.end(), v) == big.end()) {
              subset = false;
              break;
            }
          if (subset) {
            is_facet = false;
            break;
          }
        }
      if (!is_facet) continue;
      json tuple = json::array();
      for (int v : s) tuple.push_back(k.vertex_labels[v]);
      maximal.push_back(std::move(tuple));
    }
  j["maximal"] = std::move(maximal);
  return j;
}

// map file: { "vertex_map": { label: label, ... } }
inline SimplicialMap parse_map(const json& j, const SimplicialComplex& k) {
  if (!j.is_object() || !j.contains("vertex_map"))
    throw CliError("E_PARSE", "map file needs 'vertex_map'");
  SimplicialMap f;
  f.source = &k;
  f.target = &k;
  f.vertex_map.assign(k.vertex_count(), -1);
  for (const auto& [from, to] : j.at("vertex_map").items()) {
    int u = k.vertex_index(from);
    if (u < 0) throw CliError("E_UNKNOWN_VERTEX", "unknown vertex label: " + from);
    if (!to.is_string())
      throw CliError("E_PARSE", "vertex images must be labels");
    int v = k.vertex_index(to.get<std::string>());
    if (v < 0)
      throw CliError("E_UNKNOWN_VERTEX",
                     "unknown vertex label: " + to.get<std::string>());
    f.vertex_map[u] = v;
  }
  for (int u = 0; u < k.vertex_count(); ++u)
    if (f.vertex_map[u] < 0)
      throw CliError("E_PARSE", "vertex_map misses " + k.vertex_labels[u]);
  if (auto violation = validate_simplicial_map(f)) {
    std::ostringstream os;
    os << "image of simplex [";
    for (std::size_t i = 0; i < violation->simplex.size(); ++i)
      os << (i ? " " : "") << k.vertex_labels[violation->simplex[i]];
    os << "] does not span a simplex";
    throw CliError("E_MAP_NOT_SIMPLICIAL", os.str());
  }
  return f;
}

// embedding file:
// { "dimension": 1|2, "coordinates": { label: [rational strings] },
//   "retraction": "radial" | "nearest-star" }
inline EmbeddingData parse_embedding(const json& j, const SimplicialComplex& k) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("coordinates"))
    throw CliError("E_PARSE", "embedding file needs 'dimension' and 'coordinates'");
  EmbeddingData e;
  e.dim = j.at("dimension").get<int>();
  if (e.dim != 1 && e.dim != 2)
    throw CliError("E_DIMENSION", "ambient dimension must be 1 or 2");
  std::string retr = j.value("retraction", std::string("nearest-star"));
  if (retr == "radial") e.retraction = Retraction::Radial;
  else if (retr == "nearest-star") e.retraction = Retraction::NearestStar;
  else throw CliError("E_PARSE", "unknown retraction: " + retr);
  e.coords.assign(k.vertex_count(), {});
  for (const auto& [label, arr] : j.at("coordinates").items()) {
    int v = k.vertex_index(label);
    if (v < 0) throw CliError("E_UNKNOWN_VERTEX", "unknown vertex label: " + label);
    Point p;
    for (const auto& comp : arr) {
      if (!comp.is_string())
        throw CliError("E_BAD_RATIONAL",
                       "coordinates must be rational strings");
      auto q = parse_rational(comp.get<std::string>());
      if (!q)
        throw CliError("E_BAD_RATIONAL",
                       "bad rational: " + comp.get<std::string>());
      p.push_back(*q);
    }
    if (static_cast<int>(p.size()) != e.dim)
      throw CliError("E_DIMENSION", "coordinate arity mismatch at " + label);
    e.coords[v] = std::move(p);
  }
  for (int v = 0; v < k.vertex_count(); ++v)
    if (e.coords[v].empty())
      throw CliError("E_PARSE", "coordinates miss " + k.vertex_labels[v]);
  if (auto err = validate_embedding(k, e)) throw CliError("E_BAD_EMBEDDING", *err);
  return e;
}

// group file: { "elements": [labels...], "table": [[index...]...] }
inline FiniteGroupTable parse_group(const json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("table"))
    throw CliError("E_PARSE", "group file needs 'elements' and 'table'");
  FiniteGroupTable g;
  for (const auto& v : j.at("elements")) g.labels.push_back(v.get<std::string>());
  for (const auto& row : j.at("table")) {
    std::vector<int> r;
    for (const auto& x : row) r.push_back(x.get<int>());
    g.table.push_back(std::move(r));
  }
  if (auto err = validate_group_table(g)) throw CliError("E_BAD_GROUP_TABLE", *err);
  return g;
}

inline json serialize_group(const FiniteGroupTable& g) {
  json j;
  j["elements"] = g.labels;
  j["table"] = g.table;
  return j;
}

// Group-ring string: terms of the form "c*label" (or a bare integer for a
// multiple of the identity), joined by space-separated "+" / "-".
inline RElem parse_ring_element(const std::string& text,
                                const FiniteGroupTable& g) {
  std::istringstream in(text);
  std::string tok;
  RElem out;
  int pending_sign = +1;
  bool expect_term = true;
  bool saw_term = false;
  while (in >> tok) {
    if (tok == "+" || tok == "-") {
      if (expect_term) throw CliError("E_PARSE", "dangling operator in: " + text);
      pending_sign = (tok == "+") ? +1 : -1;
      expect_term = true;
      continue;
    }
    if (!expect_term)
      throw CliError("E_PARSE", "missing operator before '" + tok + "' in: " + text);
    Int coeff = 1;
    std::string label;
    auto star = tok.find('*');
    if (star != std::string::npos) {
      std::string c = tok.substr(0, star);
      label = tok.substr(star + 1);
      try {
        coeff = Int(c);
      } catch (...) {
        throw CliError("E_PARSE", "bad coefficient '" + c + "' in: " + text);
      }
    } else {
      bool integer = !tok.empty() &&
                     tok.find_first_not_of("0123456789+-") == std::string::npos;
      if (integer) {
        try {
          coeff = Int(tok);
          label = g.labels[g.identity];
        } catch (...) {
          integer = false;
        }
      }
      if (!integer) label = tok;  // bare label means coefficient 1
    }
    int elt = g.index_of(label);
    if (elt < 0) throw CliError("E_UNKNOWN_LABEL", "unknown group element: " + label);
    out.add_term(elt, pending_sign > 0 ? coeff : Int(-coeff));
    pending_sign = +1;
    expect_term = false;
    saw_term = true;
  }
  if (expect_term && saw_term)
    throw CliError("E_PARSE", "dangling operator in: " + text);
  // an entirely empty entry or the single token "0" denote zero
  return out;
}

// matrix file: { "entries": [[group-ring strings...], ...] }
inline RMat parse_ring_matrix(const json& j, const FiniteGroupTable& g) {
  if (!j.is_object() || !j.contains("entries"))
    throw CliError("E_PARSE", "matrix file needs 'entries'");
  const auto& rows = j.at("entries");
  int nr = static_cast<int>(rows.size());
  int nc = nr ? static_cast<int>(rows[0].size()) : 0;
  RMat m(nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(rows[i].size()) != nc)
      throw CliError("E_PARSE", "ragged matrix rows");
    for (int jj = 0; jj < nc; ++jj)
      m.at(i, jj) = parse_ring_element(rows[i][jj].get<std::string>(), g);
  }
  return m;
}

inline std::string ring_element_string(const RElem& x, const FiniteGroupTable& g) {
  if (x.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [elt, c] : x.terms) {
    Int mag = abs_int(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    os << mag.str() << "*" << g.labels[elt];
  }
  return os.str();
}

// twist file: { "images": { label: label, ... } }
inline std::vector<int> parse_twist(const json& j, const FiniteGroupTable& g) {
  if (!j.is_object() || !j.contains("images"))
    throw CliError("E_PARSE", "twist file needs 'images'");
  std::vector<int> images(g.order(), -1);
  for (const auto& [from, to] : j.at("images").items()) {
    int a = g.index_of(from);
    if (a < 0) throw CliError("E_UNKNOWN_LABEL", "unknown group element: " + from);
    int b = g.index_of(to.get<std::string>());
    if (b < 0)
      throw CliError("E_UNKNOWN_LABEL",
                     "unknown group element: " + to.get<std::string>());
    images[a] = b;
  }
  for (int a = 0; a < g.order(); ++a)
    if (images[a] < 0)
      throw CliError("E_PARSE", "images miss element " + g.labels[a]);
  if (!is_endomorphism(g, images))
    throw CliError("E_NOT_HOMOMORPHISM", "twist is not a group endomorphism");
  return images;
}

}  // namespace fixtrace
