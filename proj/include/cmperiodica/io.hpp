#pragma once

// File formats: rings, modules, complexes and chain maps as JSON.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmperiodica/complex.hpp"
#include "cmperiodica/module_ops.hpp"

namespace cmperiodica {

using json = nlohmann::ordered_json;

/// An input error located in a file.
class FileError : public InputError {
 public:
  FileError(const std::string& file, std::size_t line, std::size_t column, const std::string& msg)
      : InputError(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        file_(file), line_(line), column_(column) {}
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string file_;
  std::size_t line_, column_;
};

/// Raw text of an input plus its parsed value, for locating errors.
struct Source {
  std::string path;
  std::string text;
  json value;

  std::pair<std::size_t, std::size_t> position(std::size_t offset) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }
  [[noreturn]] void fail_at(std::size_t offset, const std::string& msg) const {
    auto [l, c] = position(offset);
    throw FileError(path, l, c, msg);
  }
  /// Offset of the first occurrence of the string literal s, or of the key, else 0.
  std::size_t find_literal(const std::string& s, std::size_t from = 0) const {
    const std::string lit = json(s).dump();
    auto p = text.find(lit, from);
    return p == std::string::npos ? 0 : p;
  }
  [[noreturn]] void fail_key(const std::string& key, const std::string& msg) const {
    fail_at(find_literal(key), msg);
  }
};

inline Source parse_source(std::string path, std::string text) {
  Source s;
  s.path = std::move(path);
  s.text = std::move(text);
  try {
    s.value = json::parse(s.text);
  } catch (const json::parse_error& e) {
    const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    std::string msg = e.what();
    auto p = msg.find("parse error");
    s.fail_at(off, "malformed JSON: " + (p == std::string::npos ? msg : msg.substr(p)));
  }
  return s;
}

inline Source read_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path, 0, 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_source(path, ss.str());
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- rings

struct FieldSpec {
  bool rational = false;
  std::uint32_t p = 32003;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct RingSpec {
  FieldSpec field;
  std::vector<Variable> variables;
  std::vector<std::string> relations;
  MonomialOrder order = MonomialOrder::grevlex;
  Source source;  // where the relation strings came from
};

inline const json& require_key(const Source& src, const json& obj, const std::string& key) {
  if (!obj.is_object()) src.fail_at(0, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) src.fail_at(0, "missing field '" + key + "'");
  return *it;
}

inline RingSpec ring_spec_from_json(const Source& src, const json& j) {
  RingSpec r;
  r.source = src;
  if (!j.is_object()) src.fail_at(0, "ring descriptor must be an object");
  const json& f = require_key(src, j, "field");
  if (!f.is_object() || !f.contains("kind") || !f["kind"].is_string())
    src.fail_key("field", "field must be {\"kind\": \"prime\", \"p\": n} or {\"kind\": \"rational\"}");
  const std::string kind = f["kind"];
  if (kind == "rational") {
    r.field.rational = true;
  } else if (kind == "prime") {
    if (f.contains("p")) {
      if (!f["p"].is_number_unsigned()) src.fail_key("p", "p must be a positive integer");
      r.field.p = f["p"].get<std::uint32_t>();
    }
  } else {
    src.fail_at(src.find_literal(kind), "unknown field kind '" + kind + "'");
  }
  const json& vars = require_key(src, j, "variables");
  if (!vars.is_array()) src.fail_key("variables", "variables must be a list");
  for (const auto& v : vars) {
    if (!v.is_object() || !v.contains("name") || !v["name"].is_string())
      src.fail_key("variables", "each variable needs a string name");
    Variable var{v["name"].get<std::string>(), 1};
    if (v.contains("degree")) {
      if (!v["degree"].is_number_integer()) src.fail_at(src.find_literal(var.name), "degree must be an integer");
      var.degree = v["degree"].get<int>();
    }
    r.variables.push_back(var);
  }
  if (j.contains("relations")) {
    if (!j["relations"].is_array()) src.fail_key("relations", "relations must be a list of strings");
    for (const auto& s : j["relations"]) {
      if (!s.is_string()) src.fail_key("relations", "relations must be a list of strings");
      r.relations.push_back(s.get<std::string>());
    }
  }
  if (j.contains("order")) {
    const std::string o = j["order"].is_string() ? j["order"].get<std::string>() : "";
    if (o == "grevlex")
      r.order = MonomialOrder::grevlex;
    else if (o == "glex")
      r.order = MonomialOrder::glex;
    else
      src.fail_key("order", "order must be \"grevlex\" or \"glex\"");
  }
  return r;
}

/// Parses s in ring Q, turning a ParseError into a located FileError.
template <class K>
Poly<K> parse_located(const PolyRing<K>& Q, const Source& src, const std::string& s, std::size_t& cursor) {
  std::size_t off = src.find_literal(s, cursor);
  if (off >= cursor) cursor = off + 1;
  try {
    return Q.parse(s);
  } catch (const ParseError& e) {
    src.fail_at(off + e.column(), e.what());  // +1 for the quote, -1 for the 1-based column
  } catch (const InputError& e) {
    src.fail_at(off, e.what());
  }
}

template <class K>
RingPtr<K> build_ring(const RingSpec& spec, K field) {
  try {
    PolyRing<K> Q(std::move(field), spec.variables, spec.order);
    std::vector<Poly<K>> rel;
    std::size_t cursor = 0;
    for (const auto& s : spec.relations) rel.push_back(parse_located(Q, spec.source, s, cursor));
    return make_ring<K>(std::move(Q), std::move(rel));
  } catch (const FileError&) {
    throw;
  } catch (const InputError& e) {
    spec.source.fail_at(0, e.what());
  }
}

inline json field_to_json(const PrimeField& k) { return json{{"kind", "prime"}, {"p", k.characteristic()}}; }
inline json field_to_json(const RationalField&) { return json{{"kind", "rational"}}; }

template <class K>
json ring_to_json(const QuotientRing<K>& A) {
  json j;
  j["field"] = field_to_json(A.field());
  json vars = json::array();
  for (const auto& v : A.base().variables()) vars.push_back(json{{"name", v.name}, {"degree", v.degree}});
  j["variables"] = vars;
  json rel = json::array();
  for (const auto& f : A.relations()) rel.push_back(A.base().to_string(f));
  j["relations"] = rel;
  j["order"] = A.base().order() == MonomialOrder::grevlex ? "grevlex" : "glex";
  return j;
}

/// Calls fn with the field f names (PrimeField or RationalField).
template <class Fn>
auto with_field(const FieldSpec& f, Fn&& fn) {
  if (f.rational) return fn(RationalField());
  return fn(PrimeField(f.p));
}

/// A ring given inline or as a path relative to the referring file.
inline RingSpec ring_reference(const Source& src, const json& j) {
  if (j.is_string()) {
    std::filesystem::path p(j.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(src.path).parent_path() / p;
    Source ring_src = read_source(p.string());
    return ring_spec_from_json(ring_src, ring_src.value);
  }
  return ring_spec_from_json(src, j);
}

// ---------------------------------------------------------------- matrices

template <class K>
json matrix_to_json(const QuotientRing<K>& A, const Matrix<K>& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(A.base().to_string(A.reduce(m(r, c))));
    rows.push_back(row);
  }
  return rows;
}

/// Row-major list of rows of polynomial strings with the given shape.
template <class K>
Matrix<K> matrix_from_json(const QuotientRing<K>& A, const Source& src, const json& j, int rows, int cols,
                           const std::string& what, std::size_t& cursor) {
  if (!j.is_array()) src.fail_at(cursor, what + " must be a list of rows");
  Matrix<K> m(rows, cols);
  if (j.empty() && (rows == 0 || cols == 0)) return m;
  if (static_cast<int>(j.size()) != rows)
    src.fail_at(cursor, what + " has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      src.fail_at(cursor, what + " row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) {
      if (!row[c].is_string()) src.fail_at(cursor, what + " entries must be strings");
      m(r, c) = A.reduce(parse_located(A.base(), src, row[c].get<std::string>(), cursor));
    }
  }
  return m;
}

inline FreeModule free_module_from_json(const Source& src, const json& j, const std::string& what) {
  if (!j.is_array()) src.fail_key(what, what + " must be a list of generator degrees");
  FreeModule f;
  for (const auto& d : j) {
    if (!d.is_number_integer()) src.fail_key(what, what + " degrees must be integers");
    f.degrees.push_back(d.get<int>());
  }
  return f;
}

// ---------------------------------------------------------------- complexes

/// {"ring", "period": n | null, "twist", "start", "modules": [[degrees]...], "differentials": [matrix...]}
template <class K>
json complex_to_json(const FreeComplex<K>& F) {
  json j;
  j["ring"] = ring_to_json(*F.ring);
  j["period"] = F.period ? json(*F.period) : json(nullptr);
  j["twist"] = F.twist;
  j["start"] = F.start;
  json mods = json::array();
  for (const auto& m : F.modules) mods.push_back(m.degrees);
  j["modules"] = mods;
  json ds = json::array();
  for (const auto& d : F.maps) ds.push_back(matrix_to_json(*F.ring, d));
  j["differentials"] = ds;
  return j;
}

inline RingSpec complex_ring_spec(const Source& src) { return ring_reference(src, require_key(src, src.value, "ring")); }

template <class K>
FreeComplex<K> complex_from_json(RingPtr<K> A, const Source& src) {
  const json& j = src.value;
  FreeComplex<K> F;
  F.ring = A;
  const json& per = require_key(src, j, "period");
  if (!per.is_null()) {
    if (!per.is_number_integer() || per.get<int>() <= 0) src.fail_key("period", "period must be a positive integer or null");
    F.period = per.get<int>();
  }
  if (j.contains("twist")) {
    if (!j["twist"].is_number_integer()) src.fail_key("twist", "twist must be an integer");
    F.twist = j["twist"].get<int>();
  }
  if (j.contains("start")) {
    if (!j["start"].is_number_integer()) src.fail_key("start", "start must be an integer");
    F.start = j["start"].get<int>();
  }
  const json& mods = require_key(src, j, "modules");
  if (!mods.is_array() || mods.empty()) src.fail_key("modules", "modules must be a nonempty list");
  for (const auto& m : mods) F.modules.push_back(free_module_from_json(src, m, "modules"));
  const json& ds = require_key(src, j, "differentials");
  if (!ds.is_array()) src.fail_key("differentials", "differentials must be a list of matrices");
  const std::size_t expect = F.period ? F.modules.size() : F.modules.size() - 1;
  if (F.period && static_cast<int>(F.modules.size()) != *F.period)
    src.fail_key("modules", "a periodic complex lists exactly one period of modules");
  if (ds.size() != expect)
    src.fail_key("differentials", "expected " + std::to_string(expect) + " differentials, found " +
                                      std::to_string(ds.size()));
  std::size_t cursor = src.find_literal("differentials");
  for (std::size_t k = 0; k < ds.size(); ++k) {
    const int i = F.start + static_cast<int>(k);
    const int rows = F.period ? F.modules[(k + 1) % F.modules.size()].rank() : F.modules[k + 1].rank();
    F.maps.push_back(matrix_from_json(*A, src, ds[k], rows, F.modules[k].rank(), "d^" + std::to_string(i), cursor));
  }
  return F;
}

// ---------------------------------------------------------------- modules

/// {"kind": "residue"} | {"kind": "cyclic", "ideal": [...]} |
/// {"kind": "presentation", "generators": [degrees], "relations": matrix}; optional "ring".
template <class K>
ModulePresentation<K> module_from_json(RingPtr<K> A, const Source& src) {
  const json& j = src.value;
  const json& kind = require_key(src, j, "kind");
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  std::size_t cursor = 0;
  if (k == "residue") return residue_field_module(A);
  if (k == "cyclic") {
    const json& id = require_key(src, j, "ideal");
    if (!id.is_array()) src.fail_key("ideal", "ideal must be a list of strings");
    std::vector<Poly<K>> gens;
    for (const auto& s : id) {
      if (!s.is_string()) src.fail_key("ideal", "ideal must be a list of strings");
      gens.push_back(parse_located(A->base(), src, s.get<std::string>(), cursor));
    }
    return cyclic_module(A, gens);
  }
  if (k == "presentation") {
    FreeModule g = free_module_from_json(src, require_key(src, j, "generators"), "generators");
    const json& rel = require_key(src, j, "relations");
    int cols = 0;
    if (rel.is_array() && !rel.empty() && rel[0].is_array()) cols = static_cast<int>(rel[0].size());
    cursor = src.find_literal("relations");
    return ModulePresentation<K>(A, g, matrix_from_json(*A, src, rel, g.rank(), cols, "relations", cursor));
  }
  src.fail_key("kind", "module kind must be \"residue\", \"cyclic\" or \"presentation\"");
}

template <class K>
json module_to_json(const ModulePresentation<K>& M) {
  json j;
  j["kind"] = "presentation";
  j["generators"] = M.generators.degrees;
  j["relations"] = matrix_to_json(*M.ring, M.relations);
  return j;
}

// ---------------------------------------------------------------- chain maps

/// {"shift": s, "components": {"i": matrix, ...}} for a map F -> F[s].
template <class K>
ChainMap<K> chain_map_from_json(const FreeComplex<K>& F, const Source& src) {
  const json& j = src.value;
  ChainMap<K> m;
  const json& sh = require_key(src, j, "shift");
  if (!sh.is_number_integer()) src.fail_key("shift", "shift must be an integer");
  m.shift = sh.get<int>();
  const json& comps = require_key(src, j, "components");
  if (!comps.is_object()) src.fail_key("components", "components must map indices to matrices");
  std::size_t cursor = src.find_literal("components");
  for (auto it = comps.begin(); it != comps.end(); ++it) {
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("index");
    } catch (const std::exception&) {
      src.fail_key(it.key(), "component keys must be integers");
    }
    m.components[i] = matrix_from_json(*F.ring, src, it.value(), F.rank(i + m.shift), F.rank(i),
                                       "psi_" + it.key(), cursor);
  }
  return m;
}

template <class K>
json chain_map_to_json(const QuotientRing<K>& A, const ChainMap<K>& m) {
  json j;
  j["shift"] = m.shift;
  json comps = json::object();
  for (const auto& [i, mat] : m.components) comps[std::to_string(i)] = matrix_to_json(A, mat);
  j["components"] = comps;
  return j;
}

}  // namespace cmperiodica
