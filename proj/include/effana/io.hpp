#pragma once

// JSON file formats.
//
// Algebra:  {"names": [...], "zero": "name", "unit": "name",
//            "sums": [["a", "b", "c"], ...]}
//   each defined a (+) b = c listed once per unordered pair; the loader
//   fills in the mirror entry.
// Measure:  {"algebra": "<path>" | {...}, "dim": d,
//            "values": {"name": [v1, ..., vd], ...}}
//   values must cover every element; for d = 1 a bare number is accepted.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "effana/core.hpp"
#include "effana/measures.hpp"

namespace effana::io {

using nlohmann::json;

/// Unreadable or schema-violating input. `what()` carries file and line.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Minimal JSON scanner mapping a JSON pointer (e.g. "/sums/3/1") to the
/// 1-based line where that value starts. Returns 0 if not found.
class LineLocator {
 public:
  explicit LineLocator(const std::string& text) : s_(text) {}

  std::size_t line_of(const std::string& pointer) {
    target_ = pointer;
    found_ = 0;
    pos_ = 0;
    line_ = 1;
    try {
      value("");
    } catch (const std::exception&) {
    }
    return found_;
  }

 private:
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\') ++pos_;
      if (pos_ < s_.size()) out += s_[pos_++];
    }
    ++pos_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void value(const std::string& path) {
    ws();
    if (path == target_ && !found_) found_ = line_;
    if (pos_ >= s_.size()) throw std::runtime_error("eof");
    const char c = s_[pos_];
    if (c == '{') {
      ++pos_;
      ws();
      if (s_[pos_] == '}') { ++pos_; return; }
      while (true) {
        ws();
        const std::string key = string_token();
        ws();
        ++pos_;  // ':'
        value(path + "/" + escape(key));
        ws();
        if (s_[pos_++] == '}') return;
      }
    } else if (c == '[') {
      ++pos_;
      ws();
      if (s_[pos_] == ']') { ++pos_; return; }
      for (std::size_t i = 0;; ++i) {
        value(path + "/" + std::to_string(i));
        ws();
        if (s_[pos_++] == ']') return;
      }
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < s_.size() && !std::strchr(",]} \t\r\n", s_[pos_])) ++pos_;
    }
  }

  const std::string& s_;
  std::string target_;
  std::size_t found_ = 0;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace detail

/// Parsed JSON plus the source text, so schema errors can cite lines.
struct Document {
  std::string source;  // file name or "<inline>"
  std::string text;
  json root;

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    std::string where = source;
    if (!text.empty()) {
      const auto line = detail::LineLocator(text).line_of(pointer);
      if (line) where += ":" + std::to_string(line);
    }
    throw InputError(where + ": " + (pointer.empty() ? "" : pointer + ": ") + message);
  }
};

inline Document parse_document(std::string text, std::string source = "<inline>") {
  Document doc{std::move(source), std::move(text), {}};
  try {
    doc.root = json::parse(doc.text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < doc.text.size(); ++i)
      if (doc.text[i] == '\n') ++line;
    throw InputError(doc.source + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
  }
  return doc;
}

inline Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

inline Document wrap(json root, std::string source = "<inline>") {
  return Document{std::move(source), {}, std::move(root)};
}

/// Builds the raw table without validating axioms, so that `validate` can
/// report violations instead of failing on them.
inline EffectAlgebraTable table_from_json(const Document& doc) {
  const json& j = doc.root;
  if (!j.is_object()) doc.fail("", "algebra must be a JSON object");
  for (const char* key : {"names", "zero", "unit", "sums"})
    if (!j.contains(key)) doc.fail("", std::string("missing key \"") + key + "\"");
  if (!j["names"].is_array()) doc.fail("/names", "must be an array of strings");

  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < j["names"].size(); ++i) {
    const auto& n = j["names"][i];
    const std::string ptr = "/names/" + std::to_string(i);
    if (!n.is_string()) doc.fail(ptr, "label must be a string");
    if (!index.emplace(n.get<std::string>(), i).second)
      doc.fail(ptr, "duplicate label '" + n.get<std::string>() + "'");
    names.push_back(n.get<std::string>());
  }
  auto lookup = [&](const json& v, const std::string& ptr) {
    if (!v.is_string()) doc.fail(ptr, "element reference must be a string");
    auto it = index.find(v.get<std::string>());
    if (it == index.end()) doc.fail(ptr, "unknown element '" + v.get<std::string>() + "'");
    return ElementId(it->second);
  };
  EffectAlgebraTable t(std::move(names), lookup(j["zero"], "/zero"), lookup(j["unit"], "/unit"));
  if (!j["sums"].is_array()) doc.fail("/sums", "must be an array of [a, b, c] triples");
  for (std::size_t i = 0; i < j["sums"].size(); ++i) {
    const auto& s = j["sums"][i];
    const std::string ptr = "/sums/" + std::to_string(i);
    if (!s.is_array() || s.size() != 3) doc.fail(ptr, "sum entry must be [a, b, c]");
    const auto a = lookup(s[0], ptr + "/0"), b = lookup(s[1], ptr + "/1"), c = lookup(s[2], ptr + "/2");
    if (t.at(a.value(), b.value()) != EffectAlgebraTable::kUndefined)
      doc.fail(ptr, "pair (" + s[0].get<std::string>() + ", " + s[1].get<std::string>() + ") listed twice");
    t.define(a, b, c);
  }
  return t;
}

inline EffectAlgebra algebra_from_json(const Document& doc, std::size_t max_size = kDefaultMaxSize) {
  return EffectAlgebra::from_table(table_from_json(doc), max_size);
}

inline json table_to_json(const EffectAlgebraTable& t) {
  json j;
  j["names"] = t.names;
  j["zero"] = t.names[t.zero.value()];
  j["unit"] = t.names[t.unit.value()];
  json sums = json::array();
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a; b < t.size(); ++b)
      if (auto c = t.at(a, b); c != EffectAlgebraTable::kUndefined)
        sums.push_back({t.names[a], t.names[b], t.names[c]});
  j["sums"] = std::move(sums);
  return j;
}

inline json algebra_to_json(const EffectAlgebra& L) { return table_to_json(L.table()); }

/// Raw values by element index, unvalidated.
inline std::vector<Value> values_from_json(const EffectAlgebra& L, const Document& doc) {
  const json& j = doc.root;
  if (!j.is_object()) doc.fail("", "measure must be a JSON object");
  if (!j.contains("values") || !j["values"].is_object()) doc.fail("", "missing object \"values\"");
  std::size_t dim = 0;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
      doc.fail("/dim", "dim must be a positive integer");
    dim = j["dim"].get<std::size_t>();
  }
  std::vector<Value> values(L.size());
  std::vector<bool> seen(L.size(), false);
  for (const auto& [name, v] : j["values"].items()) {
    const std::string ptr = "/values/" + name;
    auto id = L.find(name);
    if (!id) doc.fail(ptr, "unknown element '" + name + "'");
    std::vector<double> coords;
    if (v.is_number()) {
      coords.push_back(v.get<double>());
    } else if (v.is_array()) {
      for (const auto& c : v) {
        if (!c.is_number()) doc.fail(ptr, "coordinates must be numbers");
        coords.push_back(c.get<double>());
      }
    } else {
      doc.fail(ptr, "value must be a number or an array of numbers");
    }
    if (dim == 0) dim = coords.size();
    if (coords.size() != dim)
      doc.fail(ptr, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(coords.size()));
    values[id->value()] = Value(std::move(coords));
    seen[id->value()] = true;
  }
  for (std::size_t i = 0; i < L.size(); ++i)
    if (!seen[i]) doc.fail("/values", "no value for element '" + L.name(ElementId(i)) + "'");
  return values;
}

inline Measure measure_from_json(const EffectAlgebra& L, const Document& doc,
                                 double tolerance = kDefaultTolerance) {
  return Measure::create(L, values_from_json(L, doc), tolerance);
}

namespace detail {

inline json number(double x) {
  if (x == std::nearbyint(x) && std::fabs(x) < 9.0e15) return json(static_cast<std::int64_t>(x));
  return json(x);
}

inline void dump_to(std::ostringstream& os, const json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  const bool flat = std::none_of(j.begin(), j.end(), [](const json& c) { return c.is_structured(); });
  if (j.is_array() && (j.empty() || flat)) {
    os << "[";
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
    os << "]";
  } else if (j.is_array()) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << pad;
      dump_to(os, j[i], depth + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << close << "]";
  } else if (j.is_object() && !j.empty()) {
    os << "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      os << pad << json(k).dump() << ": ";
      dump_to(os, v, depth + 1);
      os << (++i < j.size() ? ",\n" : "\n");
    }
    os << close << "}";
  } else {
    os << j.dump();
  }
}

}  // namespace detail

/// Pretty-prints with one line per sum triple or coordinate vector.
inline std::string dump(const json& j) {
  std::ostringstream os;
  detail::dump_to(os, j, 0);
  return os.str();
}

inline json measure_to_json(const Measure& mu, const json& algebra_ref = nullptr) {
  json j;
  if (!algebra_ref.is_null()) j["algebra"] = algebra_ref;
  j["dim"] = mu.dim();
  json values = json::object();
  for (auto e : mu.algebra().elements()) {
    const auto& v = mu(e);
    json coords = json::array();
    for (double x : v.coords()) coords.push_back(detail::number(x));
    values[mu.algebra().name(e)] = v.dim() == 1 ? coords[0] : coords;
  }
  j["values"] = std::move(values);
  return j;
}

}  // namespace effana::io
