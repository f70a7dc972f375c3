#pragma once

// Finite effect algebras: a carrier with a partial sum table, validated
// against axioms E1-E4, plus the derived order, difference and
// orthosupplement.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace effana {

/// Index of an element inside one EffectAlgebra. Labels are display-only.
struct ElementId {
  std::uint32_t index = 0;

  constexpr ElementId() = default;
  constexpr explicit ElementId(std::uint32_t i) : index(i) {}
  constexpr explicit ElementId(std::size_t i) : index(static_cast<std::uint32_t>(i)) {}
  constexpr explicit ElementId(int i) : index(static_cast<std::uint32_t>(i)) {}

  constexpr std::size_t value() const { return index; }
  friend constexpr auto operator<=>(ElementId, ElementId) = default;
};

inline constexpr std::size_t kDefaultMaxSize = 512;

/// Raised for tables that cannot even be interpreted: bad indices, label
/// clashes, conflicting symmetric entries, degenerate or oversized carriers.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw partial operation. `sum` is a dense size*size matrix where
/// kUndefined marks pairs with no sum.
struct EffectAlgebraTable {
  static constexpr std::uint32_t kUndefined = 0xFFFFFFFFu;

  std::vector<std::string> names;
  ElementId zero{0u};
  ElementId unit{1u};
  std::vector<std::uint32_t> sum;

  EffectAlgebraTable() = default;

  EffectAlgebraTable(std::vector<std::string> labels, ElementId z, ElementId u)
      : names(std::move(labels)), zero(z), unit(u),
        sum(names.size() * names.size(), kUndefined) {}

  std::size_t size() const { return names.size(); }

  std::uint32_t at(std::size_t a, std::size_t b) const { return sum[a * size() + b]; }

  /// Records a (+) b = c in both orders.
  void define(ElementId a, ElementId b, ElementId c) {
    sum[a.value() * size() + b.value()] = c.index;
    sum[b.value() * size() + a.value()] = c.index;
  }

  void undefine(ElementId a, ElementId b) {
    sum[a.value() * size() + b.value()] = kUndefined;
    sum[b.value() * size() + a.value()] = kUndefined;
  }
};

enum class Axiom { E1, E2, E3, E4 };

inline const char* axiom_tag(Axiom a) {
  switch (a) {
    case Axiom::E1: return "E1";
    case Axiom::E2: return "E2";
    case Axiom::E3: return "E3";
    case Axiom::E4: return "E4";
  }
  return "?";
}

struct Violation {
  Axiom axiom;
  std::vector<ElementId> elements;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Thrown when a structurally sound table fails E1-E4.
class InvalidAlgebra : public std::runtime_error {
 public:
  explicit InvalidAlgebra(ValidationReport r)
      : std::runtime_error("table violates the effect algebra axioms"), report_(std::move(r)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

namespace detail {

inline void check_structure(const EffectAlgebraTable& t, std::size_t max_size) {
  const std::size_t n = t.size();
  if (n < 2) throw StructuralError("carrier must have at least two elements (0 != 1)");
  if (n > max_size)
    throw StructuralError("carrier size " + std::to_string(n) + " exceeds limit " +
                          std::to_string(max_size));
  if (t.sum.size() != n * n) throw StructuralError("sum matrix has wrong dimensions");
  if (t.zero.value() >= n || t.unit.value() >= n)
    throw StructuralError("zero/unit index out of range");
  if (t.zero == t.unit) throw StructuralError("zero and unit must differ");
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.emplace(t.names[i], i).second)
      throw StructuralError("duplicate label '" + t.names[i] + "'");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto ab = t.at(a, b);
      if (ab != EffectAlgebraTable::kUndefined && ab >= n)
        throw StructuralError("sum(" + t.names[a] + ", " + t.names[b] + ") out of range");
      const auto ba = t.at(b, a);
      if (ab != EffectAlgebraTable::kUndefined && ba != EffectAlgebraTable::kUndefined && ab != ba)
        throw StructuralError("sum(" + t.names[a] + ", " + t.names[b] +
                              ") disagrees with its mirror entry");
    }
  }
}

}  // namespace detail

/// Checks E1-E4 exhaustively. Throws StructuralError for malformed tables;
/// axiom failures are returned, never thrown.
inline ValidationReport validate_axioms(const EffectAlgebraTable& t,
                                        std::size_t max_size = kDefaultMaxSize) {
  detail::check_structure(t, max_size);
  constexpr auto U = EffectAlgebraTable::kUndefined;
  const std::size_t n = t.size();
  ValidationReport report;
  auto id = [](std::size_t i) { return ElementId(i); };

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (t.at(a, b) != U && t.at(b, a) == U)
        report.violations.push_back({Axiom::E1, {id(a), id(b)}});

  // E2: q+r and p+(q+r) defined => p+q and (p+q)+r defined and equal.
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r = 0; r < n; ++r) {
      const auto qr = t.at(q, r);
      if (qr == U) continue;
      for (std::size_t p = 0; p < n; ++p) {
        const auto p_qr = t.at(p, qr);
        if (p_qr == U) continue;
        const auto pq = t.at(p, q);
        if (pq == U || t.at(pq, r) != p_qr)
          report.violations.push_back({Axiom::E2, {id(p), id(q), id(r)}});
      }
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    std::size_t count = 0;
    for (std::size_t q = 0; q < n; ++q)
      if (t.at(a, q) == t.unit.index) ++count;
    if (count != 1) report.violations.push_back({Axiom::E3, {id(a)}});
  }

  for (std::size_t p = 0; p < n; ++p)
    if (p != t.zero.value() && t.at(t.unit.value(), p) != U)
      report.violations.push_back({Axiom::E4, {t.unit, id(p)}});

  return report;
}

/// An immutable, validated effect algebra. All queries are O(1) table reads
/// except orthosum (linear) and atoms (quadratic, precomputed).
class EffectAlgebra {
 public:
  static EffectAlgebra from_table(EffectAlgebraTable table,
                                  std::size_t max_size = kDefaultMaxSize) {
    auto report = validate_axioms(table, max_size);
    if (!report.valid()) throw InvalidAlgebra(std::move(report));
    return EffectAlgebra(std::move(table));
  }

  std::size_t size() const { return table_.size(); }
  ElementId zero() const { return table_.zero; }
  ElementId unit() const { return table_.unit; }
  const EffectAlgebraTable& table() const { return table_; }
  const std::string& name(ElementId a) const { return table_.names[a.value()]; }

  std::optional<ElementId> find(const std::string& label) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (table_.names[i] == label) return ElementId(i);
    return std::nullopt;
  }

  std::optional<ElementId> oplus(ElementId a, ElementId b) const {
    const auto s = table_.at(a.value(), b.value());
    if (s == EffectAlgebraTable::kUndefined) return std::nullopt;
    return ElementId(s);
  }

  bool orthogonal(ElementId a, ElementId b) const {
    return table_.at(a.value(), b.value()) != EffectAlgebraTable::kUndefined;
  }

  /// The unique b with b (+) c = a, when c <= a.
  std::optional<ElementId> ominus(ElementId a, ElementId c) const {
    const auto d = diff_[a.value() * size() + c.value()];
    if (d == EffectAlgebraTable::kUndefined) return std::nullopt;
    return ElementId(d);
  }

  ElementId orthosupplement(ElementId a) const { return ElementId(orthosupp_[a.value()]); }

  bool leq(ElementId a, ElementId b) const { return order_[a.value() * size() + b.value()] != 0; }

  bool less(ElementId a, ElementId b) const { return a != b && leq(a, b); }

  /// Left fold of (+); absent as soon as an intermediate sum is undefined.
  std::optional<ElementId> orthosum(std::span<const ElementId> parts) const {
    ElementId acc = zero();
    for (auto p : parts) {
      auto s = oplus(acc, p);
      if (!s) return std::nullopt;
      acc = *s;
    }
    return acc;
  }

  std::optional<ElementId> orthosum(std::initializer_list<ElementId> parts) const {
    return orthosum(std::span<const ElementId>(parts.begin(), parts.size()));
  }

  /// Minimal elements of L \ {0}, by index.
  const std::vector<ElementId>& atoms() const { return atoms_; }

  /// All b <= a, by index.
  std::vector<ElementId> down_set(ElementId a) const {
    std::vector<ElementId> out;
    for (std::size_t b = 0; b < size(); ++b)
      if (leq(ElementId(b), a)) out.emplace_back(b);
    return out;
  }

  std::vector<ElementId> elements() const {
    std::vector<ElementId> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.emplace_back(i);
    return out;
  }

 private:
  explicit EffectAlgebra(EffectAlgebraTable table) : table_(std::move(table)) {
    const std::size_t n = size();
    order_.assign(n * n, 0);
    diff_.assign(n * n, EffectAlgebraTable::kUndefined);
    orthosupp_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t r = 0; r < n; ++r) {
        const auto s = table_.at(a, r);
        if (s == EffectAlgebraTable::kUndefined) continue;
        order_[a * n + s] = 1;
        diff_[s * n + a] = static_cast<std::uint32_t>(r);
        if (s == table_.unit.index) orthosupp_[a] = static_cast<std::uint32_t>(r);
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (a == zero().value()) continue;
      bool minimal = true;
      for (std::size_t b = 0; b < n && minimal; ++b)
        if (b != a && b != zero().value() && order_[b * n + a]) minimal = false;
      if (minimal) atoms_.emplace_back(a);
    }
  }

  EffectAlgebraTable table_;
  std::vector<char> order_;
  std::vector<std::uint32_t> diff_;
  std::vector<std::uint32_t> orthosupp_;
  std::vector<ElementId> atoms_;
};

inline std::string describe(const EffectAlgebra& L, std::span<const ElementId> ids) {
  std::string out = "(";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += L.name(ids[i]);
  }
  return out + ")";
}

}  // namespace effana
