#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "effana/core.hpp"

namespace effana {

inline constexpr const char* kEmptyLabel = "∅";

class SetFamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A family of subsets of a finite universe. Members are given as lists of
/// point labels; `labels`, if non-empty, names each member (otherwise names
/// are generated in set notation).
struct SetFamilySpec {
  std::vector<std::string> universe;
  std::vector<std::vector<std::string>> members;
  std::vector<std::string> labels;
};

namespace detail {

inline std::string set_label(std::uint64_t mask, std::span<const std::string> points) {
  if (mask == 0) return kEmptyLabel;
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(mask >> i & 1u)) continue;
    if (!first) out += ",";
    out += points[i];
    first = false;
  }
  return out + "}";
}

}  // namespace detail

/// Boolean algebra of all subsets of {1..n}; element index == bitmask.
inline EffectAlgebra powerset_algebra(unsigned n, std::size_t max_size = kDefaultMaxSize) {
  if (n < 1 || n > 16) throw std::invalid_argument("powerset_algebra: n must be in [1, 16]");
  const std::size_t size = std::size_t{1} << n;
  if (size > max_size)
    throw StructuralError("powerset_algebra: 2^" + std::to_string(n) + " exceeds size limit " +
                          std::to_string(max_size));
  std::vector<std::string> points;
  for (unsigned i = 1; i <= n; ++i) points.push_back(std::to_string(i));
  std::vector<std::string> names;
  for (std::size_t m = 0; m < size; ++m) names.push_back(detail::set_label(m, points));
  EffectAlgebraTable t(std::move(names), ElementId(0u), ElementId(size - 1));
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = a; b < size; ++b)
      if ((a & b) == 0) t.define(ElementId(a), ElementId(b), ElementId(a | b));
  return EffectAlgebra::from_table(std::move(t), max_size);
}

/// {0, 1/k, ..., 1} with i/k (+) j/k = (i+j)/k iff i + j <= k.
inline EffectAlgebra scale_algebra(unsigned k, std::size_t max_size = kDefaultMaxSize) {
  if (k < 1) throw std::invalid_argument("scale_algebra: k must be >= 1");
  std::vector<std::string> names;
  for (unsigned i = 0; i <= k; ++i) {
    if (i == 0) names.emplace_back("0");
    else if (i == k) names.emplace_back("1");
    else names.push_back(std::to_string(i) + "/" + std::to_string(k));
  }
  EffectAlgebraTable t(std::move(names), ElementId(0u), ElementId(k));
  for (unsigned i = 0; i <= k; ++i)
    for (unsigned j = i; i + j <= k; ++j) t.define(ElementId(i), ElementId(j), ElementId(i + j));
  return EffectAlgebra::from_table(std::move(t), max_size);
}

/// Effect algebra of sets: A (+) B = A u B iff A n B = {} and A u B is a member.
/// Throws SetFamilyError for ill-formed families and InvalidAlgebra when the
/// resulting table fails the axioms.
inline EffectAlgebra set_family_algebra(const SetFamilySpec& spec,
                                        std::size_t max_size = kDefaultMaxSize) {
  const auto& pts = spec.universe;
  if (pts.empty() || pts.size() > 64)
    throw SetFamilyError("universe must have between 1 and 64 points");
  std::map<std::string, unsigned> point_index;
  for (unsigned i = 0; i < pts.size(); ++i)
    if (!point_index.emplace(pts[i], i).second)
      throw SetFamilyError("duplicate point '" + pts[i] + "'");
  if (!spec.labels.empty() && spec.labels.size() != spec.members.size())
    throw SetFamilyError("labels must match members one-to-one");

  const std::uint64_t full = pts.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pts.size()) - 1;
  std::vector<std::uint64_t> masks;
  std::map<std::uint64_t, std::size_t> index_of;
  for (const auto& member : spec.members) {
    std::uint64_t m = 0;
    for (const auto& p : member) {
      auto it = point_index.find(p);
      if (it == point_index.end()) throw SetFamilyError("unknown point '" + p + "'");
      m |= std::uint64_t{1} << it->second;
    }
    if (!index_of.emplace(m, masks.size()).second)
      throw SetFamilyError("duplicate member " + detail::set_label(m, pts));
    masks.push_back(m);
  }
  if (!index_of.contains(0)) throw SetFamilyError("family must contain the empty set");
  if (!index_of.contains(full)) throw SetFamilyError("family must contain the universe");
  for (auto m : masks)
    if (!index_of.contains(full & ~m))
      throw SetFamilyError("family is not closed under complement: missing complement of " +
                           detail::set_label(m, pts));

  std::vector<std::string> names = spec.labels;
  if (names.empty())
    for (auto m : masks) names.push_back(detail::set_label(m, pts));
  EffectAlgebraTable t(std::move(names), ElementId(index_of.at(0)), ElementId(index_of.at(full)));
  for (std::size_t a = 0; a < masks.size(); ++a) {
    for (std::size_t b = a; b < masks.size(); ++b) {
      if (masks[a] & masks[b]) continue;
      auto it = index_of.find(masks[a] | masks[b]);
      if (it != index_of.end()) t.define(ElementId(a), ElementId(b), ElementId(it->second));
    }
  }
  return EffectAlgebra::from_table(std::move(t), max_size);
}

/// The half-plane algebra {∅, X⁺, X⁻, Y⁺, Y⁻, ℝ²}, realized on the four open
/// quadrants: X⁺ = {Q1,Q4}, X⁻ = {Q2,Q3}, Y⁺ = {Q1,Q2}, Y⁻ = {Q3,Q4}.
inline EffectAlgebra example_4_6() {
  SetFamilySpec spec;
  spec.universe = {"Q1", "Q2", "Q3", "Q4"};
  spec.members = {{}, {"Q1", "Q4"}, {"Q2", "Q3"}, {"Q1", "Q2"}, {"Q3", "Q4"}, {"Q1", "Q2", "Q3", "Q4"}};
  spec.labels = {kEmptyLabel, "X⁺", "X⁻", "Y⁺", "Y⁻", "ℝ²"};
  return set_family_algebra(spec);
}

/// True when `basis` is an orthogonal multiset of atoms summing to 1.
inline bool is_atomic_basis(const EffectAlgebra& L, std::span<const ElementId> basis) {
  const auto& atoms = L.atoms();
  for (auto b : basis)
    if (std::find(atoms.begin(), atoms.end(), b) == atoms.end()) return false;
  auto total = L.orthosum(basis);
  return total && *total == L.unit();
}

/// First atomic basis in nondecreasing atom-index order, if any exists.
inline std::optional<std::vector<ElementId>> find_atomic_basis(const EffectAlgebra& L) {
  const auto& atoms = L.atoms();
  std::vector<ElementId> chosen;
  std::set<std::pair<std::size_t, std::uint32_t>> dead;
  auto dfs = [&](auto&& self, std::size_t from, ElementId remaining) -> bool {
    if (remaining == L.zero()) return true;
    if (dead.contains({from, remaining.index})) return false;
    for (std::size_t i = from; i < atoms.size(); ++i) {
      auto rest = L.ominus(remaining, atoms[i]);
      if (!rest) continue;
      chosen.push_back(atoms[i]);
      if (self(self, i, *rest)) return true;
      chosen.pop_back();
    }
    dead.insert({from, remaining.index});
    return false;
  };
  if (dfs(dfs, 0, L.unit())) return chosen;
  return std::nullopt;
}

/// Sub-multiset of `basis` whose orthosum is `a`. Exhaustive search over
/// basis positions with memoized dead (position, remainder) states; picks
/// earlier basis entries first. Throws std::invalid_argument if `basis` is
/// not an atomic basis.
inline std::optional<std::vector<ElementId>> atomic_decompose(const EffectAlgebra& L,
                                                              std::span<const ElementId> basis,
                                                              ElementId a) {
  if (!is_atomic_basis(L, basis))
    throw std::invalid_argument("atomic_decompose: basis must be orthogonal atoms summing to 1");
  std::vector<ElementId> chosen;
  std::set<std::pair<std::size_t, std::uint32_t>> dead;
  auto dfs = [&](auto&& self, std::size_t pos, ElementId remaining) -> bool {
    if (remaining == L.zero()) return true;
    if (pos == basis.size() || dead.contains({pos, remaining.index})) return false;
    if (auto rest = L.ominus(remaining, basis[pos])) {
      chosen.push_back(basis[pos]);
      if (self(self, pos + 1, *rest)) return true;
      chosen.pop_back();
    }
    if (self(self, pos + 1, remaining)) return true;
    dead.insert({pos, remaining.index});
    return false;
  };
  if (dfs(dfs, 0, a)) return chosen;
  return std::nullopt;
}

}  // namespace effana
