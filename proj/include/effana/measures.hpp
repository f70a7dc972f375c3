#pragma once

// Finitely additive measures on finite effect algebras with values in R^d
// (Euclidean norm; complex values are d = 2).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "effana/constructions.hpp"
#include "effana/core.hpp"
#include "effana/detail/rational.hpp"
#include "effana/rdp.hpp"

namespace effana {

inline constexpr double kDefaultTolerance = 1e-9;

class Value {
 public:
  Value() = default;
  explicit Value(std::size_t dim) : coords_(dim, 0.0) {}
  Value(std::initializer_list<double> c) : coords_(c) {}
  explicit Value(std::vector<double> c) : coords_(std::move(c)) {}

  static Value scalar(double v) { return Value{v}; }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  double norm() const {
    if (coords_.size() == 1) return std::fabs(coords_[0]);
    double s = 0.0;
    for (double c : coords_) s += c * c;
    return std::sqrt(s);
  }

  bool is_integral() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](double c) { return std::isfinite(c) && c == std::nearbyint(c); });
  }

  Value& operator+=(const Value& o) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) {
    for (std::size_t i = 0; i < a.coords_.size(); ++i) a.coords_[i] -= b.coords_[i];
    return a;
  }
  friend Value operator*(double s, Value v) {
    for (auto& c : v.coords_) c *= s;
    return v;
  }
  friend bool operator==(const Value&, const Value&) = default;

 private:
  std::vector<double> coords_;
};

/// `lhs` is mu(a (+) b), `rhs` is mu(a) + mu(b).
struct AdditivityViolation {
  ElementId a, b;
  Value lhs, rhs;
};

struct MeasureReport {
  std::vector<AdditivityViolation> violations;
  bool exact = false;  // integer-valued input, compared without tolerance
  bool valid() const { return violations.empty(); }
};

namespace detail {

inline std::size_t common_dim(const EffectAlgebra& L, std::span<const Value> values) {
  if (values.size() != L.size())
    throw std::invalid_argument("measure needs one value per element (" + std::to_string(L.size()) +
                                "), got " + std::to_string(values.size()));
  const std::size_t d = values.empty() ? 0 : values[0].dim();
  if (d == 0) throw std::invalid_argument("measure values must have dimension >= 1");
  for (const auto& v : values)
    if (v.dim() != d) throw std::invalid_argument("dimension mismatch across measure values");
  return d;
}

}  // namespace detail

/// Lists every defined pair (a, b), a <= b by index, with
/// mu(a (+) b) != mu(a) + mu(b). Integer-valued inputs are compared exactly.
inline MeasureReport validate_measure(const EffectAlgebra& L, std::span<const Value> values,
                                      double tolerance = kDefaultTolerance) {
  detail::common_dim(L, values);
  MeasureReport report;
  report.exact = std::all_of(values.begin(), values.end(), [](const Value& v) { return v.is_integral(); });
  const double tol = report.exact ? 0.0 : tolerance;
  for (std::size_t a = 0; a < L.size(); ++a) {
    for (std::size_t b = a; b < L.size(); ++b) {
      auto s = L.oplus(ElementId(a), ElementId(b));
      if (!s) continue;
      const Value rhs = values[a] + values[b];
      if ((values[s->value()] - rhs).norm() > tol)
        report.violations.push_back({ElementId(a), ElementId(b), values[s->value()], rhs});
    }
  }
  return report;
}

class InvalidMeasure : public std::runtime_error {
 public:
  explicit InvalidMeasure(MeasureReport r)
      : std::runtime_error("values are not additive"), report_(std::move(r)) {}
  const MeasureReport& report() const { return report_; }

 private:
  MeasureReport report_;
};

/// A validated measure. Holds a non-owning reference to its algebra, which
/// must outlive it.
class Measure {
 public:
  static Measure create(const EffectAlgebra& L, std::vector<Value> values,
                        double tolerance = kDefaultTolerance) {
    auto report = validate_measure(L, values, tolerance);
    if (!report.valid()) throw InvalidMeasure(std::move(report));
    return Measure(L, std::move(values));
  }

  static Measure scalar(const EffectAlgebra& L, std::span<const double> values,
                        double tolerance = kDefaultTolerance) {
    std::vector<Value> v;
    for (double x : values) v.push_back(Value::scalar(x));
    return create(L, std::move(v), tolerance);
  }

  static Measure zero(const EffectAlgebra& L, std::size_t dim = 1) {
    return Measure(L, std::vector<Value>(L.size(), Value(dim)));
  }

  // a Measure keeps a pointer to its algebra, so temporaries are refused
  static Measure create(EffectAlgebra&&, std::vector<Value>, double = kDefaultTolerance) = delete;
  static Measure scalar(EffectAlgebra&&, std::span<const double>, double = kDefaultTolerance) = delete;
  static Measure zero(EffectAlgebra&&, std::size_t = 1) = delete;

  const EffectAlgebra& algebra() const { return *algebra_; }
  std::size_t dim() const { return values_.front().dim(); }
  const Value& operator()(ElementId a) const { return values_[a.value()]; }
  double norm(ElementId a) const { return values_[a.value()].norm(); }
  const std::vector<Value>& values() const { return values_; }

 private:
  Measure(const EffectAlgebra& L, std::vector<Value> values) : algebra_(&L), values_(std::move(values)) {}

  const EffectAlgebra* algebra_;
  std::vector<Value> values_;
};

inline double sup_norm(const Measure& mu) {
  double best = 0.0;
  for (const auto& v : mu.values()) best = std::max(best, v.norm());
  return best;
}

struct AtomicBoundReport {
  double bound = 0.0;      // sum of ||mu(b)|| over the basis
  double max_ratio = 0.0;  // max ||mu(a)|| / bound (0 when bound == 0)
  ElementId argmax{0u};
  std::vector<ElementId> violations;
  bool holds() const { return violations.empty(); }
};

/// ||mu(a)|| <= sum_b ||mu(b)|| over an atomic basis, for every a. Rejects
/// inputs outside the hypotheses (non-RDP algebra, invalid basis).
inline AtomicBoundReport atomic_bound_check(const Measure& mu, std::span<const ElementId> basis,
                                            double tolerance = kDefaultTolerance) {
  const auto& L = mu.algebra();
  if (!is_atomic_basis(L, basis))
    throw std::invalid_argument("atomic_bound_check: basis must be orthogonal atoms summing to 1");
  if (!check_rdp(L).holds)
    throw std::invalid_argument("atomic_bound_check: algebra does not have the Riesz decomposition property");
  AtomicBoundReport report;
  for (auto b : basis) report.bound += mu.norm(b);
  for (auto a : L.elements()) {
    const double v = mu.norm(a);
    if (v > report.bound + tolerance) report.violations.push_back(a);
    const double ratio = report.bound > 0.0 ? v / report.bound : 0.0;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax = a;
    }
  }
  return report;
}

/// Finite indexed list of measures on one algebra with a common dimension.
class MeasureFamily {
 public:
  explicit MeasureFamily(std::vector<Measure> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("measure family must be nonempty");
    for (const auto& m : members_) {
      if (&m.algebra() != &members_.front().algebra())
        throw std::invalid_argument("measure family members must share one algebra");
      if (m.dim() != members_.front().dim())
        throw std::invalid_argument("measure family members must share one dimension");
    }
  }

  const EffectAlgebra& algebra() const { return members_.front().algebra(); }
  std::size_t size() const { return members_.size(); }
  const Measure& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Measure>& members() const { return members_; }

 private:
  std::vector<Measure> members_;
};

inline double pointwise_bound(const MeasureFamily& family, ElementId a) {
  double best = 0.0;
  for (const auto& m : family.members()) best = std::max(best, m.norm(a));
  return best;
}

inline double uniform_bound(const MeasureFamily& family) {
  double best = 0.0;
  for (const auto& m : family.members()) best = std::max(best, sup_norm(m));
  return best;
}

struct WitnessPick {
  ElementId element;
  std::size_t member;  // index into the family
  double value;        // ||mu_member(element)||
};

struct UnboundednessWitness {
  std::vector<WitnessPick> picks;
};

/// Greedy orthogonal construction: the pick with ordinal k (from 0) is the
/// first pool element b orthogonal to the sum of all earlier picks, paired
/// with the smallest member index above the previous one such that
/// ||mu_i(b)|| > k. Stops after `steps` picks or when nothing qualifies;
/// absent if not even the first pick exists.
inline std::optional<UnboundednessWitness> unboundedness_witness_search(
    const MeasureFamily& family, std::span<const ElementId> pool, std::size_t steps) {
  const auto& L = family.algebra();
  UnboundednessWitness w;
  ElementId acc = L.zero();
  std::size_t next_member = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    std::optional<WitnessPick> pick;
    for (auto b : pool) {
      if (!L.orthogonal(acc, b)) continue;
      for (std::size_t i = next_member; i < family.size(); ++i) {
        const double v = family[i].norm(b);
        if (v > static_cast<double>(k)) {
          pick = WitnessPick{b, i, v};
          break;
        }
      }
      if (pick) break;
    }
    if (!pick) break;
    acc = *L.oplus(acc, pick->element);
    next_member = pick->member + 1;
    w.picks.push_back(*pick);
  }
  if (w.picks.empty()) return std::nullopt;
  return w;
}

enum class RandomKind { real, integer };

/// Basis of the space of scalar measures on L, one vector per free
/// coordinate. Atoms are ordered last so that they become the free
/// coordinates where possible and the rest follows by additivity.
inline std::vector<std::vector<detail::Rational>> measure_space_basis(const EffectAlgebra& L) {
  const std::size_t n = L.size();
  std::vector<std::size_t> column_of(n);
  {
    std::vector<ElementId> order;
    const auto& atoms = L.atoms();
    for (auto e : L.elements())
      if (std::find(atoms.begin(), atoms.end(), e) == atoms.end()) order.push_back(e);
    order.insert(order.end(), atoms.begin(), atoms.end());
    for (std::size_t c = 0; c < n; ++c) column_of[order[c].value()] = c;
  }
  detail::NullSpace ns(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      auto s = L.oplus(ElementId(a), ElementId(b));
      if (!s) continue;
      std::vector<detail::Rational> row(n);
      row[column_of[s->value()]] = row[column_of[s->value()]] + 1;
      row[column_of[a]] = row[column_of[a]] - 1;
      row[column_of[b]] = row[column_of[b]] - 1;
      ns.add_row(std::move(row));
    }
  }
  std::vector<std::vector<detail::Rational>> out;
  for (auto& v : ns.basis()) {
    std::vector<detail::Rational> by_element(n);
    for (std::size_t e = 0; e < n; ++e) by_element[e] = v[column_of[e]];
    out.push_back(std::move(by_element));
  }
  return out;
}

/// Deterministic random measure. Free coordinates get uniform values in
/// [-10, 10] (integers in [-9, 9] for RandomKind::integer, after which the
/// whole measure is scaled to clear denominators).
inline Measure random_measure(const EffectAlgebra& L, std::size_t dim, std::uint64_t seed,
                              RandomKind kind = RandomKind::real) {
  if (dim == 0) throw std::invalid_argument("random_measure: dim must be >= 1");
  const auto basis = measure_space_basis(L);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> real(-10.0, 10.0);
  std::uniform_int_distribution<int> integer(-9, 9);

  std::vector<Value> values(L.size(), Value(dim));
  for (std::size_t d = 0; d < dim; ++d) {
    if (kind == RandomKind::real) {
      for (const auto& v : basis) {
        const double r = real(rng);
        for (std::size_t e = 0; e < L.size(); ++e) values[e][d] += r * v[e].to_double();
      }
    } else {
      std::vector<detail::Rational> acc(L.size());
      for (const auto& v : basis) {
        const detail::Rational r = integer(rng);
        for (std::size_t e = 0; e < L.size(); ++e) acc[e] = acc[e] + r * v[e];
      }
      std::int64_t scale = 1;
      for (const auto& q : acc) scale = std::lcm(scale, q.den());
      for (std::size_t e = 0; e < L.size(); ++e)
        values[e][d] = static_cast<double>((acc[e] * detail::Rational(scale)).num());
    }
  }
  // Float rounding can leave 1e-15 noise in derived coordinates; the real
  // tolerance absorbs it.
  return Measure::create(L, std::move(values));
}

Measure random_measure(EffectAlgebra&&, std::size_t, std::uint64_t, RandomKind = RandomKind::real) = delete;

}  // namespace effana
