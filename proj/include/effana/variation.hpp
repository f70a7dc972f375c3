#pragma once

// Decompositions and the variation |mu|(e) = sup over decompositions of e of
// sum ||mu(e_i)||, with a memoized solver and an enumeration oracle.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "effana/core.hpp"
#include "effana/measures.hpp"
#include "effana/rdp.hpp"

namespace effana {

/// multiset: parts may repeat (1/2 (+) 1/2 = 1 in a scale algebra).
/// set: pairwise distinct parts, as in a literal reading of set notation.
enum class DecompositionMode { multiset, set };

inline const char* mode_name(DecompositionMode m) {
  return m == DecompositionMode::multiset ? "multiset" : "set";
}

struct Decomposition {
  std::vector<ElementId> parts;  // nonzero, sorted by index
  ElementId target;
  DecompositionMode mode = DecompositionMode::multiset;
};

/// Calls visit(parts) once per decomposition of e. Depth-first, parts in
/// nondecreasing (set mode: increasing) index order; e = 0 yields only the
/// empty decomposition.
template <typename Visitor>
void for_each_decomposition(const EffectAlgebra& L, ElementId e, DecompositionMode mode, Visitor&& visit) {
  std::vector<ElementId> parts;
  const std::size_t step = mode == DecompositionMode::multiset ? 0 : 1;
  auto dfs = [&](auto&& self, ElementId remaining, std::size_t from) -> void {
    if (remaining == L.zero()) {
      visit(std::as_const(parts));
      return;
    }
    for (std::size_t i = from; i < L.size(); ++i) {
      const ElementId d(i);
      if (d == L.zero()) continue;
      auto rest = L.ominus(remaining, d);
      if (!rest) continue;
      parts.push_back(d);
      self(self, *rest, i + step);
      parts.pop_back();
    }
  };
  dfs(dfs, e, 0);
}

inline std::vector<Decomposition> enumerate_decompositions(const EffectAlgebra& L, ElementId e,
                                                           DecompositionMode mode) {
  std::vector<Decomposition> out;
  for_each_decomposition(L, e, mode, [&](const std::vector<ElementId>& parts) {
    out.push_back(Decomposition{parts, e, mode});
  });
  return out;
}

inline double norm_sum(const Measure& mu, std::span<const ElementId> parts) {
  std::vector<ElementId> sorted(parts.begin(), parts.end());
  std::sort(sorted.begin(), sorted.end());
  double s = 0.0;
  for (auto p : sorted) s += mu.norm(p);
  return s;
}

struct VariationResult {
  double value = 0.0;
  Decomposition witness;
};

/// Memoized variation over every element of the algebra.
///
/// Multiset mode: V(0) = 0, V(e) = max over nonzero d <= e of
/// ||mu(d)|| + V(e ⊖ d); the tail of any decomposition of e is a
/// decomposition of e ⊖ e_1, so this is exact.
/// Set mode: W(r, j) = best over decompositions of r into distinct parts of
/// index >= j, i.e. max(W(r, j+1), ||mu(j)|| + W(r ⊖ j, j+1)).
/// Ties go to the lowest-index first part.
class VariationSolver {
 public:
  VariationSolver(const Measure& mu, DecompositionMode mode)
      : mu_(mu), L_(mu.algebra()), mode_(mode), n_(L_.size()) {
    if (mode_ == DecompositionMode::multiset) {
      best_.assign(n_, kUnset);
      choice_.assign(n_, kNone);
    } else {
      best_.assign(n_ * (n_ + 1), kUnset);
      choice_.assign(n_ * (n_ + 1), kNone);
    }
  }

  DecompositionMode mode() const { return mode_; }

  VariationResult solve(ElementId e) {
    VariationResult r;
    r.witness.target = e;
    r.witness.mode = mode_;
    r.witness.parts = witness_parts(e);
    r.value = norm_sum(mu_, r.witness.parts);
    return r;
  }

  double value(ElementId e) { return solve(e).value; }

  /// |mu| on every element, by index.
  std::vector<double> table() {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = value(ElementId(i));
    return out;
  }

 private:
  static constexpr double kUnset = -1.0;
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  static constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

  std::vector<ElementId> witness_parts(ElementId e) {
    std::vector<ElementId> parts;
    if (mode_ == DecompositionMode::multiset) {
      multiset_value(e);
      for (ElementId r = e; r != L_.zero();) {
        const ElementId d(choice_[r.value()]);
        parts.push_back(d);
        r = *L_.ominus(r, d);
      }
    } else {
      set_value(e, 0);
      ElementId r = e;
      std::size_t j = 0;
      while (r != L_.zero()) {
        const auto c = choice_[r.value() * (n_ + 1) + j];
        if (c == kNone) {
          ++j;
          continue;
        }
        parts.emplace_back(c);
        r = *L_.ominus(r, ElementId(c));
        j = c + 1;
      }
    }
    std::sort(parts.begin(), parts.end());
    return parts;
  }

  double multiset_value(ElementId e) {
    if (e == L_.zero()) return 0.0;
    double& slot = best_[e.value()];
    if (slot != kUnset) return slot;
    double best = kInfeasible;
    std::uint32_t arg = kNone;
    for (std::size_t i = 0; i < n_; ++i) {
      const ElementId d(i);
      if (d == L_.zero()) continue;
      auto rest = L_.ominus(e, d);
      if (!rest) continue;
      const double v = mu_.norm(d) + multiset_value(*rest);
      if (v > best) {
        best = v;
        arg = static_cast<std::uint32_t>(i);
      }
    }
    choice_[e.value()] = arg;
    return best_[e.value()] = best;
  }

  double set_value(ElementId r, std::size_t j) {
    if (r == L_.zero()) return 0.0;
    if (j >= n_) return kInfeasible;
    const std::size_t key = r.value() * (n_ + 1) + j;
    if (best_[key] != kUnset) return best_[key];
    double best = kInfeasible;
    std::uint32_t arg = kNone;
    const ElementId d(j);
    if (d != L_.zero()) {
      if (auto rest = L_.ominus(r, d)) {
        const double tail = set_value(*rest, j + 1);
        if (tail != kInfeasible) {
          best = mu_.norm(d) + tail;
          arg = static_cast<std::uint32_t>(j);
        }
      }
    }
    const double skip = set_value(r, j + 1);
    if (skip > best) {
      best = skip;
      arg = kNone;
    }
    choice_[key] = arg;
    return best_[key] = best;
  }

  const Measure& mu_;
  const EffectAlgebra& L_;
  DecompositionMode mode_;
  std::size_t n_;
  std::vector<double> best_;
  std::vector<std::uint32_t> choice_;
};

inline VariationResult variation(const Measure& mu, ElementId e,
                                 DecompositionMode mode = DecompositionMode::multiset) {
  return VariationSolver(mu, mode).solve(e);
}

inline constexpr std::size_t kBruteforceMaxSize = 64;

/// Maximum over enumerate_decompositions; the oracle for VariationSolver.
inline double variation_bruteforce(const Measure& mu, ElementId e,
                                   DecompositionMode mode = DecompositionMode::multiset) {
  if (mu.algebra().size() > kBruteforceMaxSize)
    throw std::length_error("variation_bruteforce: carrier larger than " +
                            std::to_string(kBruteforceMaxSize));
  double best = 0.0;
  bool any = false;
  for_each_decomposition(mu.algebra(), e, mode, [&](const std::vector<ElementId>& parts) {
    double s = 0.0;
    for (auto p : parts) s += mu.norm(p);
    if (!any || s > best) best = s;
    any = true;
  });
  return best;
}

// ---------------------------------------------------------------------------
// Theorem checks

enum class CheckStatus { pass, fail, skipped, info };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::info: return "info";
  }
  return "?";
}

struct CheckEntry {
  std::string id;
  std::string title;
  CheckStatus status = CheckStatus::pass;
  std::size_t checked = 0;
  std::string detail;
};

struct TheoremReport {
  bool rdp = false;
  bool exact = false;  // integer scalar measure: compared without tolerance
  DecompositionMode mode = DecompositionMode::multiset;
  std::vector<double> variation;  // |mu| by element index
  std::vector<CheckEntry> entries;

  bool all_pass() const {
    return std::none_of(entries.begin(), entries.end(),
                        [](const CheckEntry& e) { return e.status == CheckStatus::fail; });
  }
  const CheckEntry* find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }
};

namespace detail {

inline std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline std::string pair_str(const EffectAlgebra& L, ElementId a, ElementId b) {
  return "(" + L.name(a) + ", " + L.name(b) + ")";
}

}  // namespace detail

inline constexpr std::size_t kPartialSumMaxParts = 5;

/// Evaluates the variation laws on one measure:
///   super_additivity      |mu|(e) + |mu|(f) <= |mu|(e (+) f)
///   sub_additivity        reverse inequality, only when the algebra has RDP
///   variation_is_measure  additivity of |mu| (required under RDP, else informational)
///   norm_below_variation  ||mu(a)|| <= |mu|(a)
///   monotonicity          a <= b  =>  |mu|(a) <= |mu|(b)
///   sandwich_lower        sup_{b<=a} ||mu(b)|| <= |mu|(a)
///   sandwich_upper        |mu|(a) <= 4 sup_{b<=a} ||mu(b)||, for d in {1, 2}
///   bounded_variation     sup ||mu|| <= |mu|(1) < inf
///   partial_sums          sum ||mu(a_i)|| <= |mu|(+a_i) <= |mu|(1), <= 5 parts
inline TheoremReport check_variation_theorems(const Measure& mu,
                                              DecompositionMode mode = DecompositionMode::multiset,
                                              double tolerance = kDefaultTolerance) {
  using detail::fmt_num;
  using detail::pair_str;
  const auto& L = mu.algebra();
  const std::size_t n = L.size();
  TheoremReport rep;
  rep.mode = mode;
  rep.rdp = check_rdp(L).holds;
  rep.exact = mu.dim() == 1 &&
              std::all_of(mu.values().begin(), mu.values().end(), [](const Value& v) { return v.is_integral(); });
  const double tol = rep.exact ? 0.0 : tolerance;
  VariationSolver solver(mu, mode);
  rep.variation = solver.table();
  const auto& V = rep.variation;
  auto at = [&](ElementId a) { return V[a.value()]; };

  {
    CheckEntry sup{"super_additivity", "|mu|(e) + |mu|(f) <= |mu|(e+f)"};
    CheckEntry sub{"sub_additivity", "|mu|(e+f) <= |mu|(e) + |mu|(f)"};
    CheckEntry meas{"variation_is_measure", "|mu| is additive"};
    double min_slack = std::numeric_limits<double>::infinity(), max_slack = -min_slack, worst_gap = 0.0;
    std::string min_at, max_at, gap_at, sub_fail_at;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        const ElementId ea(a), eb(b);
        auto s = L.oplus(ea, eb);
        if (!s) continue;
        ++sup.checked;
        const double slack = at(*s) - at(ea) - at(eb);
        if (slack < min_slack) { min_slack = slack; min_at = pair_str(L, ea, eb); }
        if (slack > max_slack) { max_slack = slack; max_at = pair_str(L, ea, eb); }
        if (slack < -tol) sup.status = CheckStatus::fail;
        if (std::fabs(slack) > tol && std::fabs(slack) > worst_gap) {
          worst_gap = std::fabs(slack);
          gap_at = pair_str(L, ea, eb) + ": " + fmt_num(at(ea)) + " + " + fmt_num(at(eb)) +
                   " != " + fmt_num(at(*s));
        }
        if (rep.rdp && -slack < -tol && sub_fail_at.empty()) sub_fail_at = pair_str(L, ea, eb);
      }
    }
    sup.detail = "min slack " + fmt_num(min_slack) + " at " + min_at + "; max slack " + fmt_num(max_slack) +
                 " at " + max_at;
    if (rep.rdp) {
      sub.checked = sup.checked;
      sub.status = sub_fail_at.empty() ? CheckStatus::pass : CheckStatus::fail;
      sub.detail = sub_fail_at.empty() ? "holds on every orthogonal pair" : "fails at " + sub_fail_at;
      meas.checked = sup.checked;
      meas.status = worst_gap == 0.0 ? CheckStatus::pass : CheckStatus::fail;
    } else {
      sub.status = CheckStatus::skipped;
      sub.detail = "algebra lacks the Riesz decomposition property";
      meas.checked = sup.checked;
      meas.status = CheckStatus::info;
    }
    meas.detail = worst_gap == 0.0 ? "|mu| is a measure" : "|mu| is not a measure; largest gap at " + gap_at;
    rep.entries.push_back(std::move(sup));
    rep.entries.push_back(std::move(sub));
    rep.entries.push_back(std::move(meas));
  }

  {
    CheckEntry e{"norm_below_variation", "||mu(a)|| <= |mu|(a)"};
    for (auto a : L.elements()) {
      ++e.checked;
      if (mu.norm(a) > at(a) + tol && e.status == CheckStatus::pass) {
        e.status = CheckStatus::fail;
        e.detail = "fails at " + L.name(a);
      }
    }
    rep.entries.push_back(std::move(e));
  }

  {
    CheckEntry e{"monotonicity", "a <= b implies |mu|(a) <= |mu|(b)"};
    for (auto a : L.elements())
      for (auto b : L.elements()) {
        if (!L.leq(a, b)) continue;
        ++e.checked;
        if (at(a) > at(b) + tol && e.status == CheckStatus::pass) {
          e.status = CheckStatus::fail;
          e.detail = "fails at " + pair_str(L, a, b);
        }
      }
    rep.entries.push_back(std::move(e));
  }

  {
    CheckEntry lo{"sandwich_lower", "sup_{b<=a} ||mu(b)|| <= |mu|(a)"};
    CheckEntry hi{"sandwich_upper", "|mu|(a) <= 4 sup_{b<=a} ||mu(b)||"};
    const bool upper_applies = mu.dim() <= 2;
    double max_ratio = 0.0;
    std::string ratio_at;
    for (auto a : L.elements()) {
      double s = 0.0;
      for (auto b : L.down_set(a)) s = std::max(s, mu.norm(b));
      ++lo.checked;
      if (s > at(a) + tol && lo.status == CheckStatus::pass) {
        lo.status = CheckStatus::fail;
        lo.detail = "fails at " + L.name(a);
      }
      if (!upper_applies) continue;
      ++hi.checked;
      if (at(a) > 4.0 * s + tol && hi.status == CheckStatus::pass) {
        hi.status = CheckStatus::fail;
        hi.detail = "fails at " + L.name(a);
      }
      if (s > 0.0 && at(a) / s > max_ratio) {
        max_ratio = at(a) / s;
        ratio_at = L.name(a);
      }
    }
    if (!upper_applies) {
      hi.status = CheckStatus::skipped;
      hi.detail = "only stated for real and complex (d <= 2) measures";
    } else if (hi.status == CheckStatus::pass) {
      hi.detail = "max ratio |mu|(a) / sup " + fmt_num(max_ratio) + (ratio_at.empty() ? "" : " at " + ratio_at);
    }
    rep.entries.push_back(std::move(lo));
    rep.entries.push_back(std::move(hi));
  }

  {
    CheckEntry e{"bounded_variation", "sup ||mu|| <= |mu|(1) < inf"};
    const double total = at(L.unit());
    e.checked = 1;
    if (!std::isfinite(total) || sup_norm(mu) > total + tol) e.status = CheckStatus::fail;
    e.detail = "|mu|(1) = " + fmt_num(total) + ", sup ||mu|| = " + fmt_num(sup_norm(mu));
    rep.entries.push_back(std::move(e));
  }

  {
    CheckEntry e{"partial_sums", "sum ||mu(a_i)|| <= |mu|(+a_i) <= |mu|(1)"};
    const double ptol = static_cast<double>(kPartialSumMaxParts) * tol;
    const double total = at(L.unit());
    std::vector<ElementId> parts;
    auto dfs = [&](auto&& self, ElementId acc, double norms, std::size_t from) -> void {
      if (!parts.empty()) {
        ++e.checked;
        if ((norms > at(acc) + ptol || at(acc) > total + ptol) && e.status == CheckStatus::pass) {
          e.status = CheckStatus::fail;
          e.detail = "fails at " + describe(L, parts);
        }
      }
      if (parts.size() == kPartialSumMaxParts) return;
      for (std::size_t i = from; i < n; ++i) {
        const ElementId p(i);
        if (p == L.zero()) continue;
        auto s = L.oplus(acc, p);
        if (!s) continue;
        parts.push_back(p);
        self(self, *s, norms + mu.norm(p), i);
        parts.pop_back();
      }
    };
    dfs(dfs, L.zero(), 0.0, 0);
    if (e.status == CheckStatus::pass) e.detail = "orthogonal multisets of up to 5 nonzero parts";
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace effana
