#pragma once

// Seeded invariant matrix over the algebra constructors and random measures,
// with greedy counterexample minimization.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "effana/constructions.hpp"
#include "effana/core.hpp"
#include "effana/measures.hpp"
#include "effana/rdp.hpp"
#include "effana/symbolic.hpp"
#include "effana/variation.hpp"

namespace effana::properties {

struct Config {
  std::uint64_t seed = 42;
  std::vector<unsigned> sizes{1, 2, 3, 4};
  std::size_t measures_per_algebra = 12;
  double tolerance = kDefaultTolerance;
  std::size_t mutated_tables = 50;  // extra algebras for the axiom-derived laws
  bool inject_fault = false;  // test hook: perturbs the variation solver
};

struct Counterexample {
  std::string invariant;
  std::string algebra_label;
  EffectAlgebraTable table;
  std::vector<Value> values;  // empty for algebra-only invariants
};

struct InvariantTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct Report {
  std::map<std::string, InvariantTally> tallies;  // sorted by invariant id
  std::vector<Counterexample> counterexamples;    // one per failing invariant, minimized
  std::size_t algebras = 0;
  std::size_t total_checks() const {
    std::size_t n = 0;
    for (const auto& [_, t] : tallies) n += t.passed + t.failed;
    return n;
  }
  bool ok() const { return counterexamples.empty(); }
};

struct NamedAlgebra {
  std::string label;
  EffectAlgebra algebra;
};

/// powerset(s) for s <= 5, scale(s), scale(2s), the symbolic restriction of
/// index s, and the six-element half-plane algebra.
inline std::vector<NamedAlgebra> constructor_matrix(const std::vector<unsigned>& sizes) {
  std::vector<NamedAlgebra> out;
  for (unsigned s : sizes) {
    if (s >= 1 && s <= 5) out.push_back({"powerset(" + std::to_string(s) + ")", powerset_algebra(s)});
    if (s >= 1) {
      out.push_back({"scale(" + std::to_string(s) + ")", scale_algebra(s)});
      out.push_back({"scale(" + std::to_string(2 * s) + ")", scale_algebra(2 * s)});
      out.push_back({"symbolic(" + std::to_string(s) + ")", symbolic::symbolic_restriction(s)});
    }
  }
  out.push_back({"example-4.6", example_4_6()});
  return out;
}

/// Identifies the zeros and the units of A and B and keeps everything else
/// apart. The result is always an effect algebra; it lacks RDP whenever both
/// sides have a middle element.
inline EffectAlgebraTable horizontal_sum(const EffectAlgebraTable& A, const EffectAlgebraTable& B) {
  std::vector<std::string> names{A.names[A.zero.value()], A.names[A.unit.value()]};
  std::vector<std::uint32_t> from_a(A.size()), from_b(B.size());
  from_a[A.zero.value()] = from_b[B.zero.value()] = 0;
  from_a[A.unit.value()] = from_b[B.unit.value()] = 1;
  auto fresh = [&](std::string n) {
    while (std::find(names.begin(), names.end(), n) != names.end()) n += "'";
    names.push_back(n);
    return static_cast<std::uint32_t>(names.size() - 1);
  };
  for (std::size_t i = 0; i < A.size(); ++i)
    if (i != A.zero.value() && i != A.unit.value()) from_a[i] = fresh(A.names[i]);
  for (std::size_t i = 0; i < B.size(); ++i)
    if (i != B.zero.value() && i != B.unit.value()) from_b[i] = fresh(B.names[i]);
  EffectAlgebraTable t(std::move(names), ElementId(0u), ElementId(1u));
  auto copy = [&](const EffectAlgebraTable& X, const std::vector<std::uint32_t>& map) {
    for (std::size_t a = 0; a < X.size(); ++a)
      for (std::size_t b = 0; b < X.size(); ++b)
        if (auto c = X.at(a, b); c != EffectAlgebraTable::kUndefined)
          t.define(ElementId(map[a]), ElementId(map[b]), ElementId(map[c]));
  };
  copy(A, from_a);
  copy(B, from_b);
  return t;
}

/// Same algebra, element indices shuffled.
inline EffectAlgebraTable permuted(const EffectAlgebraTable& t, std::mt19937_64& rng) {
  std::vector<std::uint32_t> perm(t.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> names(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) names[perm[i]] = t.names[i];
  EffectAlgebraTable out(std::move(names), ElementId(perm[t.zero.value()]), ElementId(perm[t.unit.value()]));
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b)
      if (auto c = t.at(a, b); c != EffectAlgebraTable::kUndefined)
        out.define(ElementId(perm[a]), ElementId(perm[b]), ElementId(perm[c]));
  return out;
}

/// Redefines or drops one unordered pair. Usually breaks an axiom.
inline EffectAlgebraTable edited(const EffectAlgebraTable& t, std::mt19937_64& rng) {
  auto out = t;
  const ElementId a(static_cast<std::size_t>(rng() % t.size())), b(static_cast<std::size_t>(rng() % t.size()));
  if (rng() % 2 == 0) out.undefine(a, b);
  else out.define(a, b, ElementId(static_cast<std::size_t>(rng() % t.size())));
  return out;
}

/// `count` random tables built from `bases` by one to three mutations
/// (relabeling, single-entry edits, horizontal sums) that still pass E1-E4.
/// Fewer are returned only if the attempt budget runs out.
inline std::vector<NamedAlgebra> mutated_algebras(const std::vector<NamedAlgebra>& bases, std::uint64_t seed,
                                                  std::size_t count, std::size_t max_size = 64) {
  std::vector<NamedAlgebra> out;
  if (bases.empty()) return out;
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; out.size() < count && attempt < 2000 * count; ++attempt) {
    const auto& base = bases[rng() % bases.size()];
    auto t = base.algebra.table();
    std::string label = base.label;
    const std::size_t ops = 1 + rng() % 3;
    for (std::size_t k = 0; k < ops; ++k) {
      switch (rng() % 3) {
        case 0:
          t = permuted(t, rng);
          label += " permuted";
          break;
        case 1:
          t = edited(t, rng);
          label += " edited";
          break;
        default: {
          const auto& other = bases[rng() % bases.size()];
          if (t.size() + other.algebra.size() - 2 > max_size) break;
          t = horizontal_sum(t, other.algebra.table());
          label += " + " + other.label;
        }
      }
    }
    try {
      if (!validate_axioms(t, max_size).valid()) continue;
    } catch (const StructuralError&) {
      continue;
    }
    out.push_back({"mutant " + std::to_string(out.size() + 1) + " (" + label + ")",
                   EffectAlgebra::from_table(std::move(t), max_size)});
  }
  return out;
}

/// Restriction of L to the elements flagged in `keep`; nullopt when the
/// result is not a valid effect algebra.
inline std::optional<EffectAlgebra> restrict_algebra(const EffectAlgebra& L, const std::vector<bool>& keep,
                                                     std::vector<std::size_t>* old_index = nullptr) {
  std::vector<std::size_t> remap(L.size(), static_cast<std::size_t>(-1)), back;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (!keep[i]) continue;
    remap[i] = back.size();
    back.push_back(i);
    names.push_back(L.name(ElementId(i)));
  }
  if (!keep[L.zero().value()] || !keep[L.unit().value()]) return std::nullopt;
  EffectAlgebraTable t(std::move(names), ElementId(remap[L.zero().value()]), ElementId(remap[L.unit().value()]));
  for (std::size_t a : back)
    for (std::size_t b : back)
      if (auto s = L.oplus(ElementId(a), ElementId(b)); s && keep[s->value()])
        t.define(ElementId(remap[a]), ElementId(remap[b]), ElementId(remap[s->value()]));
  try {
    if (!validate_axioms(t).valid()) return std::nullopt;
  } catch (const StructuralError&) {
    return std::nullopt;
  }
  if (old_index) *old_index = back;
  return EffectAlgebra::from_table(std::move(t));
}

/// A check that either holds or fails on one (algebra, measure) instance.
using MeasureCheck = std::function<bool(const Measure&)>;

/// Greedy shrinking: repeatedly drop a pair {x, x^⊥} while the restricted
/// table is still an effect algebra, the restricted values are still a
/// measure, and the check still fails.
inline Counterexample minimize(const std::string& invariant, const std::string& label, const Measure& mu,
                               const MeasureCheck& holds) {
  EffectAlgebra current = mu.algebra();
  std::vector<Value> values = mu.values();
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t x = 0; x < current.size() && !progress; ++x) {
      const ElementId e(x);
      if (e == current.zero() || e == current.unit()) continue;
      std::vector<bool> keep(current.size(), true);
      keep[x] = false;
      keep[current.orthosupplement(e).value()] = false;
      std::vector<std::size_t> back;
      auto smaller = restrict_algebra(current, keep, &back);
      if (!smaller) continue;
      std::vector<Value> restricted;
      for (auto i : back) restricted.push_back(values[i]);
      if (!validate_measure(*smaller, restricted).valid()) continue;
      const auto candidate = Measure::create(*smaller, restricted);
      if (holds(candidate)) continue;
      // `candidate` refers to *smaller; rebuild against the new `current`
      current = std::move(*smaller);
      values = std::move(restricted);
      progress = true;
    }
  }
  return Counterexample{invariant, label, current.table(), values};
}

namespace detail {

inline bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace detail

inline Report run(const Config& cfg) {
  Report rep;
  std::mt19937_64 rng(cfg.seed);
  auto tally = [&](const std::string& id, bool ok) {
    auto& t = rep.tallies[id];
    (ok ? t.passed : t.failed)++;
    return ok;
  };
  auto record_algebra_failure = [&](const std::string& id, const NamedAlgebra& na) {
    for (const auto& c : rep.counterexamples)
      if (c.invariant == id) return;
    rep.counterexamples.push_back({id, na.label, na.algebra.table(), {}});
  };
  auto check_measure = [&](const std::string& id, const NamedAlgebra& na, const Measure& mu,
                           const MeasureCheck& holds) {
    if (tally(id, holds(mu))) return;
    for (const auto& c : rep.counterexamples)
      if (c.invariant == id) return;
    rep.counterexamples.push_back(minimize(id, na.label, mu, holds));
  };

  // laws every algebra passing E1-E4 must satisfy
  auto check_algebra_laws = [&](const NamedAlgebra& na) {
    const auto& L = na.algebra;
    const auto all = L.elements();
    bool order = true;
    for (auto a : all) {
      order &= L.leq(L.zero(), a) && L.leq(a, L.unit()) && L.leq(a, a);
      for (auto b : all) {
        if (L.leq(a, b) && L.leq(b, a) && a != b) order = false;
        for (auto c : all)
          if (L.leq(a, b) && L.leq(b, c) && !L.leq(a, c)) order = false;
      }
    }
    if (!tally("core.partial_order", order)) record_algebra_failure("core.partial_order", na);

    bool cancel = true, positive = true, inverse = true, invol = true;
    for (auto a : all) {
      invol &= L.orthosupplement(L.orthosupplement(a)) == a;
      for (auto b : all) {
        auto ab = L.oplus(a, b);
        if (ab && *ab == L.zero() && (a != L.zero() || b != L.zero())) positive = false;
        auto d = L.ominus(a, b);
        if (d.has_value() != L.leq(b, a)) inverse = false;
        if (d && L.oplus(*d, b) != a) inverse = false;
        for (auto c : all) {
          auto ac = L.oplus(a, c);
          if (ab && ac && *ab == *ac && b != c) cancel = false;
        }
      }
    }
    if (!tally("core.cancellation", cancel)) record_algebra_failure("core.cancellation", na);
    if (!tally("core.positivity", positive)) record_algebra_failure("core.positivity", na);
    if (!tally("core.ominus_inverse", inverse)) record_algebra_failure("core.ominus_inverse", na);
    if (!tally("core.orthosupplement_involution", invol))
      record_algebra_failure("core.orthosupplement_involution", na);
  };

  const auto matrix = constructor_matrix(cfg.sizes);
  for (const auto& na : mutated_algebras(matrix, cfg.seed, cfg.mutated_tables)) {
    ++rep.algebras;
    check_algebra_laws(na);
  }

  for (const auto& na : matrix) {
    ++rep.algebras;
    const auto& L = na.algebra;
    const auto all = L.elements();
    const bool rdp = check_rdp(L).holds;
    check_algebra_laws(na);

    {
      // permutation invariance of orthosums drawn from decompositions of 1
      auto decs = enumerate_decompositions(L, L.unit(), DecompositionMode::multiset);
      bool ok = true;
      for (std::size_t t = 0; t < 8 && !decs.empty(); ++t) {
        auto parts = decs[rng() % decs.size()].parts;
        if (parts.empty()) continue;
        parts.pop_back();  // a proper sub-multiset is still orthogonal
        const auto ref = L.orthosum(parts);
        std::shuffle(parts.begin(), parts.end(), rng);
        if (!ref || L.orthosum(parts) != ref) ok = false;
      }
      if (!tally("core.orthosum_permutation", ok)) record_algebra_failure("core.orthosum_permutation", na);
    }

    if (rdp) {
      bool ok = true;
      for (std::size_t t = 0; t < 16; ++t) {
        const std::size_t len = 1 + rng() % 4;
        std::vector<ElementId> parts;
        ElementId acc = L.zero();
        for (std::size_t k = 0; k < len; ++k) {
          std::vector<ElementId> cand;
          for (auto x : all)
            if (L.orthogonal(acc, x)) cand.push_back(x);
          const auto x = cand[rng() % cand.size()];
          parts.push_back(x);
          acc = *L.oplus(acc, x);
        }
        const auto below = L.down_set(acc);
        const auto c = below[rng() % below.size()];
        auto xs = rdp_decompose(L, c, parts);
        if (!xs || L.orthosum(*xs) != c) { ok = false; continue; }
        for (std::size_t k = 0; k < parts.size(); ++k) ok &= L.leq((*xs)[k], parts[k]);
      }
      if (!tally("rdp.decompose", ok)) record_algebra_failure("rdp.decompose", na);
    }

    const auto basis = find_atomic_basis(L);
    if (rdp && basis) {
      bool ok = true;
      for (auto a : all) ok &= atomic_decompose(L, *basis, a).has_value();
      if (!tally("constructions.atomic_decompose", ok))
        record_algebra_failure("constructions.atomic_decompose", na);
    }

    // -- measures
    for (std::size_t m = 0; m < cfg.measures_per_algebra; ++m) {
      const std::size_t dim = m % 3 == 2 ? 2 : 1;
      const auto kind = m % 2 == 0 ? RandomKind::integer : RandomKind::real;
      const Measure mu = random_measure(L, dim, rng(), kind);
      const double tol = cfg.tolerance;

      check_measure("measures.zero_at_zero", na, mu,
                    [](const Measure& u) { return u(u.algebra().zero()).norm() == 0.0; });
      check_measure("measures.finite_additivity", na, mu, [tol](const Measure& u) {
        const auto& A = u.algebra();
        bool ok = true;
        std::vector<ElementId> parts;
        auto dfs = [&](auto&& self, ElementId acc, Value sum, std::size_t from) -> void {
          if ((u(acc) - sum).norm() > kPartialSumMaxParts * tol) ok = false;
          if (parts.size() == kPartialSumMaxParts) return;
          for (std::size_t i = from; i < A.size(); ++i) {
            if (auto s = A.oplus(acc, ElementId(i))) {
              parts.push_back(ElementId(i));
              self(self, *s, sum + u(ElementId(i)), i + (ElementId(i) == A.zero() ? 1 : 0));
              parts.pop_back();
            }
          }
        };
        dfs(dfs, A.zero(), Value(u.dim()), 0);
        return ok;
      });
      if (rdp && basis) {
        check_measure("measures.atomic_bound", na, mu, [&](const Measure& u) {
          auto b = find_atomic_basis(u.algebra());
          return !b || !check_rdp(u.algebra()).holds || atomic_bound_check(u, *b, tol).holds();
        });
      }

      const bool fault = cfg.inject_fault;
      check_measure("variation.dp_equals_bruteforce", na, mu, [tol, fault](const Measure& u) {
        const auto& A = u.algebra();
        if (A.size() > kBruteforceMaxSize) return true;
        VariationSolver ms(u, DecompositionMode::multiset), ss(u, DecompositionMode::set);
        for (auto e : A.elements()) {
          double dp = ms.value(e);
          if (fault && dp > 0.0) dp += 1e-3;
          if (!detail::near(dp, variation_bruteforce(u, e, DecompositionMode::multiset), tol)) return false;
          if (A.size() <= 16 &&
              !detail::near(ss.value(e), variation_bruteforce(u, e, DecompositionMode::set), tol))
            return false;
        }
        return true;
      });
      check_measure("variation.set_equals_multiset", na, mu, [tol](const Measure& u) {
        VariationSolver ms(u, DecompositionMode::multiset), ss(u, DecompositionMode::set);
        for (auto e : u.algebra().elements())
          if (!detail::near(ms.value(e), ss.value(e), tol)) return false;
        return true;
      });
      check_measure("variation.theorems", na, mu, [tol](const Measure& u) {
        return check_variation_theorems(u, DecompositionMode::multiset, tol).all_pass();
      });
      if (rdp) {
        check_measure("variation.additive_under_rdp", na, mu, [tol](const Measure& u) {
          const auto r = check_variation_theorems(u, DecompositionMode::multiset, tol);
          return !r.rdp || r.find("variation_is_measure")->status == CheckStatus::pass;
        });
      }
    }
  }
  std::sort(rep.counterexamples.begin(), rep.counterexamples.end(),
            [](const Counterexample& a, const Counterexample& b) { return a.invariant < b.invariant; });
  return rep;
}

}  // namespace effana::properties
