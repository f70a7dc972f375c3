#pragma once

// Riesz Decomposition Property: c <= a (+) b  =>  c = c1 (+) c2, c1 <= a, c2 <= b.

#include <optional>
#include <span>
#include <vector>

#include "effana/core.hpp"

namespace effana {

struct RdpWitness {
  ElementId c, a, b;
};

struct RdpReport {
  bool holds = true;
  std::optional<RdpWitness> witness;
  /// Set when a witness was re-checked by an independent exhaustive scan.
  bool witness_verified = false;
};

/// Whether c splits as c1 (+) c2 with c1 <= a, c2 <= b.
inline std::optional<std::pair<ElementId, ElementId>> riesz_split(const EffectAlgebra& L, ElementId c,
                                                                  ElementId a, ElementId b) {
  for (std::size_t i = 0; i < L.size(); ++i) {
    const ElementId c1(i);
    if (!L.leq(c1, a)) continue;
    auto c2 = L.ominus(c, c1);
    if (c2 && L.leq(*c2, b)) return std::pair{c1, *c2};
  }
  return std::nullopt;
}

/// Independent re-check of a failing triple: scans every pair (c1, c2) in
/// L x L through the sum table instead of going through ⊖.
inline bool witness_refutes_rdp(const EffectAlgebra& L, const RdpWitness& w) {
  auto s = L.oplus(w.a, w.b);
  if (!s || !L.leq(w.c, *s)) return false;
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = 0; j < L.size(); ++j) {
      const ElementId c1(i), c2(j);
      if (L.oplus(c1, c2) == w.c && L.leq(c1, w.a) && L.leq(c2, w.b)) return false;
    }
  }
  return true;
}

/// Exhaustive over all orthogonal (a, b) and all c <= a (+) b, in index order
/// (a outermost). On a finite algebra every orthogonal sequence is eventually
/// 0, so this also decides the strong (countable) form.
inline RdpReport check_rdp(const EffectAlgebra& L) {
  RdpReport report;
  const std::size_t n = L.size();
  for (std::size_t ai = 0; ai < n; ++ai) {
    for (std::size_t bi = 0; bi < n; ++bi) {
      const ElementId a(ai), b(bi);
      auto s = L.oplus(a, b);
      if (!s) continue;
      for (std::size_t ci = 0; ci < n; ++ci) {
        const ElementId c(ci);
        if (!L.leq(c, *s) || riesz_split(L, c, a, b)) continue;
        report.holds = false;
        report.witness = RdpWitness{c, a, b};
        report.witness_verified = witness_refutes_rdp(L, *report.witness);
        return report;
      }
    }
  }
  return report;
}

/// Splits c <= parts[0] (+) ... (+) parts[n-1] into x_i <= parts[i] with
/// orthosum c. Peels the last part first, mirroring the left-nested
/// definition of the n-ary sum; each x_i is chosen lowest index first, with
/// backtracking so that non-RDP algebras still get a decomposition when one
/// exists. Absent when the preconditions fail or no decomposition exists.
inline std::optional<std::vector<ElementId>> rdp_decompose(const EffectAlgebra& L, ElementId c,
                                                           std::span<const ElementId> parts) {
  const std::size_t m = parts.size();
  // prefix[k] = parts[0] (+) ... (+) parts[k-1]
  std::vector<ElementId> prefix(m + 1, L.zero());
  for (std::size_t k = 0; k < m; ++k) {
    auto s = L.oplus(prefix[k], parts[k]);
    if (!s) return std::nullopt;
    prefix[k + 1] = *s;
  }
  if (!L.leq(c, prefix[m])) return std::nullopt;

  std::vector<ElementId> out(m, L.zero());
  auto solve = [&](auto&& self, std::size_t k, ElementId target) -> bool {
    if (k == 0) return target == L.zero();
    for (std::size_t i = 0; i < L.size(); ++i) {
      const ElementId x(i);
      if (!L.leq(x, parts[k - 1])) continue;
      auto rest = L.ominus(target, x);
      if (!rest || !L.leq(*rest, prefix[k - 1])) continue;
      out[k - 1] = x;
      if (self(self, k - 1, *rest)) return true;
    }
    return false;
  };
  if (solve(solve, m, c)) return out;
  return std::nullopt;
}

}  // namespace effana
