#pragma once

// The countable effect algebra of subsets of N
//     L = {∅, N} ∪ {B_k : k >= 1} ∪ {B_k^c : k >= 1},
//     B_k = A_1 ∪ A_3 ∪ ... ∪ A_{2k-1} ∪ A_{2k} ∪ A_{2k+2} ∪ ...,
//     A_n = {p_n^m : m >= 1},  p_n the n-th prime,
// with A (+) B = A ∪ B defined iff A ∩ B = ∅ and A ∪ B ∈ L. Membership is
// decided by factoring; non-disjointness comes with explicit prime-power
// witnesses.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "effana/core.hpp"
#include "effana/measures.hpp"

namespace effana::symbolic {

// ---------------------------------------------------------------------------
// Primes

inline constexpr std::size_t kPrimeTableSize = 10000;

/// The first kPrimeTableSize primes, built once.
inline const std::vector<std::uint64_t>& prime_table() {
  static const std::vector<std::uint64_t> primes = [] {
    constexpr std::size_t limit = 105000;  // p_10000 = 104729
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> out;
    out.reserve(kPrimeTableSize);
    for (std::size_t i = 2; i <= limit && out.size() < kPrimeTableSize; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

/// p_n, 1-based.
inline std::uint64_t nth_prime(std::size_t n) {
  const auto& t = prime_table();
  if (n < 1 || n > t.size()) throw std::out_of_range("nth_prime: index " + std::to_string(n) + " outside table");
  return t[n - 1];
}

/// n with p_n = p, or 0 if p is not a prime in the table.
inline std::size_t prime_index(std::uint64_t p) {
  const auto& t = prime_table();
  auto it = std::lower_bound(t.begin(), t.end(), p);
  return it != t.end() && *it == p ? static_cast<std::size_t>(it - t.begin()) + 1 : 0;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

/// base^exp, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(r, base, &r)) return std::nullopt;
  return r;
}

/// Exact integer m-th root when x is a perfect m-th power.
inline std::optional<std::uint64_t> exact_root(std::uint64_t x, unsigned m) {
  const auto guess = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(x), 1.0 / m)));
  for (std::uint64_t r = guess > 2 ? guess - 2 : 1; r <= guess + 2; ++r) {
    auto p = checked_pow(r, m);
    if (p && *p == x) return r;
  }
  return std::nullopt;
}

}  // namespace detail

/// p_n^m, the m-th member of A_n.
struct PrimePowerClass {
  std::size_t prime_index = 1;
  unsigned exponent = 1;

  /// The integer value, when it fits in 64 bits.
  std::optional<std::uint64_t> value() const { return detail::checked_pow(nth_prime(prime_index), exponent); }
  mpz_class big_value() const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), nth_prime(prime_index), exponent);
    return r;
  }
  friend bool operator==(const PrimePowerClass&, const PrimePowerClass&) = default;
};

/// Writes x as p_n^m. nullopt if x is not a prime power (x = 1 included);
/// throws std::out_of_range if it is a power of a prime past the table.
inline std::optional<PrimePowerClass> factor_prime_power(std::uint64_t x) {
  if (x < 2) return std::nullopt;
  for (std::uint64_t p : prime_table()) {
    if (p * p > x) break;
    if (x % p) continue;
    unsigned m = 0;
    while (x % p == 0) { x /= p; ++m; }
    if (x != 1) return std::nullopt;
    return PrimePowerClass{prime_index(p), m};
  }
  // No prime factor in the table up to min(sqrt x, p_max).
  for (unsigned m = 1; m < 64; ++m) {
    auto r = m == 1 ? std::optional<std::uint64_t>(x) : detail::exact_root(x, m);
    if (!r || !detail::is_prime(*r)) continue;
    if (auto n = prime_index(*r)) return PrimePowerClass{n, m};
    throw std::out_of_range("factor_prime_power: " + std::to_string(x) + " is a power of the prime " +
                            std::to_string(*r) + ", beyond the prime table");
  }
  return std::nullopt;
}

/// Same contract for integers of any size.
inline std::optional<PrimePowerClass> factor_prime_power(const mpz_class& x) {
  if (x < 2) return std::nullopt;
  if (mpz_fits_ulong_p(x.get_mpz_t()) && sizeof(unsigned long) == sizeof(std::uint64_t))
    return factor_prime_power(static_cast<std::uint64_t>(x.get_ui()));
  for (std::uint64_t p : prime_table()) {
    if (!mpz_divisible_ui_p(x.get_mpz_t(), p)) continue;
    mpz_class rest;
    mpz_class prime(static_cast<unsigned long>(p));
    const auto m = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t());
    if (rest != 1) return std::nullopt;
    return PrimePowerClass{prime_index(p), static_cast<unsigned>(m)};
  }
  const auto bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  for (unsigned long m = 1; m <= bits; ++m) {
    mpz_class r;
    if (!mpz_root(r.get_mpz_t(), x.get_mpz_t(), m)) continue;
    if (mpz_probab_prime_p(r.get_mpz_t(), 40) == 0) continue;
    throw std::out_of_range("factor_prime_power: " + x.get_str() + " is a power of the prime " + r.get_str() +
                            ", beyond the prime table");
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Elements

enum class Kind { empty, full, b, b_comp };

struct SymbolicElement {
  Kind kind = Kind::empty;
  std::uint64_t k = 0;  // >= 1 for b / b_comp, 0 otherwise

  static SymbolicElement empty() { return {Kind::empty, 0}; }
  static SymbolicElement full() { return {Kind::full, 0}; }
  static SymbolicElement B(std::uint64_t k) { return make(Kind::b, k); }
  static SymbolicElement Bc(std::uint64_t k) { return make(Kind::b_comp, k); }

  std::string name() const {
    switch (kind) {
      case Kind::empty: return "∅";
      case Kind::full: return "ℕ";
      case Kind::b: return "B" + std::to_string(k);
      case Kind::b_comp: return "B" + std::to_string(k) + "ᶜ";
    }
    return "?";
  }

  friend bool operator==(const SymbolicElement&, const SymbolicElement&) = default;

 private:
  static SymbolicElement make(Kind kind, std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("B_k needs k >= 1");
    return {kind, k};
  }
};

inline SymbolicElement orthosupplement(const SymbolicElement& e) {
  switch (e.kind) {
    case Kind::empty: return SymbolicElement::full();
    case Kind::full: return SymbolicElement::empty();
    case Kind::b: return SymbolicElement::Bc(e.k);
    case Kind::b_comp: return SymbolicElement::B(e.k);
  }
  return e;
}

/// A_n ⊆ B_k: n odd with (n+1)/2 <= k, or n even with n/2 >= k.
inline bool class_in_b(std::size_t n, std::uint64_t k) {
  return n % 2 == 1 ? (n + 1) / 2 <= k : n / 2 >= k;
}

/// Membership of every element of A_n (exponent is irrelevant).
inline bool member(const SymbolicElement& e, const PrimePowerClass& x) {
  switch (e.kind) {
    case Kind::empty: return false;
    case Kind::full: return true;
    case Kind::b: return class_in_b(x.prime_index, e.k);
    case Kind::b_comp: return !class_in_b(x.prime_index, e.k);
  }
  return false;
}

/// x >= 1. Non-prime-powers (and 1) lie in no B_k and in every B_k^c.
inline bool member(const SymbolicElement& e, std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("member: x must be >= 1");
  if (e.kind == Kind::empty) return false;
  if (e.kind == Kind::full) return true;
  auto pp = factor_prime_power(x);
  if (!pp) return e.kind == Kind::b_comp;
  return member(e, *pp);
}

inline bool member(const SymbolicElement& e, const mpz_class& x) {
  if (x < 1) throw std::invalid_argument("member: x must be >= 1");
  if (e.kind == Kind::empty) return false;
  if (e.kind == Kind::full) return true;
  auto pp = factor_prime_power(x);
  if (!pp) return e.kind == Kind::b_comp;
  return member(e, *pp);
}

struct DisjointnessAnswer {
  bool disjoint = true;
  std::optional<std::uint64_t> witness;       // p_n, the least element of A_n
  std::optional<std::size_t> witness_class;   // n with A_n ⊆ s ∩ t
};

/// n such that the whole class A_n lies in s ∩ t, when s ∩ t ≠ ∅.
inline std::optional<std::size_t> common_class(const SymbolicElement& s, const SymbolicElement& t) {
  if (s.kind == Kind::empty || t.kind == Kind::empty) return std::nullopt;
  const SymbolicElement* a = &s;
  const SymbolicElement* b = &t;
  // order: full < b < b_comp
  auto rank = [](Kind k) { return k == Kind::full ? 0 : k == Kind::b ? 1 : 2; };
  if (rank(a->kind) > rank(b->kind)) std::swap(a, b);
  if (a->kind == Kind::full) {
    if (b->kind == Kind::b_comp) return 2 * b->k + 1;
    return std::size_t{1};
  }
  if (a->kind == Kind::b && b->kind == Kind::b) return std::size_t{1};  // A_1 ⊆ B_i ∩ B_j
  if (a->kind == Kind::b && b->kind == Kind::b_comp) {
    const auto i = a->k, j = b->k;
    if (i == j) return std::nullopt;
    return i < j ? 2 * i : 2 * i - 1;  // A_{2i} or A_{2i-1} ⊆ B_i ∩ B_j^c
  }
  return 2 * (a->k + b->k) + 1;  // A_{2(i+j)+1} ⊆ B_i^c ∩ B_j^c
}

/// Decides s ∩ t = ∅. Every witness is re-checked with member().
inline DisjointnessAnswer disjoint(const SymbolicElement& s, const SymbolicElement& t) {
  DisjointnessAnswer ans;
  auto n = common_class(s, t);
  if (!n) return ans;
  ans.disjoint = false;
  ans.witness_class = *n;
  ans.witness = nth_prime(*n);
  if (!member(s, *ans.witness) || !member(t, *ans.witness))
    throw std::logic_error("disjoint: witness " + std::to_string(*ans.witness) + " failed membership");
  return ans;
}

inline std::optional<SymbolicElement> sym_oplus(const SymbolicElement& s, const SymbolicElement& t) {
  if (s.kind == Kind::empty) return t;
  if (t.kind == Kind::empty) return s;
  const bool complementary = s.k == t.k && ((s.kind == Kind::b && t.kind == Kind::b_comp) ||
                                            (s.kind == Kind::b_comp && t.kind == Kind::b));
  if (complementary) return SymbolicElement::full();
  return std::nullopt;
}

inline std::optional<SymbolicElement> sym_orthosum(const std::vector<SymbolicElement>& parts) {
  SymbolicElement acc = SymbolicElement::empty();
  for (const auto& p : parts) {
    auto s = sym_oplus(acc, p);
    if (!s) return std::nullopt;
    acc = *s;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Orthogonality case table

struct CaseRow {
  std::string pair;
  bool orthogonal = false;
  std::size_t instances = 0;  // concrete index instances checked
  bool verified = true;       // disjoint(), sym_oplus() and witnesses agree with the row
};

struct OrthogonalityCertificate {
  std::vector<CaseRow> cases;
  std::size_t orthogonal_cases() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(),
                                                  [](const CaseRow& r) { return r.orthogonal; }));
  }
  bool verified() const {
    return std::all_of(cases.begin(), cases.end(), [](const CaseRow& r) { return r.verified; });
  }
  /// Largest number of non-∅ members an orthogonal multiset can have.
  std::size_t max_nonempty_members = 2;
};

/// Case analysis over element kinds and index relations, each row checked on
/// every instance with indices <= imax. Only two rows are orthogonal: ∅ with
/// anything, and B_k with B_k^c. Since B_k (+) B_k^c = ℕ and ℕ (+) x needs
/// x = ∅, an orthogonal multiset has at most two non-∅ members.
inline OrthogonalityCertificate orthogonal_pairs_certificate(std::uint64_t imax = 20) {
  using E = SymbolicElement;
  OrthogonalityCertificate cert;
  auto row = [&](std::string label, bool orth, const std::vector<std::pair<E, E>>& inst) {
    CaseRow r{std::move(label), orth, inst.size(), true};
    for (const auto& [s, t] : inst) {
      const bool sum_defined = sym_oplus(s, t).has_value();
      const auto d = disjoint(s, t);
      if (sum_defined != orth || d.disjoint != orth) r.verified = false;
    }
    cert.cases.push_back(std::move(r));
  };
  std::vector<E> all{E::empty(), E::full()};
  for (std::uint64_t i = 1; i <= imax; ++i) {
    all.push_back(E::B(i));
    all.push_back(E::Bc(i));
  }
  std::vector<std::pair<E, E>> inst;
  for (const auto& x : all) inst.emplace_back(E::empty(), x);
  row("∅ with any element", true, inst);

  row("ℕ, ℕ", false, {{E::full(), E::full()}});
  std::vector<std::pair<E, E>> fb, fbc, bb_same, bb_diff, bbc_same, bbc_diff, cc_same, cc_diff;
  for (std::uint64_t i = 1; i <= imax; ++i) {
    fb.emplace_back(E::full(), E::B(i));
    fbc.emplace_back(E::full(), E::Bc(i));
    bb_same.emplace_back(E::B(i), E::B(i));
    bbc_same.emplace_back(E::B(i), E::Bc(i));
    cc_same.emplace_back(E::Bc(i), E::Bc(i));
    for (std::uint64_t j = 1; j <= imax; ++j) {
      if (i == j) continue;
      bb_diff.emplace_back(E::B(i), E::B(j));
      bbc_diff.emplace_back(E::B(i), E::Bc(j));
      cc_diff.emplace_back(E::Bc(i), E::Bc(j));
    }
  }
  row("ℕ, B_i", false, fb);
  row("ℕ, B_i^c", false, fbc);
  row("B_i, B_i", false, bb_same);
  row("B_i, B_j (i != j)", false, bb_diff);
  row("B_i, B_i^c", true, bbc_same);
  row("B_i, B_j^c (i != j)", false, bbc_diff);
  row("B_i^c, B_i^c", false, cc_same);
  row("B_i^c, B_j^c (i != j)", false, cc_diff);

  // the only non-∅ pair sums to ℕ, and ℕ (+) x is defined only for x = ∅
  for (const auto& x : all) {
    if (x.kind == Kind::empty) continue;
    if (sym_oplus(E::full(), x)) cert.cases.front().verified = false;
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Measures

/// mu(∅) = mu(ℕ) = 0, mu(B_n) = n, mu(B_n^c) = -n.
inline double mu_ex23(const SymbolicElement& e) {
  switch (e.kind) {
    case Kind::b: return static_cast<double>(e.k);
    case Kind::b_comp: return -static_cast<double>(e.k);
    default: return 0.0;
  }
}

/// mu_i(B_n) = i [n = i], mu_i(B_n^c) = -i [n = i], 0 on ∅ and ℕ.
inline double mu_ex33(std::uint64_t i, const SymbolicElement& e) {
  if (i < 1) throw std::invalid_argument("mu_ex33: i must be >= 1");
  if (e.k != i) return 0.0;
  if (e.kind == Kind::b) return static_cast<double>(i);
  if (e.kind == Kind::b_comp) return -static_cast<double>(i);
  return 0.0;
}

struct BoundRow {
  std::uint64_t i;
  double sup_norm;        // sup over L of |mu_i|
  double pointwise_at_b;  // max over j <= N of |mu_j(B_i)|
};

/// Bounds of mu_1..mu_N evaluated on all elements with indices <= N.
inline std::vector<BoundRow> truncated_bound_table(std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("truncated_bound_table: N must be >= 1");
  std::vector<BoundRow> rows;
  for (std::uint64_t i = 1; i <= N; ++i) {
    double sup = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n)
      sup = std::max({sup, std::fabs(mu_ex33(i, SymbolicElement::B(n))),
                      std::fabs(mu_ex33(i, SymbolicElement::Bc(n)))});
    double pw = 0.0;
    for (std::uint64_t j = 1; j <= N; ++j) pw = std::max(pw, std::fabs(mu_ex33(j, SymbolicElement::B(i))));
    rows.push_back({i, sup, pw});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Finite restriction to indices <= N

/// Index layout: 0 = ∅, 1 = ℕ, 1+k = B_k, 1+N+k = B_k^c.
inline SymbolicElement restriction_element(std::uint64_t N, ElementId id) {
  const std::uint64_t i = id.value();
  if (i == 0) return SymbolicElement::empty();
  if (i == 1) return SymbolicElement::full();
  if (i <= N + 1) return SymbolicElement::B(i - 1);
  return SymbolicElement::Bc(i - 1 - N);
}

inline ElementId restriction_id(std::uint64_t N, const SymbolicElement& e) {
  switch (e.kind) {
    case Kind::empty: return ElementId(0u);
    case Kind::full: return ElementId(1u);
    case Kind::b: return ElementId(static_cast<std::size_t>(1 + e.k));
    case Kind::b_comp: return ElementId(static_cast<std::size_t>(1 + N + e.k));
  }
  return ElementId(0u);
}

/// The subalgebra {∅, ℕ, B_k, B_k^c : k <= N} as a table of size 2N + 2,
/// with sums taken from sym_oplus.
inline EffectAlgebra symbolic_restriction(std::uint64_t N, std::size_t max_size = kDefaultMaxSize) {
  if (N < 1) throw std::invalid_argument("symbolic_restriction: N must be >= 1");
  const std::size_t size = static_cast<std::size_t>(2 * N + 2);
  if (size > max_size) throw StructuralError("symbolic_restriction: 2N+2 exceeds size limit");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.push_back(restriction_element(N, ElementId(i)).name());
  EffectAlgebraTable t(std::move(names), ElementId(0u), ElementId(1u));
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = a; b < size; ++b)
      if (auto s = sym_oplus(restriction_element(N, ElementId(a)), restriction_element(N, ElementId(b))))
        t.define(ElementId(a), ElementId(b), restriction_id(N, *s));
  return EffectAlgebra::from_table(std::move(t), max_size);
}

inline Measure example_2_3_measure(const EffectAlgebra& restriction, std::uint64_t N) {
  std::vector<Value> v;
  for (auto e : restriction.elements()) v.push_back(Value::scalar(mu_ex23(restriction_element(N, e))));
  return Measure::create(restriction, std::move(v));
}

/// mu_1..mu_N on the restriction; member index i-1 holds mu_i.
inline MeasureFamily example_3_3_family(const EffectAlgebra& restriction, std::uint64_t N) {
  std::vector<Measure> members;
  for (std::uint64_t i = 1; i <= N; ++i) {
    std::vector<Value> v;
    for (auto e : restriction.elements()) v.push_back(Value::scalar(mu_ex33(i, restriction_element(N, e))));
    members.push_back(Measure::create(restriction, std::move(v)));
  }
  return MeasureFamily(std::move(members));
}

// ---------------------------------------------------------------------------
// Verification of the three intersection properties

struct IntersectionClaim {
  std::string statement;  // e.g. "B_2 ∩ B_5^c"
  std::size_t witness_class = 0;
  std::uint64_t witness = 0;
  std::size_t class_members_checked = 0;    // p_n^m via the class test
  std::size_t numeric_members_checked = 0;  // p_n^m as an integer, via factoring
  bool holds = true;
};

struct IntersectionReport {
  std::vector<IntersectionClaim> claims;
  bool holds() const {
    return std::all_of(claims.begin(), claims.end(), [](const IntersectionClaim& c) { return c.holds; });
  }
};

/// For all 1 <= i < j <= imax: B_i ∩ B_j, B_i ∩ B_j^c, B_j ∩ B_i^c and
/// B_i^c ∩ B_j^c are non-empty, with `witness_count` members p_n^m
/// (m = 1..witness_count) of the witness class checked against both sets.
inline IntersectionReport verify_intersections(std::uint64_t imax, unsigned witness_count) {
  using E = SymbolicElement;
  IntersectionReport rep;
  auto check = [&](const E& s, const E& t) {
    IntersectionClaim c;
    c.statement = s.name() + " ∩ " + t.name();
    const auto d = disjoint(s, t);
    if (d.disjoint) {
      c.holds = false;
      rep.claims.push_back(std::move(c));
      return;
    }
    c.witness_class = *d.witness_class;
    c.witness = *d.witness;
    for (unsigned m = 1; m <= witness_count; ++m) {
      const PrimePowerClass x{c.witness_class, m};
      ++c.class_members_checked;
      if (!member(s, x) || !member(t, x)) c.holds = false;
      const auto v = x.big_value();
      if (factor_prime_power(v) != std::optional<PrimePowerClass>(x)) c.holds = false;
      ++c.numeric_members_checked;
      if (!member(s, v) || !member(t, v)) c.holds = false;
    }
    rep.claims.push_back(std::move(c));
  };
  for (std::uint64_t i = 1; i <= imax; ++i) {
    for (std::uint64_t j = i + 1; j <= imax; ++j) {
      check(E::B(i), E::B(j));
      check(E::B(i), E::Bc(j));
      check(E::B(j), E::Bc(i));
      check(E::Bc(i), E::Bc(j));
    }
  }
  return rep;
}

}  // namespace effana::symbolic
