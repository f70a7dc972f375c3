#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "effana/constructions.hpp"
#include "effana/io.hpp"
#include "effana/measures.hpp"
#include "effana/properties.hpp"
#include "effana/rdp.hpp"
#include "effana/symbolic.hpp"
#include "effana/variation.hpp"

using namespace effana;
namespace sym = effana::symbolic;

namespace {

constexpr double kTol = 1e-9;
constexpr double kPartialTol = 5 * kTol;
constexpr std::size_t kSeedsPerAlgebra = 100;

constexpr double kLimitAc1 = 1.0;
constexpr double kLimitAc2 = 5.0;
constexpr double kLimitAc3 = 60.0;
constexpr double kLimitAc7 = 5.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.pass = false;
    o.detail += " [over time limit " + detail::fmt_num(limit_s) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("AC%-2d %s  %s (%.3f s): %s\n", n, o.pass ? "PASS" : "FAIL", title, secs, o.detail.c_str());
  std::fflush(stdout);
}

struct Instance {
  std::string label;
  EffectAlgebra algebra;
};

std::vector<Instance> tested_algebras() {
  std::vector<Instance> out;
  for (unsigned n = 2; n <= 4; ++n) out.push_back({"powerset(" + std::to_string(n) + ")", powerset_algebra(n)});
  for (unsigned k = 2; k <= 8; ++k) out.push_back({"scale(" + std::to_string(k) + ")", scale_algebra(k)});
  out.push_back({"example_4_6", example_4_6()});
  return out;
}

std::string data_path(const char* name) { return std::string(EFFANA_DATA_DIR) + "/" + name; }

Outcome ac1() {
  const auto L = io::algebra_from_json(io::read_document(data_path("example4_6.json")));
  const auto mu = io::measure_from_json(L, io::read_document(data_path("example4_6_mu.json")));
  const auto unit = L.unit(), xp = *L.find("X⁺"), xm = *L.find("X⁻");
  const auto r = variation(mu, unit);
  const double vx = variation(mu, xp).value, vy = variation(mu, xm).value;
  std::vector<std::string> witness;
  for (auto p : r.witness.parts) witness.push_back(L.name(p));
  std::sort(witness.begin(), witness.end());
  const auto rep = check_variation_theorems(mu);
  const auto* m = rep.find("variation_is_measure");
  const bool flagged = m && m->status != CheckStatus::pass && m->detail.find("(X⁺, X⁻): 1 + 1 != 8") != std::string::npos;
  Outcome o;
  o.pass = r.value == 8.0 && vx == 1.0 && vy == 1.0 && witness == std::vector<std::string>{"Y⁺", "Y⁻"} &&
           flagged && rep.exact;
  o.detail = "|mu|(ℝ²) = " + detail::fmt_num(r.value) + ", |mu|(X⁺) = " + detail::fmt_num(vx) +
             ", |mu|(X⁻) = " + detail::fmt_num(vy) + ", witness " + describe(L, r.witness.parts) +
             (flagged ? ", non-additivity flagged (8 vs 2)" : ", non-additivity NOT flagged");
  return o;
}

// independent of check_rdp: tries every c1 <= a, c2 <= b
bool refuted_exhaustively(const EffectAlgebra& L, const RdpWitness& w) {
  const auto ab = L.oplus(w.a, w.b);
  if (!ab || !L.leq(w.c, *ab)) return false;
  for (auto c1 : L.down_set(w.a))
    for (auto c2 : L.down_set(w.b))
      if (L.oplus(c1, c2) == w.c) return false;
  return true;
}

Outcome ac2() {
  Outcome o;
  std::size_t holds = 0;
  for (unsigned k = 1; k <= 12; ++k) {
    if (check_rdp(scale_algebra(k)).holds) ++holds;
    else { o.pass = false; o.detail += "scale(" + std::to_string(k) + ") fails; "; }
  }
  for (unsigned n = 1; n <= 5; ++n) {
    if (check_rdp(powerset_algebra(n)).holds) ++holds;
    else { o.pass = false; o.detail += "powerset(" + std::to_string(n) + ") fails; "; }
  }
  const auto Q = example_4_6();
  const auto rep = check_rdp(Q);
  const bool witness_ok = !rep.holds && rep.witness && Q.name(rep.witness->c) == "Y⁺" &&
                          Q.name(rep.witness->a) == "X⁺" && Q.name(rep.witness->b) == "X⁻" &&
                          rep.witness_verified && refuted_exhaustively(Q, *rep.witness);
  o.pass = o.pass && witness_ok;
  o.detail += std::to_string(holds) + "/17 RDP algebras hold; example_4_6 ";
  if (rep.witness)
    o.detail += "fails with (" + Q.name(rep.witness->c) + ", " + Q.name(rep.witness->a) + ", " +
                Q.name(rep.witness->b) + ")" + (witness_ok ? ", re-verified" : ", NOT re-verified");
  else
    o.detail += "reported no witness";
  return o;
}

Outcome ac3() {
  Outcome o;
  std::size_t measures = 0, comparisons = 0;
  double worst = 0.0;
  for (const auto& inst : tested_algebras()) {
    for (std::uint64_t seed = 0; seed < kSeedsPerAlgebra; ++seed) {
      const auto mu = random_measure(inst.algebra, 1 + seed % 2, seed);
      ++measures;
      for (auto mode : {DecompositionMode::multiset, DecompositionMode::set}) {
        VariationSolver solver(mu, mode);
        const auto table = solver.table();
        for (auto e : inst.algebra.elements()) {
          const double gap = std::fabs(table[e.value()] - variation_bruteforce(mu, e, mode));
          ++comparisons;
          worst = std::max(worst, gap);
          if (gap > kTol && o.pass) {
            o.pass = false;
            o.detail += inst.label + " seed " + std::to_string(seed) + " at " + inst.algebra.name(e) + "; ";
          }
        }
      }
    }
  }
  o.detail += std::to_string(measures) + " measures, " + std::to_string(comparisons) +
              " DP/brute-force comparisons in both modes, max gap " + detail::fmt_num(worst);
  return o;
}

Outcome ac4() {
  Outcome o;
  std::size_t instances = 0, exact_instances = 0, rdp_instances = 0;
  for (const auto& inst : tested_algebras()) {
    for (std::uint64_t seed = 0; seed < kSeedsPerAlgebra; ++seed) {
      for (auto kind : {RandomKind::real, RandomKind::integer}) {
        const auto mu = random_measure(inst.algebra, kind == RandomKind::integer ? 1 : 1 + seed % 2, seed, kind);
        const auto rep = check_variation_theorems(mu, DecompositionMode::multiset, kTol);
        ++instances;
        exact_instances += rep.exact ? 1 : 0;
        rdp_instances += rep.rdp ? 1 : 0;
        bool ok = rep.find("super_additivity")->status == CheckStatus::pass;
        if (rep.rdp)
          ok = ok && rep.find("sub_additivity")->status == CheckStatus::pass &&
               rep.find("variation_is_measure")->status == CheckStatus::pass;
        if (kind == RandomKind::integer && !rep.exact) ok = false;
        if (!ok && o.pass) {
          o.pass = false;
          o.detail += inst.label + " seed " + std::to_string(seed) + "; ";
        }
      }
    }
  }
  o.detail += std::to_string(instances) + " instances (" + std::to_string(exact_instances) +
              " integer, compared exactly), additivity on " + std::to_string(rdp_instances) + " RDP instances";
  return o;
}

Outcome ac5() {
  Outcome o;
  std::size_t checked = 0;
  double max_ratio = 0.0;
  for (const auto& inst : tested_algebras()) {
    for (std::uint64_t seed = 0; seed < kSeedsPerAlgebra; ++seed) {
      for (std::size_t d : {1u, 2u}) {
        const auto mu = random_measure(inst.algebra, d, seed * 2 + d);
        VariationSolver solver(mu, DecompositionMode::multiset);
        const auto V = solver.table();
        for (auto a : inst.algebra.elements()) {
          double s = 0.0;
          for (auto b : inst.algebra.down_set(a)) s = std::max(s, mu.norm(b));
          ++checked;
          const double v = V[a.value()];
          if (s > 0) max_ratio = std::max(max_ratio, v / s);
          if ((s > v + kTol || v > 4 * s + kTol) && o.pass) {
            o.pass = false;
            o.detail += inst.label + " d=" + std::to_string(d) + " at " + inst.algebra.name(a) + "; ";
          }
        }
      }
    }
  }
  o.detail += std::to_string(checked) + " (measure, element) pairs, max |mu|(a)/sup ratio " + detail::fmt_num(max_ratio);
  return o;
}

Outcome ac6() {
  Outcome o;
  std::size_t multisets = 0;
  for (const auto& inst : tested_algebras()) {
    const auto& L = inst.algebra;
    for (std::uint64_t seed = 0; seed < kSeedsPerAlgebra; ++seed) {
      const auto mu = random_measure(L, 1 + seed % 2, 1000 + seed);
      VariationSolver solver(mu, DecompositionMode::multiset);
      const auto V = solver.table();
      const double total = V[L.unit().value()];
      std::vector<ElementId> parts;
      std::function<void(ElementId, double, std::size_t)> dfs = [&](ElementId acc, double norms, std::size_t from) {
        if (!parts.empty()) {
          ++multisets;
          if ((norms > V[acc.value()] + kPartialTol || V[acc.value()] > total + kPartialTol) && o.pass) {
            o.pass = false;
            o.detail += inst.label + " at " + describe(L, parts) + "; ";
          }
        }
        if (parts.size() == 5) return;
        for (std::size_t i = from; i < L.size(); ++i) {
          const ElementId p(i);
          if (p == L.zero()) continue;
          const auto s = L.oplus(acc, p);
          if (!s) continue;
          parts.push_back(p);
          dfs(*s, norms + mu.norm(p), i);
          parts.pop_back();
        }
      };
      dfs(L.zero(), 0.0, 0);
    }
  }
  o.detail += std::to_string(multisets) + " orthogonal multisets of 1..5 parts";
  return o;
}

Outcome ac7() {
  const auto rep = sym::verify_intersections(20, 50);
  Outcome o;
  std::size_t class_checks = 0, numeric_checks = 0;
  for (const auto& c : rep.claims) {
    class_checks += c.class_members_checked;
    numeric_checks += c.numeric_members_checked;
    if (!c.holds || c.witness == 0 || c.class_members_checked != 50 || c.numeric_members_checked != 50) {
      if (o.pass) o.detail += "fails at " + c.statement + "; ";
      o.pass = false;
    }
  }
  if (rep.claims.size() != 4u * 190u) o.pass = false;
  o.detail += std::to_string(rep.claims.size()) + " intersections over 190 pairs, " + std::to_string(class_checks) +
              " class tests, " + std::to_string(numeric_checks) + " factoring tests";
  return o;
}

std::vector<sym::SymbolicElement> symbolic_elements(std::uint64_t kmax) {
  std::vector<sym::SymbolicElement> els{sym::SymbolicElement::empty(), sym::SymbolicElement::full()};
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    els.push_back(sym::SymbolicElement::B(k));
    els.push_back(sym::SymbolicElement::Bc(k));
  }
  return els;
}

Outcome ac8() {
  Outcome o;
  std::size_t sums = 0;
  const auto els = symbolic_elements(20);
  for (const auto& s : els)
    for (const auto& t : els) {
      const auto st = sym::sym_oplus(s, t);
      if (!st) continue;
      ++sums;
      if (sym::mu_ex23(*st) != sym::mu_ex23(s) + sym::mu_ex23(t)) {
        o.pass = false;
        o.detail += "not additive at " + s.name() + " ⊕ " + t.name() + "; ";
      }
    }
  o.detail += "additive on " + std::to_string(sums) + " defined sums; max |mu(B_n)|:";
  for (std::uint64_t N : {10u, 100u, 1000u}) {
    double m = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) m = std::max(m, std::fabs(sym::mu_ex23(sym::SymbolicElement::B(n))));
    o.pass = o.pass && m == static_cast<double>(N);
    o.detail += " N=" + std::to_string(N) + " -> " + detail::fmt_num(m);
  }
  return o;
}

Outcome ac9() {
  Outcome o;
  for (std::uint64_t N : {10u, 100u}) {
    const auto L = sym::symbolic_restriction(N);
    const auto fam = sym::example_3_3_family(L, N);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const bool valid = validate_measure(L, fam[i].values(), kTol).valid();
      if (!valid || sup_norm(fam[i]) != static_cast<double>(i + 1)) {
        o.pass = false;
        o.detail += "mu_" + std::to_string(i + 1) + " (N=" + std::to_string(N) + ") wrong; ";
      }
    }
    for (std::uint64_t n = 1; n <= N; ++n)
      if (pointwise_bound(fam, sym::restriction_id(N, sym::SymbolicElement::B(n))) != static_cast<double>(n)) {
        o.pass = false;
        o.detail += "pointwise bound at B" + std::to_string(n) + " wrong; ";
      }
    const double u = uniform_bound(fam);
    if (u != static_cast<double>(N)) o.pass = false;
    for (const auto& row : sym::truncated_bound_table(N))
      if (row.sup_norm != static_cast<double>(row.i) || row.pointwise_at_b != static_cast<double>(row.i))
        o.pass = false;
    o.detail += "N=" + std::to_string(N) + ": uniform bound " + detail::fmt_num(u) + "; ";
  }
  const auto cert = sym::orthogonal_pairs_certificate(20);
  const bool cert_ok = cert.verified() && cert.max_nonempty_members <= 2;
  o.pass = o.pass && cert_ok;
  o.detail += "certificate " + std::to_string(cert.cases.size()) + " cases, " +
              std::to_string(cert.orthogonal_cases()) + " orthogonal, at most " +
              std::to_string(cert.max_nonempty_members) + " non-∅ members" + (cert_ok ? "" : " NOT verified");
  return o;
}

Outcome ac10() {
  constexpr std::uint64_t N = 50;
  const auto L = sym::symbolic_restriction(N);
  const auto fam = sym::example_3_3_family(L, N);
  std::vector<ElementId> pool;
  for (std::uint64_t k = 1; k <= N; ++k) pool.push_back(sym::restriction_id(N, sym::SymbolicElement::B(k)));
  const auto w = unboundedness_witness_search(fam, pool, N);
  Outcome o;
  if (!w) return {false, "search returned absent"};
  // expected: the k-th pick is (B_k, mu_k) with value k, for k = 1..N
  std::size_t matching = 0;
  for (std::size_t k = 0; k < w->picks.size(); ++k) {
    const auto& p = w->picks[k];
    if (p.element == pool[k] && p.member == k && p.value == static_cast<double>(k + 1)) ++matching;
  }
  o.pass = w->picks.size() == N && matching == N;
  o.detail = std::to_string(w->picks.size()) + " pick(s), " + std::to_string(matching) + " of the expected " +
             std::to_string(N) + " (B_k, i=k, value k)";
  if (!o.pass) {
    const auto b1 = sym::SymbolicElement::B(1), b2 = sym::SymbolicElement::B(2);
    const auto d = sym::disjoint(b1, b2);
    o.detail += "; greedy needs picks orthogonal to earlier ones, but B_i ∩ B_j is never empty (e.g. " +
                b1.name() + " ∩ " + b2.name() + " ∋ " + std::to_string(d.witness.value_or(0)) + ")";
  }
  return o;
}

Outcome ac11() {
  Outcome o;
  auto algebras = properties::constructor_matrix({1, 2, 3, 4, 5, 6, 7, 8});
  const std::size_t matrix = algebras.size();
  auto mutants = properties::mutated_algebras(properties::constructor_matrix({1, 2, 3, 4}), 42, 50);
  const std::size_t valid_mutants = mutants.size();
  for (auto& m : mutants) algebras.push_back(std::move(m));
  std::size_t checks = 0;
  for (const auto& na : algebras) {
    const auto& L = na.algebra;
    if (!validate_axioms(L.table()).valid()) {
      o.pass = false;
      o.detail += na.label + " fails E1-E4; ";
      continue;
    }
    for (auto a : L.elements())
      for (auto b : L.elements()) {
        const auto ab = L.oplus(a, b);
        if (!ab) continue;
        ++checks;
        if (*ab == L.zero() && (a != L.zero() || b != L.zero())) {
          o.pass = false;
          o.detail += "positivity fails in " + na.label + "; ";
        }
        for (auto c : L.elements()) {
          const auto ac = L.oplus(a, c);
          if (ac && *ac == *ab && b != c) {
            o.pass = false;
            o.detail += "cancellation fails in " + na.label + "; ";
          }
        }
      }
  }
  if (valid_mutants != 50) {
    o.pass = false;
    o.detail += "only " + std::to_string(valid_mutants) + " mutants; ";
  }
  o.detail += std::to_string(matrix) + " constructed + " + std::to_string(valid_mutants) + " mutated algebras, " +
              std::to_string(checks) + " defined sums checked";
  return o;
}

}  // namespace

int main() {
  criterion(1, "half-plane variation", kLimitAc1, ac1);
  criterion(2, "RDP decisions", kLimitAc2, ac2);
  criterion(3, "DP equals brute force", kLimitAc3, ac3);
  criterion(4, "super-additivity and RDP additivity", 0, ac4);
  criterion(5, "sandwich bounds", 0, ac5);
  criterion(6, "partial-sum bound", 0, ac6);
  criterion(7, "prime-power intersections", kLimitAc7, ac7);
  criterion(8, "unbounded symbolic measure", 0, ac8);
  criterion(9, "uniformly bounded family", 0, ac9);
  criterion(10, "greedy witness construction", 0, ac10);
  criterion(11, "axiom-derived laws", 0, ac11);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
