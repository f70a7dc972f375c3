#pragma once

// effana command-line front end. Exit codes: 0 success / property holds,
// 2 input error, 3 property or axiom violation found.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "effana/constructions.hpp"
#include "effana/core.hpp"
#include "effana/io.hpp"
#include "effana/measures.hpp"
#include "effana/properties.hpp"
#include "effana/rdp.hpp"
#include "effana/symbolic.hpp"
#include "effana/variation.hpp"

namespace effana::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitViolation = 3;

enum class Format { text, csv, json };

struct RunConfig {
  std::uint64_t seed = 42;
  double tolerance = kDefaultTolerance;
  DecompositionMode mode = DecompositionMode::multiset;
  Format format = Format::text;
  std::size_t max_size = kDefaultMaxSize;
};

namespace detail {

using nlohmann::json;
using effana::detail::fmt_num;

inline std::string value_str(const Value& v) {
  if (v.dim() == 1) return fmt_num(v[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? ", " : "") + fmt_num(v[i]);
  return s + ")";
}

inline std::string parts_str(const EffectAlgebra& L, const std::vector<ElementId>& parts) {
  std::string s = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + L.name(parts[i]);
  return s + "}";
}

inline EffectAlgebra load_algebra(const std::string& path, const RunConfig& cfg) {
  return io::algebra_from_json(io::read_document(path), cfg.max_size);
}

inline Measure load_measure(const EffectAlgebra& L, const std::string& path, const RunConfig& cfg) {
  return io::measure_from_json(L, io::read_document(path), cfg.tolerance);
}

inline ElementId element_arg(const EffectAlgebra& L, const std::string& name) {
  auto id = L.find(name);
  if (!id) throw io::InputError("unknown element '" + name + "'");
  return *id;
}

inline void write_json(std::ostream& out, const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    out << io::dump(j) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw io::InputError(path + ": cannot write file");
  f << io::dump(j) << "\n";
}

inline std::string relative_ref(const std::string& target, const std::string& from_file) {
  namespace fs = std::filesystem;
  const auto base = fs::absolute(fs::path(from_file)).parent_path();
  return fs::absolute(fs::path(target)).lexically_relative(base).generic_string();
}

inline json theorem_json(const EffectAlgebra& L, const TheoremReport& r) {
  json j;
  j["rdp"] = r.rdp;
  j["mode"] = mode_name(r.mode);
  j["exact"] = r.exact;
  json var = json::object();
  for (auto e : L.elements()) var[L.name(e)] = r.variation[e.value()];
  j["variation"] = var;
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"id", e.id}, {"status", status_name(e.status)}, {"checked", e.checked}, {"detail", e.detail}});
  j["checks"] = entries;
  j["all_pass"] = r.all_pass();
  return j;
}

// -- subcommand bodies --------------------------------------------------------

inline int cmd_validate(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto doc = io::read_document(path);
  const auto table = io::table_from_json(doc);
  const auto report = validate_axioms(table, cfg.max_size);
  auto label = [&](ElementId e) { return table.names[e.value()]; };
  if (cfg.format == Format::json) {
    json v = json::array();
    for (const auto& x : report.violations) {
      json els = json::array();
      for (auto e : x.elements) els.push_back(label(e));
      v.push_back({{"axiom", axiom_tag(x.axiom)}, {"elements", els}});
    }
    out << io::dump(json{{"valid", report.valid()}, {"size", table.size()}, {"violations", v}}) << "\n";
  } else if (report.valid()) {
    out << "valid effect algebra (" << table.size() << " elements)\n";
  } else {
    out << "invalid: " << report.violations.size() << " axiom violation(s)\n";
    for (const auto& x : report.violations) {
      out << "  " << axiom_tag(x.axiom) << ": (";
      for (std::size_t i = 0; i < x.elements.size(); ++i) out << (i ? ", " : "") << label(x.elements[i]);
      out << ")\n";
    }
  }
  return report.valid() ? kExitOk : kExitViolation;
}

inline int cmd_order(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto L = load_algebra(path, cfg);
  out << "elements: " << L.size() << "\n";
  out << "atoms: " << parts_str(L, L.atoms()) << "\n";
  out << "orthosupplements:\n";
  for (auto a : L.elements()) out << "  " << L.name(a) << "^⊥ = " << L.name(L.orthosupplement(a)) << "\n";
  out << "covering pairs (a < b with nothing strictly between):\n";
  for (auto a : L.elements())
    for (auto b : L.elements()) {
      if (!L.less(a, b)) continue;
      bool cover = true;
      for (auto c : L.elements())
        if (L.less(a, c) && L.less(c, b)) { cover = false; break; }
      if (cover) out << "  " << L.name(a) << " < " << L.name(b) << "\n";
    }
  return kExitOk;
}

inline int cmd_rdp(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto L = load_algebra(path, cfg);
  const auto r = check_rdp(L);
  if (cfg.format == Format::json) {
    json j{{"holds", r.holds}};
    if (r.witness)
      j["witness"] = {{"c", L.name(r.witness->c)}, {"a", L.name(r.witness->a)}, {"b", L.name(r.witness->b)},
                      {"verified", r.witness_verified}};
    out << io::dump(j) << "\n";
  } else {
    out << "note: finite algebra, so the strong (countable) RDP coincides with RDP\n";
    if (r.holds) {
      out << "RDP: holds\n";
    } else {
      const auto& w = *r.witness;
      out << "RDP: fails\n";
      out << "witness: c = " << L.name(w.c) << " <= " << L.name(w.a) << " ⊕ " << L.name(w.b)
          << " has no splitting c = c1 ⊕ c2 with c1 <= " << L.name(w.a) << ", c2 <= " << L.name(w.b)
          << (r.witness_verified ? " (re-verified exhaustively)" : "") << "\n";
    }
  }
  return r.holds ? kExitOk : kExitViolation;
}

inline int cmd_check(const std::string& apath, const std::string& mpath, const RunConfig& cfg,
                     std::ostream& out) {
  const auto L = load_algebra(apath, cfg);
  const auto values = io::values_from_json(L, io::read_document(mpath));
  const auto r = validate_measure(L, values, cfg.tolerance);
  if (cfg.format == Format::json) {
    json v = json::array();
    for (const auto& x : r.violations)
      v.push_back({{"a", L.name(x.a)}, {"b", L.name(x.b)}, {"sum_value", x.lhs.coords()}, {"parts_total", x.rhs.coords()}});
    out << io::dump(json{{"valid", r.valid()}, {"exact", r.exact}, {"violations", v}}) << "\n";
  } else if (r.valid()) {
    out << "valid measure" << (r.exact ? " (integer values, exact)" : "") << "\n";
  } else {
    out << "not additive: " << r.violations.size() << " violation(s)\n";
    for (const auto& x : r.violations) {
      const auto s = *L.oplus(x.a, x.b);
      out << "  mu(" << L.name(x.a) << " ⊕ " << L.name(x.b) << ") = mu(" << L.name(s) << ") = " << value_str(x.lhs)
          << " but mu(" << L.name(x.a) << ") + mu(" << L.name(x.b) << ") = " << value_str(x.rhs) << "\n";
    }
  }
  return r.valid() ? kExitOk : kExitViolation;
}

inline int cmd_variation(const std::string& apath, const std::string& mpath, const std::string& element,
                         bool witness, const RunConfig& cfg, std::ostream& out) {
  const auto L = load_algebra(apath, cfg);
  const auto mu = load_measure(L, mpath, cfg);
  const ElementId e = element.empty() ? L.unit() : element_arg(L, element);
  const auto r = variation(mu, e, cfg.mode);
  if (cfg.format == Format::json) {
    json j{{"element", L.name(e)}, {"mode", mode_name(cfg.mode)}, {"value", r.value}};
    if (witness) {
      json w = json::array();
      for (auto p : r.witness.parts) w.push_back(L.name(p));
      j["witness"] = w;
    }
    out << io::dump(j) << "\n";
  } else {
    out << "|mu|(" << L.name(e) << ") = " << fmt_num(r.value) << " (" << mode_name(cfg.mode) << " mode)\n";
    if (witness) out << "witness: " << parts_str(L, r.witness.parts) << "\n";
  }
  return kExitOk;
}

inline int cmd_bounds(const std::string& apath, const std::vector<std::string>& mpaths, const RunConfig& cfg,
                      std::ostream& out) {
  const auto L = load_algebra(apath, cfg);
  std::vector<Measure> ms;
  for (const auto& p : mpaths) ms.push_back(load_measure(L, p, cfg));
  const MeasureFamily fam(std::move(ms));
  out << "element";
  // columns are named after the measure files, whatever order they came in
  for (const auto& p : mpaths) out << "," << std::filesystem::path(p).stem().string();
  out << ",pointwise_bound\n";
  for (auto a : L.elements()) {
    out << L.name(a);
    for (const auto& m : fam.members()) out << "," << fmt_num(m.norm(a));
    out << "," << fmt_num(pointwise_bound(fam, a)) << "\n";
  }
  out << "sup_norm";
  for (const auto& m : fam.members()) out << "," << fmt_num(sup_norm(m));
  out << "," << fmt_num(uniform_bound(fam)) << "\n";
  return kExitOk;
}

inline void print_theorems(const EffectAlgebra& L, const TheoremReport& r, std::ostream& out) {
  out << "RDP: " << (r.rdp ? "holds" : "fails") << "\n";
  out << "mode: " << mode_name(r.mode) << (r.exact ? " (integer measure, exact comparisons)" : "") << "\n";
  out << "variation:\n";
  for (auto e : L.elements()) out << "  |mu|(" << L.name(e) << ") = " << fmt_num(r.variation[e.value()]) << "\n";
  out << "checks:\n";
  for (const auto& e : r.entries) {
    out << "  [" << status_name(e.status) << "] " << e.id << ": " << e.title << " (" << e.checked << " checked)";
    if (!e.detail.empty()) out << "; " << e.detail;
    out << "\n";
  }
  out << (r.all_pass() ? "all applicable checks pass\n" : "some checks FAILED\n");
}

inline int cmd_theorems(const std::string& apath, const std::string& mpath, const RunConfig& cfg,
                        std::ostream& out) {
  const auto L = load_algebra(apath, cfg);
  const auto mu = load_measure(L, mpath, cfg);
  const auto r = check_variation_theorems(mu, cfg.mode, cfg.tolerance);
  if (cfg.format == Format::json) out << io::dump(theorem_json(L, r)) << "\n";
  else print_theorems(L, r, out);
  return r.all_pass() ? kExitOk : kExitViolation;
}

// -- example transcripts --------------------------------------------------------

inline int example_lemma_2_2(std::uint64_t imax, unsigned count, std::ostream& out) {
  out << "B_k = A_1 ∪ A_3 ∪ ... ∪ A_{2k-1} ∪ A_{2k} ∪ A_{2k+2} ∪ ...,  A_n = {p_n^m : m >= 1}\n";
  out << "checking all 1 <= i < j <= " << imax << " with " << count << " members per witness class\n";
  const auto rep = symbolic::verify_intersections(imax, count);
  std::size_t class_members = 0, numeric = 0;
  for (const auto& c : rep.claims) {
    class_members += c.class_members_checked;
    numeric += c.numeric_members_checked;
    if (!c.holds) out << "  FAILED: " << c.statement << "\n";
  }
  auto show = [&](std::uint64_t i, std::uint64_t j) {
    using E = symbolic::SymbolicElement;
    for (auto [s, t] : {std::pair{E::B(i), E::B(j)}, std::pair{E::B(i), E::Bc(j)}, std::pair{E::B(j), E::Bc(i)},
                        std::pair{E::Bc(i), E::Bc(j)}}) {
      const auto d = symbolic::disjoint(s, t);
      out << "  " << s.name() << " ∩ " << t.name() << " ⊇ A_" << *d.witness_class << " ∋ " << *d.witness << "\n";
    }
  };
  if (imax >= 2) show(1, 2);
  if (imax >= 3) show(2, 3);
  out << "claims: " << rep.claims.size() << ", class members checked: " << class_members
      << ", numeric members checked (fit in 64 bits): " << numeric << "\n";
  out << (rep.holds() ? "lemma verified\n" : "lemma FAILED\n");
  return rep.holds() ? kExitOk : kExitViolation;
}

inline int example_2_3(std::uint64_t n, std::ostream& out) {
  using E = symbolic::SymbolicElement;
  bool ok = true;
  std::size_t sums = 0;
  std::vector<E> els{E::empty(), E::full()};
  for (std::uint64_t i = 1; i <= std::min<std::uint64_t>(n, 20); ++i) {
    els.push_back(E::B(i));
    els.push_back(E::Bc(i));
  }
  for (const auto& s : els)
    for (const auto& t : els)
      if (auto u = symbolic::sym_oplus(s, t)) {
        ++sums;
        ok &= symbolic::mu_ex23(*u) == symbolic::mu_ex23(s) + symbolic::mu_ex23(t);
      }
  out << "mu(∅) = mu(ℕ) = 0, mu(B_n) = n, mu(B_n^c) = -n\n";
  out << "additivity on " << sums << " defined sums (indices <= 20): " << (ok ? "holds" : "FAILS") << "\n";
  const auto cert = symbolic::orthogonal_pairs_certificate(20);
  out << "orthogonal multisets have at most " << cert.max_nonempty_members
      << " non-∅ members, so every orthogonal sequence is eventually ∅ and sum |mu(E_n)| < inf\n";
  for (std::uint64_t N : {std::uint64_t{10}, std::uint64_t{100}, std::uint64_t{1000}, n}) {
    double best = 0.0;
    for (std::uint64_t k = 1; k <= N; ++k) best = std::max(best, std::fabs(symbolic::mu_ex23(E::B(k))));
    out << "max_{k<=" << N << "} |mu(B_k)| = " << fmt_num(best) << "\n";
    ok &= best == static_cast<double>(N);
  }
  out << (ok && cert.verified() ? "example verified: absolutely additive, not bounded\n" : "example FAILED\n");
  return ok && cert.verified() ? kExitOk : kExitViolation;
}

inline int example_3_3(std::uint64_t n, std::ostream& out) {
  bool ok = true;
  const auto L = symbolic::symbolic_restriction(n, 2 * n + 2);
  const auto fam = symbolic::example_3_3_family(L, n);
  for (std::size_t i = 0; i < fam.size(); ++i) ok &= sup_norm(fam[i]) == static_cast<double>(i + 1);
  out << "mu_i(B_n) = i [n = i], mu_i(B_n^c) = -i [n = i]; each mu_i additive with sup norm i (i <= " << n << ")\n";
  const auto rows = symbolic::truncated_bound_table(n);
  out << "i,sup_norm_mu_i,pointwise_bound_at_B_i\n";
  for (const auto& r : rows) {
    if (r.i <= 5 || r.i == n) out << r.i << "," << fmt_num(r.sup_norm) << "," << fmt_num(r.pointwise_at_b) << "\n";
    ok &= r.sup_norm == static_cast<double>(r.i) && r.pointwise_at_b == static_cast<double>(r.i);
  }
  out << "uniform bound over i <= " << n << ": " << fmt_num(uniform_bound(fam)) << "\n";
  ok &= uniform_bound(fam) == static_cast<double>(n);
  const auto cert = symbolic::orthogonal_pairs_certificate(std::min<std::uint64_t>(n, 20));
  out << "orthogonality case table:\n";
  for (const auto& c : cert.cases)
    out << "  " << c.pair << ": " << (c.orthogonal ? "orthogonal" : "not orthogonal") << " (" << c.instances
        << (c.instances == 1 ? " instance" : " instances") << (c.verified ? "" : ", MISMATCH") << ")\n";
  out << cert.cases.size() << " cases, " << cert.orthogonal_cases() << " orthogonal; orthogonal multisets have at most "
      << cert.max_nonempty_members << " non-∅ members\n";
  ok &= cert.verified();
  std::vector<ElementId> pool;
  for (std::uint64_t k = 1; k <= n; ++k) pool.push_back(symbolic::restriction_id(n, symbolic::SymbolicElement::B(k)));
  const auto w = unboundedness_witness_search(fam, pool, n);
  out << "greedy orthogonal witness search over {B_1..B_" << n << "}: " << (w ? w->picks.size() : 0) << " pick(s)";
  if (w)
    for (const auto& p : w->picks)
      out << " (" << L.name(p.element) << ", i=" << (p.member + 1) << ", " << fmt_num(p.value) << ")";
  out << "; no further pool element is orthogonal to the picks\n";
  out << (ok ? "example verified: pointwise bounded, not uniformly bounded\n" : "example FAILED\n");
  return ok ? kExitOk : kExitViolation;
}

inline int example_4_6_transcript(const RunConfig& cfg, std::ostream& out) {
  const auto L = example_4_6();
  const auto mu = Measure::scalar(L, std::vector<double>{0, 1, 1, 5, -3, 2});
  print_theorems(L, check_variation_theorems(mu, cfg.mode, cfg.tolerance), out);
  return kExitOk;
}

inline Measure example_4_6_measure(const EffectAlgebra& L) {
  return Measure::scalar(L, std::vector<double>{0, 1, 1, 5, -3, 2});
}

inline int cmd_properties(const properties::Config& pc, std::ostream& out) {
  const auto rep = properties::run(pc);
  out << "seed " << pc.seed << ", " << rep.algebras << " algebras\n";
  for (const auto& [id, t] : rep.tallies)
    out << id << ": " << t.passed << " passed, " << t.failed << " failed\n";
  out << "total checks: " << rep.total_checks() << "\n";
  for (const auto& c : rep.counterexamples) {
    out << "counterexample for " << c.invariant << " (from " << c.algebra_label << ", minimized to "
        << c.table.size() << " elements):\n";
    out << "algebra: " << io::table_to_json(c.table).dump() << "\n";
    if (!c.values.empty()) {
      json v = json::object();
      for (std::size_t i = 0; i < c.values.size(); ++i) v[c.table.names[i]] = c.values[i].coords();
      out << "measure: " << json{{"dim", c.values.front().dim()}, {"values", v}}.dump() << "\n";
    }
  }
  out << (rep.ok() ? "all invariants pass\n" : "invariant violations found\n");
  return rep.ok() ? kExitOk : kExitViolation;
}

}  // namespace detail

/// Parses argv and dispatches. Never throws; errors are reported on `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"effana: finite effect algebras, measures, RDP and variation"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string mode = "multiset", format = "text";
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "additivity tolerance for non-integer values")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--mode", mode, "decomposition semantics")->check(CLI::IsMember({"multiset", "set"}))->capture_default_str();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
  app.add_option("--max-size", cfg.max_size, "carrier size limit")->capture_default_str();

  std::function<int()> action;
  std::string apath, mpath, element, output;
  std::vector<std::string> mpaths;
  bool witness = false;

  auto* make = app.add_subcommand("make", "emit a constructed algebra as JSON");
  make->require_subcommand(1);
  make->add_option("-o,--output", output, "output file (default stdout)");
  unsigned n = 3, k = 10;
  std::string out_dir = ".", measure_out;
  auto* mk_pow = make->add_subcommand("powerset", "Boolean algebra of subsets of {1..n}");
  mk_pow->add_option("--n", n)->required();
  mk_pow->callback([&] { action = [&] { detail::write_json(out, io::algebra_to_json(powerset_algebra(n, cfg.max_size)), output); return kExitOk; }; });
  auto* mk_scale = make->add_subcommand("scale", "scale algebra {0, 1/k, ..., 1}");
  mk_scale->add_option("--k", k)->required();
  mk_scale->callback([&] { action = [&] { detail::write_json(out, io::algebra_to_json(scale_algebra(k, cfg.max_size)), output); return kExitOk; }; });
  auto* mk_ex = make->add_subcommand("example-4.6", "six-element half-plane algebra");
  mk_ex->add_option("--measure-out", measure_out, "also write the example measure to this file");
  mk_ex->callback([&] {
    action = [&] {
      const auto L = example_4_6();
      detail::write_json(out, io::algebra_to_json(L), output);
      if (!measure_out.empty()) {
        // point the measure at the algebra file when both are written
        nlohmann::json ref = output.empty() || output == "-" ? nlohmann::json(io::algebra_to_json(L))
                                                             : nlohmann::json(detail::relative_ref(output, measure_out));
        detail::write_json(out, io::measure_to_json(detail::example_4_6_measure(L), ref), measure_out);
      }
      return kExitOk;
    };
  });
  std::uint64_t sym_n = 10;
  auto* mk_sym = make->add_subcommand("symbolic", "finite restriction {∅, ℕ, B_k, B_k^c : k <= n} plus mu_1..mu_n");
  mk_sym->add_option("--n", sym_n)->required()->check(CLI::PositiveNumber);
  mk_sym->add_option("--out", out_dir, "directory for algebra.json and mu_<i>.json")->capture_default_str();
  mk_sym->callback([&] {
    action = [&] {
      const auto L = symbolic::symbolic_restriction(sym_n, std::max<std::size_t>(cfg.max_size, 2 * sym_n + 2));
      std::filesystem::create_directories(out_dir);
      const auto apath_out = (std::filesystem::path(out_dir) / "algebra.json").string();
      detail::write_json(out, io::algebra_to_json(L), apath_out);
      const auto fam = symbolic::example_3_3_family(L, sym_n);
      for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto p = (std::filesystem::path(out_dir) / ("mu_" + std::to_string(i + 1) + ".json")).string();
        detail::write_json(out, io::measure_to_json(fam[i], "algebra.json"), p);
      }
      out << "wrote " << apath_out << " and " << fam.size() << " measure files\n";
      return kExitOk;
    };
  });

  auto* validate = app.add_subcommand("validate", "check axioms E1-E4 on an algebra file");
  validate->add_option("algebra", apath)->required();
  validate->callback([&] { action = [&] { return detail::cmd_validate(apath, cfg, out); }; });

  auto* order = app.add_subcommand("order", "print atoms, orthosupplements and covering pairs");
  order->add_option("algebra", apath)->required();
  order->callback([&] { action = [&] { return detail::cmd_order(apath, cfg, out); }; });

  auto* rdp = app.add_subcommand("rdp", "decide the Riesz decomposition property");
  rdp->add_option("algebra", apath)->required();
  rdp->callback([&] { action = [&] { return detail::cmd_rdp(apath, cfg, out); }; });

  auto* var = app.add_subcommand("variation", "variation |mu|(e) of a measure");
  var->add_option("algebra", apath)->required();
  var->add_option("measure", mpath)->required();
  var->add_option("--element", element, "element (default: unit)");
  var->add_flag("--witness", witness, "print an optimal decomposition");
  var->callback([&] { action = [&] { return detail::cmd_variation(apath, mpath, element, witness, cfg, out); }; });

  auto* check = app.add_subcommand("check", "check additivity of a measure");
  check->add_option("algebra", apath)->required();
  check->add_option("measure", mpath)->required();
  check->callback([&] { action = [&] { return detail::cmd_check(apath, mpath, cfg, out); }; });

  auto* bounds = app.add_subcommand("bounds", "pointwise and uniform bounds of measures (CSV)");
  bounds->add_option("algebra", apath)->required();
  bounds->add_option("measures", mpaths)->required();
  bounds->callback([&] { action = [&] { return detail::cmd_bounds(apath, mpaths, cfg, out); }; });

  auto* thm = app.add_subcommand("theorems", "check the variation laws on a measure");
  thm->add_option("algebra", apath)->required();
  thm->add_option("measure", mpath)->required();
  thm->callback([&] { action = [&] { return detail::cmd_theorems(apath, mpath, cfg, out); }; });

  auto* ex = app.add_subcommand("examples", "verification transcripts for the worked examples");
  ex->require_subcommand(1);
  std::uint64_t imax = 20, ex_n = 100;
  unsigned witness_count = 50;
  auto* ex22 = ex->add_subcommand("lemma-2.2", "prime-power sets B_k and their intersections");
  ex22->add_option("--imax", imax)->capture_default_str()->check(CLI::PositiveNumber);
  ex22->add_option("--witness-count", witness_count)->capture_default_str()->check(CLI::PositiveNumber);
  ex22->callback([&] { action = [&] { return detail::example_lemma_2_2(imax, witness_count, out); }; });
  auto* ex23 = ex->add_subcommand("example-2.3", "unbounded, absolutely additive measure");
  ex23->add_option("--n", ex_n)->capture_default_str()->check(CLI::PositiveNumber);
  ex23->callback([&] { action = [&] { return detail::example_2_3(ex_n, out); }; });
  auto* ex33 = ex->add_subcommand("example-3.3", "pointwise but not uniformly bounded family");
  ex33->add_option("--n", ex_n)->capture_default_str()->check(CLI::PositiveNumber);
  ex33->callback([&] { action = [&] { return detail::example_3_3(ex_n, out); }; });
  auto* ex46 = ex->add_subcommand("example-4.6", "variation that is not a measure");
  ex46->callback([&] { action = [&] { return detail::example_4_6_transcript(cfg, out); }; });

  properties::Config pc;
  std::vector<unsigned> sizes;
  auto* props = app.add_subcommand("properties", "seeded randomized invariant suite");
  props->add_option("--sizes", sizes, "constructor parameters (default 1,2,3,4)")->delimiter(',');
  props->add_option("--measures", pc.measures_per_algebra, "random measures per algebra")->capture_default_str();
  props->add_flag("--inject-fault", pc.inject_fault, "test hook: perturb the variation solver");
  props->callback([&] {
    action = [&] {
      pc.seed = cfg.seed;
      pc.tolerance = cfg.tolerance;
      if (!sizes.empty()) pc.sizes = sizes;
      return detail::cmd_properties(pc, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "effana: " << e.what() << "\n";
    return kExitInput;
  }
  cfg.mode = mode == "set" ? DecompositionMode::set : DecompositionMode::multiset;
  cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;

  try {
    return action ? action() : kExitInput;
  } catch (const io::InputError& e) {
    err << "effana: " << e.what() << "\n";
  } catch (const StructuralError& e) {
    err << "effana: malformed table: " << e.what() << "\n";
  } catch (const InvalidAlgebra& e) {
    err << "effana: not an effect algebra (" << e.report().violations.size()
        << " axiom violations; run `effana validate` for details)\n";
  } catch (const InvalidMeasure& e) {
    err << "effana: not a measure (" << e.report().violations.size()
        << " additivity violations; run `effana check` for details)\n";
  } catch (const std::exception& e) {
    err << "effana: " << e.what() << "\n";
  }
  return kExitInput;
}

}  // namespace effana::cli
