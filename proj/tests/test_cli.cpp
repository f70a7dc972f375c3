#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  bool has(const std::string& s) const { return out.find(s) != std::string::npos; }
};

Outcome effana_run(std::vector<std::string> args) {
  args.insert(args.begin(), "effana");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = effana::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(EFFANA_DATA_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "effana_cli_test" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, TheoremsOnQuadrantReportsWithoutFailing) {
  const auto r = effana_run({"theorems", data("example4_6.json"), data("example4_6_mu.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.has("|mu|(ℝ²) = 8"));
  EXPECT_TRUE(r.has("(X⁺, X⁻): 1 + 1 != 8"));
  EXPECT_TRUE(r.has("RDP: fails"));
}

TEST(Cli, RdpDecisions) {
  const auto s = effana_run({"rdp", data("scale10.json")});
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(s.has("RDP: holds"));
  const auto q = effana_run({"rdp", data("example4_6.json")});
  EXPECT_EQ(q.code, 3);
  EXPECT_TRUE(q.has("c = Y⁺ <= X⁺ ⊕ X⁻"));
}

TEST(Cli, ValidateListsAxiomViolations) {
  const auto b = effana_run({"validate", data("broken.json")});
  EXPECT_EQ(b.code, 3);
  EXPECT_TRUE(b.has("E4: (1, 1/2)"));
  EXPECT_EQ(effana_run({"validate", data("powerset3.json")}).code, 0);
  const auto j = effana_run({"--format", "json", "validate", data("broken.json")});
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_FALSE(parsed["valid"].get<bool>());
}

TEST(Cli, InputErrorsExitTwo) {
  const auto missing = effana_run({"rdp", "/nonexistent.json"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("/nonexistent.json"), std::string::npos);

  const auto elem = effana_run({"variation", data("example4_6.json"), data("example4_6_mu.json"), "--element", "Z"});
  EXPECT_EQ(elem.code, 2);
  EXPECT_NE(elem.err.find("unknown element 'Z'"), std::string::npos);

  EXPECT_EQ(effana_run({"frobnicate"}).code, 2);
  EXPECT_EQ(effana_run({}).code, 2);
  EXPECT_EQ(effana_run({"--mode", "bag", "rdp", data("scale10.json")}).code, 2);
  EXPECT_EQ(effana_run({"--tolerance", "0", "rdp", data("scale10.json")}).code, 2);
  // a non-algebra given where an algebra is required is an input error, not a finding
  EXPECT_EQ(effana_run({"rdp", data("broken.json")}).code, 2);

  const auto dir = scratch("bad_line");
  const auto p = (dir / "bad.json").string();
  std::ofstream(p) << "{\n  \"names\": [\"0\", \"1\"],\n  \"zero\": \"0\",\n  \"unit\": \"2\",\n  \"sums\": []\n}\n";
  const auto line = effana_run({"order", p});
  EXPECT_EQ(line.code, 2);
  EXPECT_NE(line.err.find("bad.json:4: /unit: unknown element '2'"), std::string::npos) << line.err;
}

TEST(Cli, VariationAndCheck) {
  const auto v = effana_run({"variation", data("example4_6.json"), data("example4_6_mu.json"), "--witness"});
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(v.has("|mu|(ℝ²) = 8 (multiset mode)"));
  EXPECT_TRUE(v.has("witness: {Y⁺, Y⁻}"));
  const auto x = effana_run(
      {"--mode", "set", "variation", data("example4_6.json"), data("example4_6_mu.json"), "--element", "X⁺"});
  EXPECT_TRUE(x.has("|mu|(X⁺) = 1 (set mode)"));

  EXPECT_EQ(effana_run({"check", data("example4_6.json"), data("example4_6_mu.json")}).code, 0);
  const auto dir = scratch("check");
  const auto p = (dir / "bad_mu.json").string();
  std::ofstream(p) << R"({"values": {"∅": 0, "X⁺": 1, "X⁻": 1, "Y⁺": 5, "Y⁻": -3, "ℝ²": 3}})";
  const auto c = effana_run({"check", data("example4_6.json"), p});
  EXPECT_EQ(c.code, 3);
  EXPECT_TRUE(c.has("mu(X⁺ ⊕ X⁻) = mu(ℝ²) = 3 but mu(X⁺) + mu(X⁻) = 2"));
  // the same file is an input error for commands that need a measure
  EXPECT_EQ(effana_run({"variation", data("example4_6.json"), p}).code, 2);
}

TEST(Cli, MakeSymbolicThenBounds) {
  const auto dir = scratch("symbolic");
  const auto m = effana_run({"make", "symbolic", "--n", "4", "--out", dir.string()});
  ASSERT_EQ(m.code, 0) << m.err;
  std::vector<std::string> args{"bounds", (dir / "algebra.json").string()};
  for (int i = 1; i <= 4; ++i) args.push_back((dir / ("mu_" + std::to_string(i) + ".json")).string());
  const auto b = effana_run(args);
  EXPECT_EQ(b.code, 0) << b.err;
  EXPECT_TRUE(b.has("element,mu_1,mu_2,mu_3,mu_4,pointwise_bound\n"));
  EXPECT_TRUE(b.has("B3,0,0,3,0,3\n"));
  EXPECT_TRUE(b.has("sup_norm,1,2,3,4,4\n"));
}

TEST(Cli, MakeWritesLoadableAlgebras) {
  const auto dir = scratch("make");
  for (auto args : std::vector<std::vector<std::string>>{
           {"make", "-o", (dir / "p.json").string(), "powerset", "--n", "2"},
           {"make", "-o", (dir / "s.json").string(), "scale", "--k", "3"},
           {"make", "-o", (dir / "q.json").string(), "example-4.6"}}) {
    ASSERT_EQ(effana_run(args).code, 0);
    EXPECT_EQ(effana_run({"validate", args[2]}).code, 0);
  }
  const auto o = effana_run({"order", (dir / "q.json").string()});
  EXPECT_TRUE(o.has("atoms: {X⁺, X⁻, Y⁺, Y⁻}"));
  EXPECT_TRUE(o.has("  Y⁺ < ℝ²\n"));
  EXPECT_FALSE(o.has("  ∅ < ℝ²\n"));
  EXPECT_EQ(effana_run({"make", "powerset", "--n", "12"}).code, 2);
}

TEST(Cli, ExampleTranscripts) {
  const auto l = effana_run({"examples", "lemma-2.2", "--imax", "20", "--witness-count", "50"});
  EXPECT_EQ(l.code, 0);
  EXPECT_TRUE(l.has("B2ᶜ ∩ B3ᶜ ⊇ A_11 ∋ 31"));
  EXPECT_TRUE(l.has("lemma verified"));
  const auto e = effana_run({"examples", "example-2.3", "--n", "1000"});
  EXPECT_EQ(e.code, 0);
  EXPECT_TRUE(e.has("max_{k<=1000} |mu(B_k)| = 1000"));
  const auto t = effana_run({"examples", "example-3.3", "--n", "20"});
  EXPECT_EQ(t.code, 0);
  EXPECT_TRUE(t.has("uniform bound over i <= 20: 20"));
  EXPECT_TRUE(t.has("10 cases, 2 orthogonal"));
  EXPECT_EQ(effana_run({"examples", "example-4.6"}).code, 0);
}

TEST(Cli, PropertiesAndFaultInjection) {
  const auto one = effana_run({"properties", "--sizes", "1"});
  EXPECT_EQ(one.code, 0) << one.out;
  EXPECT_TRUE(one.has("all invariants pass"));
  const auto again = effana_run({"properties", "--sizes", "1"});
  EXPECT_EQ(one.out, again.out);

  const auto fault = effana_run({"properties", "--sizes", "1,2", "--inject-fault"});
  EXPECT_EQ(fault.code, 3);
  EXPECT_TRUE(fault.has("counterexample for variation.dp_equals_bruteforce"));
}

TEST(Cli, HelpExitsZero) {
  const auto h = effana_run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_TRUE(h.has("theorems"));
}
