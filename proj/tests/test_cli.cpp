#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = fuchsian::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, DistinguishExampleOneJson) {
  auto r = run({"distinguish", "(0;0;4,3,7)", "(0;0;2,3,7)", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["winner"], "left");
  EXPECT_EQ(j["branch_trace"].back(), "D2");
  EXPECT_EQ(j["base_group"]["order"], 168);
  EXPECT_EQ(j["a"], 5);
  EXPECT_EQ(j["f"], 48);
  EXPECT_EQ(j["order"]["factored"]["5"], 48);
  EXPECT_EQ(j["order"]["decimal_approx"], "5.97e35");
  EXPECT_EQ(j["bound"]["satisfied"], true);
  for (const char* key : {"winner", "branch_trace", "base_group", "smooth_factor", "loser_max_factor", "a", "f",
                          "order", "bound"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["base_group"].contains("kind"));
  EXPECT_TRUE(j["base_group"].contains("q_or_n"));
  EXPECT_TRUE(j["bound"].contains("exponent_factored"));
}

TEST(Cli, JsonRoundTripsByteIdentical) {
  std::vector<std::vector<std::string>> cmds{
      {"distinguish", "(0;0;15,42,63)", "(0;0;21,21,90)", "--json", "--verify"},
      {"abelianize", "(0;0;15,42,63)", "--json"},
      {"kernel", "(0;0;15,42,63)", "660", "5,6,3", "--json"},
      {"find-q", "15,42,63", "--scrape", "21", "--json"},
      {"matrix-check", "36", "--json"},
      {"epis", "(0;0;2,3,7)", "psl2:7", "--count-only", "--json"}};
  for (const auto& c : cmds) {
    auto r = run(c);
    ASSERT_EQ(r.code, 0) << c[0] << ": " << r.err;
    auto j = nlohmann::ordered_json::parse(r.out);
    EXPECT_EQ(j.dump(2) + "\n", r.out) << c[0];
  }
}

// The text rendering carries the same numbers as the JSON document.
TEST(Cli, TextAndJsonAgree) {
  auto t = run({"distinguish", "(0;0;4,3,7)", "(0;0;2,3,7)"});
  auto j = nlohmann::ordered_json::parse(run({"distinguish", "(0;0;4,3,7)", "(0;0;2,3,7)", "--json"}).out);
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("a: " + j["a"].dump()), std::string::npos);
  EXPECT_NE(t.out.find("f: " + j["f"].dump()), std::string::npos);
  EXPECT_NE(t.out.find("decimal_approx: " + j["order"]["decimal_approx"].get<std::string>()), std::string::npos);
  EXPECT_NE(t.out.find("order: 168"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"distinguish", "(0;0;2,3,7)", "(0;0;2,3,7)"}).code, 1);
  EXPECT_EQ(run({"find-q", "(0;0;5,5,5)", "--max-prime-scan", "10"}).code, 3);
  EXPECT_EQ(run({"abelianize", "(0;0;)"}).code, 2);
  EXPECT_EQ(run({"abelianize", "(0;0;2,3,7)", "--bogus"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"distinguish", "(0;0;2,3,5)", "(0;0;2,3,7)"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ParseErrorReportsOffset) {
  auto r = run({"abelianize", "(0;0;)"});
  EXPECT_NE(r.err.find("byte 5"), std::string::npos) << r.err;
}

TEST(Cli, Subcommands) {
  auto ab = run({"abelianize", "(1;1;3,inf)"});
  EXPECT_NE(ab.out.find("signature: (0;4;3)"), std::string::npos);
  auto sc = run({"scrape", "15,42,63", "--s", "2", "--json"});
  EXPECT_EQ(nlohmann::json::parse(sc.out)["scrape"]["values"], (std::vector<int>{15, 21, 63}));
  auto cl = run({"closure", "1,2,5", "--parent", "6,6,5", "--json"});
  EXPECT_EQ(nlohmann::json::parse(cl.out)["closure"]["values"], (std::vector<int>{3, 3, 5}));
  auto fs = run({"find-scrape", "15,42,63", "21,21,90", "--json"});
  EXPECT_EQ(fs.code, 0);
  auto mc = nlohmann::json::parse(run({"matrix-check", "12", "--json"}).out);
  EXPECT_EQ(mc["pivotless_columns_Y"], (std::vector<int>{2, 3, 12}));
  EXPECT_EQ(mc["rank_E"], 6);
  auto mb = nlohmann::json::parse(run({"macbeath", "5,5,5", "7", "--json"}).out);
  EXPECT_EQ(mb["admits"], false);
  auto ep = nlohmann::json::parse(run({"epis", "(0;0;2,3,7)", "psl2:7", "--count-only", "--json"}).out);
  EXPECT_EQ(ep["count"], 336);
  auto kn = nlohmann::json::parse(run({"kernel", "(0;0;15,42,63)", "660", "5,6,3", "--json"}).out);
  EXPECT_EQ(kn["kernel"], "(100;0;3^(132),7^(110),21^(220))");
  EXPECT_EQ(kn["kernel_b1"], 200);
}
