#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "qkchev/cli.hpp"

using namespace qkchev;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qkchev");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ExpandGrassmannianExample) {
  auto r = run({"--type", "A", "--rank", "6", "--k", "3", "--x", "1 4 3 2 6 5 4 3", "--mode", "expand"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("[O_{s1 s4 s3 s2 s6 s5 s4 s3}] ⋆ [O(-w3)] = e^{x*w3}([O_{s1 s4 s3 s2 s6 s5 s4 s3}] - "
                       "[O_{s1 s5 s4 s3 s2 s6 s5 s4 s3}] - [O_{s2 s1 s4 s3 s2 s6 s5 s4 s3}] + "
                       "[O_{s2 s1 s5 s4 s3 s2 s6 s5 s4 s3}] - [O_{s4 s3}] Q_3 + [O_{s2 s4 s3}] Q_3 + "
                       "[O_{s5 s4 s3}] Q_3 - [O_{s2 s5 s4 s3}] Q_3)"),
            std::string::npos)
      << r.out;
}

TEST(Cli, TextAndJsonAgree) {
  auto text = run({"--type", "A", "--rank", "6", "--k", "3", "--x", "1 4 3 2 6 5 4 3"});
  auto json = run({"--type", "A", "--rank", "6", "--k", "3", "--x", "1 4 3 2 6 5 4 3", "--format", "json"});
  ASSERT_EQ(json.code, 0);
  auto e = expansion_from_json(nlohmann::json::parse(json.out));
  EXPECT_EQ(e.terms.size(), 8u);
  EXPECT_NE(text.out.find(to_qk_product_string(e)), std::string::npos);
}

TEST(Cli, JsonForAllIsAnArray) {
  auto r = run({"--type", "D", "--rank", "4", "--k", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 8u);
  Chevalley ch(oracle::D(4), 1);
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto e = expansion_from_json(j[i]);
    EXPECT_EQ(e.x, ch.weyl().reduced_word(ch.WJ()[i]));
    EXPECT_TRUE(e.same_terms(ch.closed_formula(ch.WJ()[i])));
  }
}

TEST(Cli, VerifySweepSucceeds) {
  auto r = run({"--type", "A", "--rank", "3", "--k", "2", "--x", "all", "--mode", "verify"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("6/6 elements agree"), std::string::npos) << r.out;
  auto b = run({"--type", "B", "--rank", "3", "--k", "3", "--mode", "verify", "--jobs", "3", "--format", "json"});
  EXPECT_EQ(b.code, 0);
  auto j = nlohmann::json::parse(b.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["checked"].get<int>(), 8);
}

TEST(Cli, OutputOrderDoesNotDependOnJobs) {
  auto one = run({"--type", "A", "--rank", "4", "--k", "2", "--jobs", "1"});
  auto four = run({"--type", "A", "--rank", "4", "--k", "2", "--jobs", "4", "--order-seed", "3"});
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, NonReducedWordIsCanonicalized) {
  auto r = run({"--type", "A", "--rank", "3", "--k", "2", "--x", "2 2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("[O_{e}] ⋆ [O(-w2)] = e^{x*w2}([O_{e}] - [O_{s2}])"), std::string::npos) << r.out;
}

TEST(Cli, CancelReport) {
  auto r = run({"--type", "A", "--rank", "3", "--k", "2", "--x", "1 3 2", "--mode", "cancel-report"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("x = s1 s3 s2  (>= floor(s_theta))"), std::string::npos) << r.out;
  auto b = run({"--type", "B", "--rank", "3", "--k", "3", "--mode", "cancel-report", "--format", "json"});
  EXPECT_EQ(b.code, 0);
  auto j = nlohmann::json::parse(b.out);
  EXPECT_EQ(j.size(), 8u);
}

TEST(Cli, AppendixDemo) {
  auto r = run({"--mode", "appendix-demo"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("floor(s_theta) = s1 s2 s6 s5 s4 s3"), std::string::npos);
  EXPECT_NE(r.out.find("floor(x1 s3) = s4 s3"), std::string::npos);
  EXPECT_NE(r.out.find("path-sum oracle: agrees"), std::string::npos);
}

TEST(Cli, CharacterSide) {
  auto r = run({"--type", "A", "--rank", "1", "--k", "1", "--x", "1", "--side", "character"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("gch V^-_{s1}((N-1)*w1) = e^{-x*w1}(gch V^-_{s1}(N*w1) - gch V^-_{e t_{a1^vee}}(N*w1))"),
            std::string::npos)
      << r.out;
}

TEST(Cli, BadWordReportsPosition) {
  auto r = run({"--type", "A", "--rank", "3", "--k", "2", "--x", "2 5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("letter 5 at position 3"), std::string::npos) << r.err;
  auto junk = run({"--type", "A", "--rank", "3", "--k", "2", "--x", "2 x"});
  EXPECT_EQ(junk.code, 2);
  EXPECT_NE(junk.err.find("position 3"), std::string::npos) << junk.err;
}

TEST(Cli, NonMinusculeKListsValidNodes) {
  auto r = run({"--type", "D", "--rank", "5", "--k", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("valid k: 1 4 5"), std::string::npos) << r.err;
}

TEST(Cli, ElementOutsideQuotientShowsFloor) {
  auto r = run({"--type", "A", "--rank", "3", "--k", "2", "--x", "2 1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("minimal representative is 2"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"--mode", "nope"}).code, 2);
  EXPECT_EQ(run({"--format", "xml"}).code, 2);
  EXPECT_EQ(run({"--jobs", "0"}).code, 2);
  EXPECT_EQ(run({"--type", "C", "--rank", "3"}).code, 2);
  EXPECT_EQ(run({"--bogus"}).code, 2);
  auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("--order-seed"), std::string::npos);
}

TEST(Cli, ParallelMapKeepsOrderAndRethrows) {
  auto v = cli::parallel_map<int>(50, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
  EXPECT_THROW(cli::parallel_map<int>(5, 2, [](std::size_t i) -> int {
                 if (i == 3) throw Error("boom");
                 return 0;
               }),
               Error);
}
