#include "coordlat/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

namespace coordlat::cli {
namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, GenJsonIsExact) {
  auto r = invoke({"gen", "--type", "D", "--n", "4", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"type\":\"D\",\"n\":4,\"coeffs\":[\"1\",\"20\",\"54\",\"20\",\"1\"]}\n");
}

TEST(Cli, FlagsMayPrecedeTheSubcommand) {
  auto a = invoke({"--type", "D", "--n", "4", "--format", "json", "gen"});
  auto b = invoke({"gen", "--type", "D", "--n", "4", "--format", "json"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, GenLargeCoefficientsAreStrings) {
  auto r = invoke({"gen", "--type", "B", "--n", "200", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  ASSERT_EQ(j["coeffs"].size(), 201u);
  for (const auto& c : j["coeffs"]) EXPECT_TRUE(c.is_string());
  EXPECT_EQ(j["coeffs"][0], "1");
}

TEST(Cli, AnalyzeB16) {
  auto r = invoke({"analyze", "--type", "B", "--n", "16"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("real-rooted: false"), std::string::npos);
  EXPECT_NE(r.out.find("distinct_real: 14"), std::string::npos);
  EXPECT_NE(r.out.find("log_concave: true"), std::string::npos);

  auto j = Json::parse(invoke({"analyze", "--type", "B", "--n", "16", "--format", "json"}).out);
  EXPECT_EQ(j["real_rooted"], false);
  EXPECT_EQ(j["distinct_real"], 14);
  EXPECT_EQ(j["log_concave"], true);
}

TEST(Cli, AnalyzeExpectRealRootedFailsForB16) {
  auto r = invoke({"analyze", "--type", "B", "--n", "16", "--expect", "real-rooted"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("14 of 16"), std::string::npos);
  EXPECT_EQ(invoke({"analyze", "--type", "B", "--n", "15", "--expect", "real-rooted"}).code, 0);
}

TEST(Cli, AnalyzeNeverFailsForACD) {
  for (const char* t : {"A", "C", "D"}) {
    for (int n = 2; n <= 12; ++n) {
      for (const char* e : {"real-rooted", "log-concave", "unimodal", "pf"}) {
        EXPECT_EQ(invoke({"analyze", "--type", t, "--n", std::to_string(n), "--expect", e}).code, 0) << t << n << e;
      }
    }
  }
}

TEST(Cli, VerifyA2) {
  auto r = invoke({"verify", "--type", "A", "--n", "2", "--K", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("[1,6,12,18]"), std::string::npos);
  auto j = Json::parse(invoke({"verify", "--type", "A", "--n", "2", "--K", "3", "--format", "json"}).out);
  EXPECT_EQ(j["census"], Json::parse(R"(["1","6","12","18"])"));
  EXPECT_EQ(j["ok"], true);
}

TEST(Cli, VerifyExceptional) {
  auto r = invoke({"verify", "--type", "G2", "--K", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("7*x^2"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"verify", "--type", "E8"}).code, 2);
}

TEST(Cli, GenExceptionalUsesRecovery) {
  auto j = Json::parse(invoke({"gen", "--type", "G2", "--format", "json"}).out);
  EXPECT_EQ(j["type"], "G2");
  EXPECT_EQ(j["coeffs"], Json::parse(R"(["1","10","7"])"));
  EXPECT_EQ(j["source"], "enumeration");
}

TEST(Cli, RootsForTypeD) {
  auto j = Json::parse(invoke({"roots", "--type", "D", "--n", "3", "--format", "json"}).out);
  EXPECT_EQ(j["distinct_real"], 3);
  ASSERT_EQ(j["trig_brackets"].size(), 3u);
  EXPECT_EQ(j["trig_brackets"][1]["j"], 1);
  Rational lo = parse_rational(j["trig_brackets"][1]["refined"]["lo"].get<std::string>());
  Rational hi = parse_rational(j["trig_brackets"][1]["refined"]["hi"].get<std::string>());
  EXPECT_LT(lo, -1);
  EXPECT_GT(hi, -1);
  EXPECT_LE(hi - lo, make_rational(1, 1024));
  EXPECT_EQ(invoke({"roots", "--type", "D", "--n", "3", "--width", "0"}).code, 2);
}

TEST(Cli, EnumerateCsvAndGeneratorExport) {
  auto path = std::filesystem::temp_directory_path() / "coordlat_cli_test_generators.txt";
  auto r = invoke({"enumerate", "--type", "A", "--n", "2", "--K", "3", "--format", "csv", "--export-generators",
                   path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "k,S(k)\n0,1\n1,6\n2,12\n3,18\n");
  auto again = invoke({"enumerate", "--generators", path.string(), "--K", "3", "--format", "csv"});
  EXPECT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, r.out);
  std::filesystem::remove(path);
  EXPECT_EQ(invoke({"enumerate", "--type", "A", "--n", "2"}).code, 2);
}

TEST(Cli, EnumerateBudgetIsAnInputError) {
  auto r = invoke({"enumerate", "--type", "F4", "--K", "30", "--memory-budget", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("partial census"), std::string::npos);
}

TEST(Cli, ReportCsv) {
  auto r = invoke({"report", "--type", "B", "--n", "17", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, line;
  std::getline(lines, header);
  EXPECT_EQ(header, "n,degree,distinct_real,real_rooted,log_concave,unimodal,pf3");
  int rows = 0;
  std::string last;
  while (std::getline(lines, line)) {
    ++rows;
    last = line;
    if (line.rfind("16,", 0) == 0) {
      EXPECT_EQ(line.rfind("16,16,14,false,true,", 0), 0u) << line;
    }
  }
  EXPECT_EQ(rows, 17);
  EXPECT_EQ(last.substr(0, 3), "17,");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"gen", "--type", "D", "--n", "4", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"gen", "--type", "Q", "--n", "4"}).code, 2);
  EXPECT_EQ(invoke({"gen", "--type", "D", "--n", "1"}).code, 2);
  EXPECT_EQ(invoke({"gen", "--n", "4"}).code, 2);
  EXPECT_EQ(invoke({"gen", "--type", "D", "--n", "4", "--format", "xml"}).code, 2);
  auto r = invoke({"analyze", "--type", "A", "--n", "3", "--max-order", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(invoke({"--help"}).code, 0); }

TEST(Cli, OutputIsDeterministic) {
  std::vector<std::vector<std::string>> runs{
      {"gen", "--type", "B", "--n", "30", "--format", "json"},
      {"analyze", "--type", "B", "--n", "20", "--format", "json"},
      {"roots", "--type", "D", "--n", "7", "--format", "json"},
      {"report", "--type", "D", "--n", "14", "--format", "csv"},
      {"enumerate", "--type", "F4", "--K", "4", "--format", "json"},
  };
  for (const auto& args : runs) {
    auto a = invoke(args), b = invoke(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, OutFileReceivesOutput) {
  auto path = std::filesystem::temp_directory_path() / "coordlat_cli_test_out.json";
  auto r = invoke({"gen", "--type", "A", "--n", "2", "--format", "json", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(body, "{\"type\":\"A\",\"n\":2,\"coeffs\":[\"1\",\"4\",\"1\"]}\n");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace coordlat::cli
