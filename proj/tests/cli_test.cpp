#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "padic/cli.hpp"

using namespace padic;
using nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

ordered_json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  const Result r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return ordered_json::parse(r.out);
}

} // namespace

TEST(Cli, Val) {
  EXPECT_EQ(run({"val", "-p", "2", "3/8"}).out, "-3\n");
  EXPECT_EQ(run({"-p", "3", "val", "--", "-18"}).out, "2\n");
  EXPECT_EQ(run_json({"val", "-p", "2", "3/8"})["valuation"], -3);
}

TEST(Cli, Norm) {
  const Result zero = run({"norm", "-p", "5", "0"});
  EXPECT_EQ(zero.code, 0);
  EXPECT_EQ(zero.out, "0\n");
  EXPECT_EQ(run({"norm", "-p", "2", "3/8"}).out, "8 = 2^(3) = 8\n");
  EXPECT_EQ(run({"norm", "-p", "3", "9"}).out, "1/9 = 3^(-2) = 0.11111111111111111111...\n");
  const ordered_json j = run_json({"norm", "-p", "3", "9"});
  EXPECT_EQ(j["norm"], "1/9");
  EXPECT_EQ(j["exponent"], -2);
}

TEST(Cli, NonPrimeExits3) {
  const Result r = run({"val", "-p", "4", "2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("p must be prime"), std::string::npos);
  EXPECT_EQ(run({"norm", "-p", "1", "2"}).code, 3);
}

TEST(Cli, ParseErrorsExit2) {
  EXPECT_EQ(run({"val", "-p", "5", "1/0"}).code, 2);
  EXPECT_EQ(run({"val", "-p", "5", "abc"}).code, 2);
  EXPECT_EQ(run({"val", "5"}).code, 2);
  EXPECT_EQ(run({"frobnicate", "-p", "5"}).code, 2);
  EXPECT_EQ(run({"eval", "-p", "5", "--poly", "x^^2", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "-p", "5", "--poly", "x", "1/5"}).code, 2);
}

TEST(Cli, HelpExits0) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, Digits) {
  EXPECT_EQ(run({"digits", "-p", "5", "-N", "6", "--", "-1"}).out, "...444444\n");
  EXPECT_EQ(run({"digits", "-p", "5", "-N", "6", "1/3"}).out, "...313132\n");
  EXPECT_EQ(run({"digits", "-p", "3", "-N", "3", "9"}).out, "...001 × 3^2\n");
  const ordered_json j = run_json({"digits", "-p", "3", "-N", "3", "9"});
  EXPECT_EQ(j["start"], 2);
  EXPECT_EQ(j["digits"], ordered_json::parse("[1,0,0]"));
  EXPECT_EQ(run({"digits", "-p", "13", "-N", "3", "14"}).out, "...0,1,1\n");
}

TEST(Cli, DigitsOfZeroExits4) {
  const Result r = run({"digits", "-p", "5", "0"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("zero has no canonical expansion"), std::string::npos);
}

TEST(Cli, Eval) {
  const Result r = run({"eval", "-p", "5", "-N", "5", "--poly", "x^2 - 6", "16"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "p=5 form=unit v=3 unit=2 N=2");
  const ordered_json j = run_json({"eval", "-p", "5", "-N", "5", "--poly", "x^2 - 6", "16"});
  EXPECT_EQ(j["record"], "p=5 form=unit v=3 unit=2 N=2");
  EXPECT_EQ(j["norm"], 3);
}

TEST(Cli, LiftSquareRootOfSix) {
  const Result r = run({"lift", "-p", "5", "-K", "4", "--poly", "x^2 - 6", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("root = 516\n"), std::string::npos);
  EXPECT_NE(r.out.find("  n=0 a_n=1 val_f=1 val_fp=0\n"), std::string::npos);
  EXPECT_NE(r.out.find("  n=1 a_n=316 val_f=2 val_fp=0\n"), std::string::npos);
  EXPECT_NE(r.out.find("  n=2 a_n=516 val_f=4 val_fp=0\n"), std::string::npos);
  EXPECT_NE(r.out.find("checks_passed = true\n"), std::string::npos);
}

TEST(Cli, LiftDegenerate) {
  const Result r = run({"lift", "-p", "5", "-K", "3", "--poly", "x^2 - 1", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("degenerate = true\n"), std::string::npos);
  EXPECT_NE(r.out.find("root = 1\n"), std::string::npos);
}

TEST(Cli, LiftHypothesisFailureExits5) {
  const Result r = run({"lift", "-p", "2", "-K", "5", "--poly", "x^2 - 3", "--seed", "1"});
  EXPECT_EQ(r.code, 5);
  EXPECT_NE(r.err.find("f(1) = -2 (m=1)"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("f'(1) = 2 (e=1)"), std::string::npos) << r.err;
  EXPECT_EQ(run({"lift", "-p", "5", "--poly", "x^2 - 5", "--seed", "0"}).code, 5);
  EXPECT_EQ(run({"lift", "-p", "5", "--poly", "x^2 - 6", "--seed", "1/5"}).code, 5);
}

TEST(Cli, LiftTextAndJsonAgree) {
  const std::vector<std::string> args{"lift", "-p", "2", "-K", "12", "--poly", "x^2 - 17", "--seed", "1"};
  const Result text = run(args);
  ASSERT_EQ(text.code, 0) << text.err;
  const ordered_json j = run_json(args);
  EXPECT_NE(text.out.find("root = " + j["root"].get<std::string>() + "\n"), std::string::npos);
  EXPECT_NE(text.out.find("e = " + std::to_string(j["e"].get<long>()) + "\n"), std::string::npos);
  EXPECT_NE(text.out.find("m = " + std::to_string(j["m"].get<long>()) + "\n"), std::string::npos);
  for (const auto& s : j["trace"]) {
    const std::string line = "  n=" + std::to_string(s["n"].get<long>()) + " a_n=" + s["a_n"].get<std::string>() +
                             " val_f=" + std::to_string(s["val_f"].get<long>()) +
                             " val_fp=" + std::to_string(s["val_fp"].get<long>()) + "\n";
    EXPECT_NE(text.out.find(line), std::string::npos) << line;
  }
  const HenselCertificate c = certificate_from_json(j);
  EXPECT_EQ(to_json(c), j);
  EXPECT_EQ(c, lift(PadicPoly(Prime(2), {-17, 0, 1}), 1, Prime(2), 12));
}

TEST(Cli, Oracle) {
  EXPECT_EQ(run({"oracle", "-p", "5", "-k", "4", "--poly", "x^2 - 6"}).out, "109 516\n");
  const Result empty = run({"oracle", "-p", "3", "-k", "2", "--poly", "x^2 + 1"});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "\n");
  EXPECT_EQ(run({"oracle", "-p", "2", "-k", "30", "--poly", "x"}).code, 7);
  const Result filtered = run({"oracle", "-p", "5", "-k", "4", "--poly", "x^2 - 6", "--center", "1", "--radius", "0"});
  EXPECT_EQ(filtered.out, "109 516\n516\n");
  const ordered_json j = run_json({"oracle", "-p", "5", "-k", "4", "--poly", "x^2 - 6"});
  EXPECT_EQ(j["roots"], ordered_json::parse("[109,516]"));
}

TEST(Cli, Crosscheck) {
  const Result r = run({"crosscheck", "-p", "5", "-k", "4", "--trials", "200"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("trials=200"), std::string::npos);
  EXPECT_NE(r.out.find("mismatches=0"), std::string::npos);
}
