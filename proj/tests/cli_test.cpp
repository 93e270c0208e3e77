// Copyright 2026 The halfgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include "halfgauss/cli.hpp"

namespace hg {
namespace {

struct Outcome {
    int code;
    json out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    json j;
    std::string text = out.str();
    if (!args.empty() && args[0] != "--help") {
        j = json::parse(text);
    }
    set_brute_budget(0);
    return {code, j, err.str()};
}

std::string sample(const std::string &name) { return std::string(HALFGAUSS_SAMPLES_DIR) + "/" + name; }

TEST(Text, ParsePolynomialExamples) {
    IntPolynomial p = parse_polynomial("3*x1^2 + 2*x1*x2 + 1");
    auto q = p.as_quadratic();
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(q->a(1, 1), 3);
    EXPECT_EQ(q->a(1, 2), 2);
    EXPECT_EQ(q->gamma0, 1);
    IntPolynomial c = parse_polynomial("x1*x2*x3");
    EXPECT_EQ(c.degree(), 3);
    EXPECT_FALSE(c.as_quadratic().has_value());
    EXPECT_THROW(parse_quadratic("x1*x2*x3"), std::invalid_argument);
    EXPECT_EQ(format_polynomial(parse_polynomial("x1 - x1")), "0");
    EXPECT_TRUE(parse_polynomial("x1 - x1").terms.empty());
}

TEST(Text, ParseErrorsCarryPositions) {
    try {
        parse_polynomial("x1 + 2.5*x2");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 6u);
    }
    EXPECT_THROW(parse_polynomial("x1 x2"), ParseError);
    EXPECT_THROW(parse_polynomial("x0"), ParseError);
    EXPECT_THROW(parse_polynomial("3*"), ParseError);
    EXPECT_THROW(parse_polynomial("+"), ParseError);
}

TEST(Text, PolynomialRoundTrip) {
    for (const char *s : {"0", "x1^2", "-x1^2 + 4*x1*x2 - 3*x3 + 7", "2*x1*x2*x3 - x2^3 + x1"}) {
        IntPolynomial p = parse_polynomial(s);
        EXPECT_EQ(parse_polynomial(format_polynomial(p)).terms, p.terms) << s;
    }
}

TEST(Text, CircuitRoundTrip) {
    Circuit c = parse_circuit("dim 4\nqudits 2\nF 0\nCZ 0 1 *3  # comment\nG 1*5\n");
    EXPECT_EQ(c.d, 4u);
    EXPECT_EQ(c.m, 2);
    ASSERT_EQ(c.gates.size(), 3u);
    EXPECT_EQ(c.gates[1].repeat, 3u);
    EXPECT_EQ(c.gates[2].repeat, 5u);
    EXPECT_EQ(parse_circuit(format_circuit(c)).gates, c.gates);
    EXPECT_THROW(parse_circuit("qudits 1\nF 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("dim 3\nqudits 1\nQ 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("dim 3\nqudits 1\nF 2\n"), std::invalid_argument);
}

TEST(Text, Digits) {
    EXPECT_EQ(parse_digits("0120"), (std::vector<u64>{0, 1, 2, 0}));
    EXPECT_EQ(parse_digits("10,3"), (std::vector<u64>{10, 3}));
    EXPECT_EQ(format_digits({10, 3}, 12), "10,3");
    EXPECT_THROW(parse_digits("1a"), std::invalid_argument);
}

TEST(Cli, EvalSumHalf) {
    Outcome o = run_cli({"eval-sum", "--mode", "half", "--d", "2", "--poly", "x1^2"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out["pretty"], "1+i");
    EXPECT_EQ(o.out["value"]["approx"][0], 1.0);
}

TEST(Cli, EvalSumCertificateAndModes) {
    Outcome o = run_cli({"eval-sum", "--d", "6", "--poly", "x1^2 + 2*x1*x2 + 3*x2^2", "--certificate"});
    EXPECT_EQ(o.code, 0);
    EXPECT_TRUE(o.out["certificate"].is_array());
    EXPECT_FALSE(o.out["certificate"].empty());
    o = run_cli({"eval-sum", "--mode", "full", "--d", "4", "--poly", "x1^2"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out["pretty"], "2+2i");
    o = run_cli({"eval-sum", "--mode", "general", "--d", "2", "--phase", "8", "--poly", "x1"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out["path"], "brute-force");
    o = run_cli({"eval-sum", "--d", "2", "--poly", "x1^2", "--convention", "minus"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out["convention"], "minus");
}

TEST(Cli, EvalGauss) {
    Outcome o = run_cli({"eval-gauss", "--a", "1", "--d", "5"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out["pretty"], "√5");
    o = run_cli({"eval-gauss", "--a", "2", "--d", "4"});
    EXPECT_EQ(o.code, 1);
    EXPECT_EQ(o.out["kind"], "usage");
}

TEST(Cli, CheckPeriodic) {
    Outcome o = run_cli({"check-periodic", "--d", "2", "--poly", "x1*x2"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out["periodic"], false);
    o = run_cli({"check-periodic", "--d", "2", "--poly", "2*x1^2", "--k", "2"});
    EXPECT_EQ(o.out["periodic"], true);
}

TEST(Cli, AperiodicAndUsageErrorsExitOne) {
    EXPECT_EQ(run_cli({"eval-sum", "--d", "2", "--poly", "x1*x2"}).code, 1);
    EXPECT_EQ(run_cli({"eval-sum", "--d", "2", "--poly", "x1 +"}).code, 1);
    EXPECT_EQ(run_cli({"no-such-command"}).code, 1);
    EXPECT_EQ(run_cli({"eval-sum", "--mode", "sideways", "--d", "2", "--poly", "x1"}).code, 1);
    Outcome o = run_cli({"simulate", "--circuit", "/nonexistent", "--in", "0"});
    EXPECT_EQ(o.code, 1);
    EXPECT_TRUE(o.out.contains("error"));
}

TEST(Cli, BudgetRefusal) {
    Outcome o = run_cli({"--budget", "100", "eval-sum", "--mode", "general", "--d", "5", "--poly", "x1*x2*x3"});
    EXPECT_EQ(o.code, 1);
    EXPECT_EQ(o.out["kind"], "budget");
}

TEST(Cli, SimulateModes) {
    Outcome o = run_cli({"simulate", "--circuit", sample("bell_d3.circ"), "--in", "00", "--out", "00"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_TRUE(o.out["amplitude"].contains("approx"));
    o = run_cli({"simulate", "--circuit", sample("bell_d3.circ"), "--in", "00", "--measure", "1", "--outcome", "0"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["probability"]["exact"], "1/3");
    o = run_cli({"simulate", "--circuit", sample("mixed_d4.circ"), "--in", "012", "--statevector"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_FALSE(o.out["statevector"].empty());
    o = run_cli({"simulate", "--circuit", sample("mixed_d4.circ"), "--in", "012", "--sample", "20", "--seed", "4"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["samples"].size(), 20u);
    Outcome again = run_cli({"simulate", "--circuit", sample("mixed_d4.circ"), "--in", "012", "--sample", "20", "--seed", "4"});
    EXPECT_EQ(again.out["samples"], o.out["samples"]);
}

TEST(Cli, ApproxOnlyKeepsVerdicts) {
    Outcome exact = run_cli({"simulate", "--circuit", sample("bell_d3.circ"), "--in", "00", "--out", "11"});
    Outcome approx =
        run_cli({"--approx-only", "simulate", "--circuit", sample("bell_d3.circ"), "--in", "00", "--out", "11"});
    EXPECT_EQ(exact.code, approx.code);
    EXPECT_FALSE(approx.out["amplitude"].contains("coeffs"));
    EXPECT_EQ(exact.out["amplitude"]["approx"], approx.out["amplitude"]["approx"]);
}

TEST(Cli, Holant) {
    Outcome o = run_cli({"holant", "--grid", sample("bell_d3.json"), "--brute"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["path"], "affine");
    EXPECT_EQ(o.out["agree"], true);
    EXPECT_EQ(o.out["value"]["rational"], "3");
    o = run_cli({"holant", "--grid", sample("chain_d2.json"), "--brute"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["path"], "product");
    EXPECT_EQ(o.out["value"]["rational"], "2");
    o = run_cli({"holant", "--grid", sample("table_d2.json")});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["path"], "brute");
}

TEST(Cli, CountZerosAndDeg3) {
    Outcome o = run_cli({"count-zeros", "--d", "4", "--poly", "x1^2 + 2*x1*x2", "--j", "1", "--brute"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["method"], "fourier");
    EXPECT_EQ(o.out["count"], o.out["brute_count"]);
    o = run_cli({"count-deg3", "--circuit", sample("ccz.circ"), "--k", "0"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["count"], 7);
    o = run_cli({"count-deg3", "--circuit", sample("cubic_d3.circ"), "--k", "1"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["count"], o.out["direct_count"]);
}

TEST(Cli, ChecksAndSweeps) {
    Outcome o = run_cli({"selftest", "--max-d", "4", "--max-n", "2"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["failures"], 0);
    EXPECT_GT(o.out["cases"].get<u64>(), 0u);
    o = run_cli({"verify-relations", "--max-d", "5"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out["all_hold"], true);
    o = run_cli({"gadgets"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out["all_hold"], true);
    o = run_cli({"table1", "--max-n", "10"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out["consistent"], true);
}

TEST(Cli, Bench) {
    Outcome o = run_cli({"bench", "--n", "60", "--d", "720"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["brute_fallback"], false);
    EXPECT_EQ(o.out["replay_matches"], true);
    EXPECT_EQ(o.out["brute_force"]["attempted"], false);
    o = run_cli({"bench", "--n", "2", "--d", "12"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out["brute_force"]["agree"], true);
}

TEST(Cli, OutOfRangeDimensionIsUsageError) {
    EXPECT_EQ(run_cli({"verify-relations", "--d", "40"}).code, 1);
}

TEST(Cli, BinaryWritesJson) {
    const std::string tmp = ::testing::TempDir() + "/halfgauss_cli_out.json";
    const std::string cmd = std::string(HALFGAUSS_CLI_PATH) + " check-periodic --d 2 --poly \"x1*x2\" > " + tmp;
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    json j = json::parse(cli::detail::read_file(tmp));
    EXPECT_EQ(j["periodic"], false);
    const std::string bad = std::string(HALFGAUSS_CLI_PATH) + " eval-sum --d 2 --poly \"x1*x2\" > " + tmp + " 2>/dev/null";
    int status = std::system(bad.c_str());
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 1);
    EXPECT_EQ(json::parse(cli::detail::read_file(tmp))["kind"], "aperiodic");
}

}  // namespace
}  // namespace hg
