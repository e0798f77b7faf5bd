// Copyright 2026 The Valvepoint Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"
#include "valvepoint/model.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run Cli(const std::string& args) {
  const std::string cmd = std::string(VALVEPOINT_CLI) + " " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) run.out.append(buf, n);
  const int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::map<std::string, std::string> KeyValues(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

TEST_CASE("exit codes") {
  CHECK(Cli("solve case1").code == 0);
  CHECK(Cli("solve no_such_case").code == 1);
  CHECK(Cli("solve case1 --method bogus").code == 1);
  CHECK(Cli("solve case1 --theta1 0.3pi").code == 1);
  CHECK(Cli("solve case1 -m tangent --epsilon 0.1").code == 1);
  CHECK(Cli("solve case1 -m tangent --theta1 0.47pi --theta2 0.35pi").code == 1);
  CHECK(Cli("solve case3 -m tangent --node-cap 2").code == 2);
  CHECK(Cli("solve case2b -m adaptive --max-iterations 1").code == 2);
}

TEST_CASE("machine output round-trips through the cost function") {
  for (const char* m : {"simple", "tangent", "adaptive"}) {
    const Run run = Cli(std::string("solve case2a -f machine -m ") + m);
    REQUIRE(run.code == 0);
    auto kv = KeyValues(run.out);
    const auto prob = valvepoint::testing::LoadCase("case2a");
    std::vector<double> p;
    for (std::size_t i = 1; i <= prob.size(); ++i) {
      p.push_back(std::stod(kv.at("p" + std::to_string(i))));
    }
    CHECK(std::abs(valvepoint::TotalCost(prob, p) - std::stod(kv.at("total_cost"))) <= 0.01);
    CHECK(valvepoint::CheckFeasible(prob, p, 1e-6 * prob.demand, 1e-8).feasible);
    CHECK(kv.at("certified") == "1");
    CHECK(kv.count("wall_time") == 0);
  }
}

TEST_CASE("angles accept multiples of pi") {
  const Run a = Cli("solve case1 -m tangent -f machine --theta1 0.35pi --theta2 0.47pi");
  const Run b = Cli("solve case1 -m tangent -f machine");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Run c = Cli("solve case1 -m tangent -f machine --theta1 pi/4 --theta2 0.45*pi");
  CHECK(c.code == 0);
}

TEST_CASE("repeated runs print identical machine reports") {
  const Run a = Cli("solve case3 -m adaptive -f machine");
  const Run b = Cli("solve case3 -m adaptive -f machine");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  // Parallel mode explores nodes in another order, so only the node count
  // may differ from the serial report; worker counts must not matter.
  const Run c = Cli("solve case3 -m adaptive -f machine --parallel --workers 3");
  const Run d = Cli("solve case3 -m adaptive -f machine --parallel --workers 1");
  CHECK(c.out == d.out);
  auto serial = KeyValues(a.out), parallel = KeyValues(c.out);
  serial.erase("nodes");
  parallel.erase("nodes");
  CHECK(serial == parallel);
}

TEST_CASE("timing and trace outputs") {
  const std::string trace = std::string(VALVEPOINT_TEST_TMP) + "/trace.tsv";
  const Run run = Cli("solve case1 -m adaptive -f machine --timing --trace " + trace);
  REQUIRE(run.code == 0);
  CHECK(run.out.find("wall_time=") != std::string::npos);
  CHECK(run.out.find("cpu_time=") != std::string::npos);
  std::ifstream in(trace);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header.rfind("iteration", 0) == 0);
}

TEST_CASE("export writes an LP file") {
  const std::string lp = std::string(VALVEPOINT_TEST_TMP) + "/case1.lp";
  REQUIRE(Cli("export case1 -m tangent -o " + lp).code == 0);
  std::ifstream in(lp);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("Minimize") != std::string::npos);
  CHECK(ss.str().find("Binary") != std::string::npos);
  CHECK(Cli("export case1 -o /nonexistent/dir/x.lp").code == 1);
}

TEST_CASE("datasets may be given by path") {
  const Run run = Cli(std::string("solve ") + VALVEPOINT_DATA_DIR + "/case1.txt -f machine");
  REQUIRE(run.code == 0);
  CHECK(KeyValues(run.out).at("dataset") == "case1");
}

}  // namespace
