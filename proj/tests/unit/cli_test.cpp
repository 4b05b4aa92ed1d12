// Copyright 2026 The ssbkit Authors
//
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


#include <cstdio>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace {

using ssbkit::testing::slurp;
using ssbkit::testing::TempDir;

struct Outcome {
  int status = -1;
  std::string output;
};

Outcome run(const std::string& args) {
  std::string cmd = std::string(SSBKIT_CLI_PATH) + " " + args + " 2>&1";
  Outcome o;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return o;
  char buf[4096];
  while (auto n = std::fread(buf, 1, sizeof buf, pipe)) o.output.append(buf, n);
  int raw = ::pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(Cli, DdlPrintsFiveTables) {
  auto o = run("ddl --variant ssb");
  ASSERT_EQ(o.status, 0) << o.output;
  EXPECT_EQ(count_of(o.output, "CREATE TABLE"), 5u);
  EXPECT_EQ(count_of(o.output, "CREATE INDEX"), 0u);
  auto tpch = run("ddl --variant tpch");
  EXPECT_EQ(count_of(tpch.output, "CREATE TABLE"), 8u);
}

TEST(Cli, GenTwiceGivesIdenticalManifests) {
  TempDir dir("cli-gen");
  auto a = run("gen --sf 0.01 --seed 42 --benchmark ssb --out " + (dir / "a").string());
  auto b = run("gen --sf 0.01 --seed 42 --benchmark ssb --out " + (dir / "b").string());
  ASSERT_EQ(a.status, 0) << a.output;
  ASSERT_EQ(b.status, 0) << b.output;
  auto ma = slurp(dir / "a" / "manifest.json");
  EXPECT_FALSE(ma.empty());
  EXPECT_EQ(ma, slurp(dir / "b" / "manifest.json"));
}

TEST(Cli, RunWithoutGenNamesMissingFiles) {
  TempDir dir("cli-run");
  auto o = run("run --engine sqlite --sf 0.01 --seed 42 --out " + dir.path().string());
  EXPECT_NE(o.status, 0);
  EXPECT_NE(o.output.find("lineorder.tbl"), std::string::npos) << o.output;
  EXPECT_EQ(count_of(o.output, "\n"), 1u) << o.output;
  EXPECT_EQ(o.output.rfind("error: ", 0), 0u) << o.output;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("ddl --no-such-flag").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("gen --sf 0.01").status, 2);  // --seed is required
}

TEST(Cli, HelpDocumentsFlags) {
  auto top = run("--help");
  EXPECT_EQ(top.status, 0);
  for (const char* sub : {"ddl", "gen", "queries", "run", "compress", "report"})
    EXPECT_NE(top.output.find(sub), std::string::npos) << sub;
  auto r = run("run --help");
  EXPECT_EQ(r.status, 0);
  for (const char* flag : {"--engine", "--config", "--reps", "--seed", "--sf", "--order"})
    EXPECT_NE(r.output.find(flag), std::string::npos) << flag;
}

TEST(Cli, QueriesAreSeeded) {
  auto a = run("queries --flight 1 --seed 5");
  auto b = run("queries --flight 1 --seed 5");
  auto c = run("queries --flight 1 --seed 6");
  ASSERT_EQ(a.status, 0) << a.output;
  EXPECT_EQ(a.output, b.output);
  EXPECT_NE(a.output, c.output);
  EXPECT_EQ(run("queries --validate").status, 0);
}

} // namespace
