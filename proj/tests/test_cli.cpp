#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run(const std::string& args) {
  std::string cmd = std::string(GRLIE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(GRLIE_DATA) + "/" + name; }

}  // namespace

TEST(Cli, WittRanks) {
  CliResult r = run("witt -k 2 -n 5");
  ASSERT_EQ(r.exit_code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["payload"]["ranks"].dump(), R"({"1":2,"2":1,"3":2,"4":3,"5":6})");
}

TEST(Cli, PureBraidCatalog) {
  CliResult r = run("catalog pure_braid --strands 3 -N 4");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(json::parse(r.out)["payload"]["dims"].dump(), R"({"1":3,"2":1,"3":2,"4":3})");
}

TEST(Cli, TheoremBCertificate) {
  CliResult r = run("verify theorem-b --family heisenberg -p 3 --moduli 9,27 -N 3");
  ASSERT_EQ(r.exit_code, 0);
  json j = json::parse(r.out);
  for (auto& row : j["payload"]["degrees"]) EXPECT_EQ(row["verdict"], "equal");
}

TEST(Cli, RestrictifyPresentationFile) {
  CliResult r = run("restrictify " + data("heisenberg.json") + " -p 2 -N 4");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(json::parse(r.out)["payload"]["dims"].dump(), R"({"1":2,"2":3,"3":0,"4":3})");
  CliResult z = run("restrictify " + data("heisenberg.json") + " -p 2 -N 4 --mode zero-pmap");
  EXPECT_EQ(json::parse(z.out)["payload"]["dims"].dump(), R"({"1":2,"2":0,"3":0,"4":0})");
}

TEST(Cli, OracleBothDefinitions) {
  CliResult r = run("oracle " + data("heisenberg_z8.json") + " -p 2 --mode both");
  ASSERT_EQ(r.exit_code, 0);
  json j = json::parse(r.out)["payload"];
  EXPECT_TRUE(j["definitions_agree"].get<bool>());
  EXPECT_EQ(j["dims"].dump(), R"({"1":2,"2":3,"3":0,"4":3,"5":0,"6":0,"7":0,"8":1})");
}

TEST(Cli, SeriesInvert) {
  CliResult r = run("series pbw invert --denominator 1,-4,1 -N 8");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(json::parse(r.out)["payload"]["dims"].dump(),
            R"({"1":4,"2":5,"3":16,"4":45,"5":144,"6":440,"7":1440,"8":4680})");
}

TEST(Cli, Deterministic) {
  for (const char* args : {"oracle %s -p 2 --tables", "verify hall --group %s -p 2 --trials 50"}) {
    char buf[512];
    std::snprintf(buf, sizeof buf, args, data("heisenberg_z8.json").c_str());
    CliResult a = run(buf), b = run(buf);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("present /nonexistent.json -N 3").exit_code, 1);
  EXPECT_EQ(run("witt -k 2").exit_code, 1);
  EXPECT_EQ(run("oracle " + data("quaternion.json") + " -p 3").exit_code, 1);
  EXPECT_EQ(run("present " + data("heisenberg.json") + " -p 4 -N 3").exit_code, 1);
  EXPECT_EQ(run("verify theorem-a --family free --rank 1 --group " + data("z4_table.json") + " -p 2 -N 4").exit_code,
            0);
}

TEST(Cli, BudgetExitCode) {
  std::string cmd = "GRLIE_BUDGET=100 " + std::string(GRLIE_CLI) + " oracle " + data("heisenberg_z8.json") +
                    " -p 2 >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 3);
}
