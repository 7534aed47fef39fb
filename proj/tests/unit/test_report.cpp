#include <gtest/gtest.h>

#include "report.hpp"
#include "suites.hpp"

using namespace thetalab::cli;

namespace {

RunConfig config(const std::string& sub, const std::string& curve) {
  RunConfig c;
  c.subcommand = sub;
  c.curve = curve;
  c.timestamp = false;
  return c;
}

}  // namespace

TEST(Report, ExitCodeFollowsVerdicts) {
  Report r;
  r.add("a").verdict = Verdict::Pass;
  r.add("b").verdict = Verdict::Skipped;
  EXPECT_EQ(r.exit_code(), 0);
  r.add("c").verdict = Verdict::Indeterminate;
  EXPECT_EQ(r.exit_code(), kExitCertificateFailed);
  Report f;
  f.add("x").verdict = Verdict::Fail;
  EXPECT_EQ(f.exit_code(), kExitCertificateFailed);
}

TEST(Report, JsonCarriesSchemaConfigAndSummary) {
  Report r;
  r.config = config("gamma", "TRIG6");
  r.add("t", 10007).data["v"] = 3;
  auto j = r.to_json();
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_FALSE(j.contains("timestamp"));
  EXPECT_EQ(j["config"]["curve"], "TRIG6");
  EXPECT_EQ(j["config"]["primes"].size(), 2u);
  EXPECT_EQ(j["certificates"][0]["prime"], 10007);
  EXPECT_EQ(j["summary"]["pass"], 1);
  EXPECT_EQ(j["summary"]["exit_code"], 0);
  r.timestamp = "2000-01-01T00:00:00Z";
  EXPECT_TRUE(r.to_json().contains("timestamp"));
}

TEST(Report, ReferencesSurviveFurtherAdds) {
  Report r;
  auto& first = r.add("first");
  for (int i = 0; i < 100; ++i) r.add("more");
  first.verdict = Verdict::Fail;
  EXPECT_EQ(r.certificates.front().verdict, Verdict::Fail);
}

TEST(Run, UnknownSubcommandAndMissingCurve) {
  try {
    run(config("frobnicate", ""));
    FAIL();
  } catch (const CliError& e) {
    EXPECT_EQ(e.code, kExitUnknownSubcommand);
  }
  try {
    run(config("analyze", "/no/such/file.curve"));
    FAIL();
  } catch (const CliError& e) {
    EXPECT_EQ(e.code, kExitUnreadableFile);
  }
  auto bad = config("analyze", "GEN6");
  bad.primes = {10003};
  EXPECT_THROW(run(bad), CliError);
}

TEST(Run, GammaOnTrig6) {
  auto r = run(config("gamma", "TRIG6"));
  EXPECT_EQ(r.exit_code(), 0);
  const auto* t = r.find("gamma-table", 10007);
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(t->data["G000"], 3);
  EXPECT_EQ(t->data["G11"], 2);
}

TEST(Run, DeterministicAcrossThreadCounts) {
  auto a = config("surjectivity", "GEN6");
  auto b = a;
  b.threads = 4;
  EXPECT_EQ(render(run(a), "json"), render(run(b), "json"));
}

TEST(Run, GunningSkipsWithoutFixture) {
  auto c = config("gunning", "");
  c.fixture = "";
  setenv("THETALAB_DATA_DIR", "/nonexistent", 1);
  auto r = run(c);
  unsetenv("THETALAB_DATA_DIR");
  ASSERT_EQ(r.certificates.size(), 1u);
  EXPECT_EQ(r.certificates[0].verdict, Verdict::Skipped);
  EXPECT_EQ(r.exit_code(), 0);
}
