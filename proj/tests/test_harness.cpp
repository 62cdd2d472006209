#include <gtest/gtest.h>

#include <cstdlib>

#include "galiray/errors.hpp"
#include "galiray/harness.hpp"

using namespace galiray;

namespace {

SuiteConfig small() {
  SuiteConfig c = SuiteConfig::defaults();
  c.n_triples = 20;
  c.n_pairs = 10;
  c.n_time_cases = 5;
  c.n_cases = 5;
  c.n_converted = 3;
  return c;
}

}  // namespace

TEST(Harness, DefaultsValidate) {
  const SuiteConfig c = SuiteConfig::defaults();
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.reps.size(), 5u);
  EXPECT_DOUBLE_EQ(c.tolerance("group"), 1e-12);
  EXPECT_DOUBLE_EQ(c.tolerance("infexp"), 1e-6);
  EXPECT_THROW(c.tolerance("nope"), ConfigError);
}

TEST(Harness, ParsesKeyValueText) {
  const SuiteConfig c = parse_config(R"(# comment
seed = 7
n_triples = 12
tau_sequence = [0.2, 0.1, 0.05]
tolerance.group = 1e-11
reps = [schrodinger2d, position1d]
rep.schrodinger2d.gamma = 2.5
sampler = identity
)");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.n_triples, 12u);
  EXPECT_EQ(c.tau_sequence.size(), 3u);
  EXPECT_DOUBLE_EQ(c.tolerance("group"), 1e-11);
  ASSERT_EQ(c.reps.size(), 2u);
  EXPECT_DOUBLE_EQ(c.reps[0].gamma, 2.5);
  EXPECT_EQ(c.sampler, Sampler::identity);
}

TEST(Harness, RejectsBadConfig) {
  EXPECT_THROW(parse_config("tolerance.group = -1"), ConfigError);
  EXPECT_THROW(parse_config("colour = blue"), ConfigError);
  EXPECT_THROW(parse_config("tau_sequence = [0.1, 0.2]"), ConfigError);
  EXPECT_THROW(parse_config("n_pairs = 0"), ConfigError);
  EXPECT_THROW(parse_config("reps = [schrodinger2d, schrodinger2d]"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/galiray.conf"), ConfigError);
}

TEST(Harness, JsonConfigRoundTrip) {
  SuiteConfig c = small();
  c.seed = 99;
  const nlohmann::json j = config_to_json(c);
  const SuiteConfig back = parse_config(j.dump());
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.n_triples, 20u);
  EXPECT_EQ(config_to_json(back), j);
}

TEST(Harness, SeedFromEnvironment) {
  SuiteConfig c = small();
  ::setenv("GALIRAY_SEED", "4242", 1);
  apply_environment(c);
  ::unsetenv("GALIRAY_SEED");
  EXPECT_EQ(c.seed, 4242u);
  ::setenv("GALIRAY_SEED", "abc", 1);
  EXPECT_THROW(apply_environment(c), ConfigError);
  ::unsetenv("GALIRAY_SEED");
}

TEST(Harness, CheckSeedsDiffer) {
  EXPECT_NE(check_seed(1, "group.associativity"), check_seed(1, "group.inverse"));
  EXPECT_EQ(check_seed(1, "group.inverse"), check_seed(1, "group.inverse"));
  EXPECT_NE(check_seed(1, "group.inverse"), check_seed(2, "group.inverse"));
}

TEST(Harness, SuiteIsDeterministic) {
  const SuiteConfig c = small();
  const SuiteReport a = run_suite(c);
  const SuiteReport b = run_suite(c);
  EXPECT_EQ(a.to_json(false), b.to_json(false));
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(exit_status(a), 0);
  const nlohmann::json j = a.to_json();
  EXPECT_EQ(j.at("schema").get<int>(), 1);
  EXPECT_TRUE(j.contains("timestamp"));
  EXPECT_FALSE(a.to_json(false).contains("timestamp"));
}

TEST(Harness, ExpectedDivergencesAreReported) {
  const SuiteReport r = run_suite(small());
  const CheckResult* lit = r.find("cocycle.xi_eta_literal");
  ASSERT_NE(lit, nullptr);
  EXPECT_EQ(lit->status, CheckStatus::expected_divergence);
  EXPECT_GT(lit->max_residual, lit->tolerance);
  const CheckResult* pos = r.find("heisenberg.position1d");
  ASSERT_NE(pos, nullptr);
  EXPECT_EQ(pos->status, CheckStatus::expected_divergence);
  EXPECT_EQ(r.find("no.such.check"), nullptr);
}

TEST(Harness, UnexpectedFailureFailsSuite) {
  SuiteConfig c = small();
  c.expected_divergences.clear();
  const SuiteReport r = run_suite(c);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(exit_status(r), 0);
  EXPECT_EQ(r.find("cocycle.xi_eta_literal")->status, CheckStatus::fail);
}

TEST(Harness, IdentitySamplerIsVacuous) {
  const CheckResult r = cocycle_check("xi0", 3, 1, 5, 1.0, 1e-10);
  EXPECT_TRUE(r.pass);
  const CheckResult m = multiplier_check(RepDescriptor::defaults(RepKind::schrodinger2d), 1, 5, 1.0, 1e-9, 1e-10,
                                         Sampler::identity);
  EXPECT_TRUE(m.pass);
  EXPECT_LT(m.max_residual, 1e-12);
}

TEST(Harness, FinalizeStatus) {
  CheckResult r;
  r.check = "x";
  r.pass = false;
  finalize(r, {"x"});
  EXPECT_EQ(r.status, CheckStatus::expected_divergence);
  CheckResult i;
  i.check = "y";
  i.informational = true;
  finalize(i, {});
  EXPECT_EQ(i.status, CheckStatus::info);
  CheckResult p;
  p.check = "z";
  p.pass = true;
  finalize(p, {});
  EXPECT_EQ(status_name(p.status), "pass");
}
