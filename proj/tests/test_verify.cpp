#include <gtest/gtest.h>

#include "rieszkit/config.hpp"
#include "rieszkit/identities.hpp"
#include "rieszkit/verify.hpp"

using namespace rieszkit;

TEST(VerifyClifford, PassesForTrueTable) {
  for (int n : {1, 2, 3, 5}) {
    const auto r = verify_clifford(n, 500);
    EXPECT_TRUE(r.passed) << n;
    EXPECT_FALSE(r.offending_pair.has_value());
  }
}

TEST(VerifyClifford, GeneratorSignMatchesLibraryTable) {
  for (std::uint32_t a = 0; a < 64; ++a)
    for (std::uint32_t b = 0; b < 64; ++b)
      ASSERT_EQ(detail::generator_sign(a, b), blade_mul(BladeIndex::from_mask(a), BladeIndex::from_mask(b), 6).sign);
}

TEST(VerifyClifford, InjectedFaultPinned) {
  for (const char* spec : {"e1,e2", "e1e3,e2", "e2e3,e1e2e3", "1,e1"}) {
    const auto f = parse_sign_fault(spec);
    const auto r = verify_clifford(3, 200, 1, faulty_blade_mul(f));
    EXPECT_FALSE(r.passed) << spec;
    ASSERT_TRUE(r.offending_pair.has_value());
    EXPECT_EQ(r.offending_pair->first, f.lhs);
    EXPECT_EQ(r.offending_pair->second, f.rhs);
  }
}

TEST(VerifyClifford, FaultSpecParsing) {
  EXPECT_EQ(blade_name(parse_sign_fault("e1e3,1").lhs), "e1e3");
  EXPECT_EQ(blade_name(parse_sign_fault("e1e3,1").rhs), "1");
  EXPECT_THROW(parse_sign_fault("e1e2"), std::invalid_argument);
  EXPECT_THROW(parse_sign_fault("e2e1,e1"), std::invalid_argument);
  EXPECT_THROW(parse_sign_fault("x1,e1"), std::invalid_argument);
  EXPECT_THROW(verify_clifford(7), std::invalid_argument);
}

TEST(Config, Fnv1aKnownVectors) {
  EXPECT_EQ(hex64(fnv1a("")), "cbf29ce484222325");
  EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(hex64(fnv1a("foobar")), "85944171f73967e8");
}

TEST(Config, CanonicalRoundTrip) {
  ExperimentConfig c;
  apply_config_text(c, "family = sphere # inline\n\n n=5\nalpha=0.1\nlevels=64,128,512\nexterior=true\nseed=42\n");
  const auto text = c.canonical();
  ExperimentConfig d;
  apply_config_text(d, text);
  EXPECT_EQ(d.canonical(), text);
  EXPECT_EQ(d.hash(), c.hash());
  EXPECT_NE(text.find("alpha=0.1\n"), std::string::npos);
  ExperimentConfig e = c;
  e.out = "/elsewhere";
  e.threads = 4;
  EXPECT_EQ(e.hash(), c.hash());
  e.seed = 43;
  EXPECT_NE(e.hash(), c.hash());
}

TEST(Config, Errors) {
  ExperimentConfig c;
  EXPECT_THROW(c.set("nope", "1"), std::invalid_argument);
  EXPECT_THROW(c.set("N", "12x"), std::invalid_argument);
  EXPECT_THROW(c.set("exterior", "maybe"), std::invalid_argument);
  EXPECT_THROW(apply_config_text(c, "just words\n"), std::invalid_argument);
  c.alpha = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.levels = {256, 1024};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  EXPECT_NO_THROW(c.validate());
}

TEST(IdentitySuite, SmallEllipseBothSides) {
  const auto m = make_ellipse(2.0, 1.0, 512);
  IdentityOptions o;
  o.jump_stride = 32;
  const auto in = run_identity_suite(m, o);
  const auto out = run_identity_suite(m.exterior(), o);
  // the truncation row is sized for N >= 2048
  for (const auto* s : {&in, &out})
    for (const auto& r : s->rows) {
      if (r.name == "Cpv1_truncation") continue;
      EXPECT_TRUE(r.passed) << r.name << " " << r.residual;
    }
  EXPECT_EQ(in.rows.front().name, "C1_equals_1");
  EXPECT_EQ(out.rows.front().name, "C1_equals_0");
  EXPECT_THROW(run_identity_suite(make_square(2.0, 64)), std::invalid_argument);
}

TEST(IdentitySuite, TrigSuiteShape) {
  const auto m = make_ellipse(2.0, 1.0, 64);
  const auto s = trig_suite(m, 2.0, 1.0);
  ASSERT_EQ(s.size(), 6u);
  // field 1: sin theta on e1, which is x2 / b
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(s[1].values[i][1], m.nodes[i][1], 1e-14);
}
