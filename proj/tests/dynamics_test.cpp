#include "generators.hpp"

#include "mwmpc/benchmarks.hpp"
#include "mwmpc/errors.hpp"
#include "mwmpc/lqr.hpp"
#include "mwmpc/system_model.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace mwmpc {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

ControlProfile scalar_profile(std::initializer_list<double> u) {
  ControlProfile p;
  for (double x : u) p.controls.push_back(vec({x}));
  return p;
}

SystemModel identity_model() {
  SystemModel m;
  m.name = "identity";
  m.state_dim = 1;
  m.control_dim = 1;
  m.step = [](const Vector& x, const Vector&) { return x; };
  m.stage_cost = [](const Vector& x) { return x.squaredNorm(); };
  m.decrease_fn = [](const Vector&) { return 0.0; };
  m.control_box = Box::uniform(1, -1.0, 1.0);
  return m;
}

TEST(Rollout, IdentityDynamicsKeepsTheState) {
  const auto t = rollout(identity_model(), vec({3.0}), scalar_profile({0.7, -0.2, 1.0}));
  ASSERT_EQ(t.horizon(), 3);
  for (const auto& x : t.states) EXPECT_EQ(x[0], 3.0);
}

TEST(Rollout, ScalarHandRecursion) {
  const auto m = builtin_system("scalar_affine");
  const auto t = rollout(m, vec({2.0}), scalar_profile({0.0, 0.0}));
  ASSERT_EQ(t.states.size(), 3u);
  EXPECT_EQ(t.states[1][0], 1.0);
  EXPECT_EQ(t.states[2][0], 0.5);
  EXPECT_EQ(t.stage_costs[0], 4.0);
  EXPECT_EQ(t.stage_costs[2], 0.25);
}

TEST(Rollout, DoubleIntegratorDeadBeat) {
  // (-1, 1) solves [B AB] [u1; u0] = -A^2 x0 for x0 = (1, 0).
  const auto m = builtin_system("double_integrator");
  const auto t = rollout(m, vec({1.0, 0.0}), scalar_profile({-1.0, 1.0}));
  EXPECT_EQ(t.states[1], vec({0.5, -1.0}));
  EXPECT_EQ(t.states[2], vec({0.0, 0.0}));
  EXPECT_EQ(t.stage_costs[2], 0.0);
}

TEST(Rollout, DimensionErrorNamesTheStep) {
  const auto m = builtin_system("double_integrator");
  ControlProfile p = scalar_profile({0.0, 0.0, 0.0});
  p.controls[2] = vec({0.0, 0.0});
  try {
    rollout(m, vec({1.0, 0.0}), p);
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_EQ(e.index(), 2u);
    EXPECT_EQ(e.expected(), 1u);
    EXPECT_EQ(e.actual(), 2u);
  }
  EXPECT_THROW(rollout(m, vec({1.0}), scalar_profile({0.0})), DimensionError);
}

TEST(Rollout, DeterministicAndSuffixConsistent) {
  testing::Gen gen(11);
  for (const auto& name : builtin_names()) {
    const auto m = builtin_system(name);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = gen.integer(1, 8);
      const auto p = gen.profile(m, n);
      const Vector x0 = gen.in_box(m.metadata.state_region);
      const auto a = rollout(m, x0, p);
      const auto b = rollout(m, x0, p);
      ASSERT_EQ(a.states, b.states);
      ASSERT_EQ(a.stage_costs, b.stage_costs);
      const int j = gen.integer(0, n);
      ControlProfile suffix;
      suffix.controls.assign(p.controls.begin() + j, p.controls.end());
      const auto s = rollout(m, a.states[static_cast<std::size_t>(j)], suffix);
      for (int i = 0; i <= n - j; ++i) {
        ASSERT_EQ(s.states[static_cast<std::size_t>(i)], a.states[static_cast<std::size_t>(i + j)]);
      }
    }
  }
}

TEST(ValidateProfile, RejectsControlsOutsideTheBox) {
  const auto m = builtin_system("scalar_affine");
  EXPECT_NO_THROW(validate_profile(m, scalar_profile({1.0, -1.0})));
  EXPECT_THROW(validate_profile(m, scalar_profile({0.0, 1.5})), std::invalid_argument);
}

TEST(LocalStep, OriginIsAnEquilibrium) {
  for (const auto& name : builtin_names()) {
    const auto m = builtin_system(name);
    const Vector zero = Vector::Zero(m.state_dim);
    const auto [u, next] = local_step(m, zero);
    EXPECT_EQ(u, m.control_box.clamp(m.local_controller(zero)));
    EXPECT_EQ(next, zero) << name;
    EXPECT_EQ(m.stage_cost(next) - m.stage_cost(zero), 0.0);
  }
}

TEST(LocalStep, ScalarDecreaseDominatesQ) {
  const auto m = builtin_system("scalar_affine");
  const auto [u, next] = local_step(m, vec({1.0}));
  EXPECT_EQ(u[0], 0.0);
  EXPECT_EQ(next[0], 0.5);
  EXPECT_EQ(m.stage_cost(vec({1.0})) - m.stage_cost(next), 0.75);
  EXPECT_GE(0.75, m.decrease_fn(vec({1.0})));
  EXPECT_EQ(m.decrease_fn(vec({1.0})), 0.5);
}

TEST(LocalStep, DoubleIntegratorLqrDecreases) {
  const auto m = builtin_system("double_integrator");
  const Vector x = vec({0.1, 0.0});
  const auto [u, next] = local_step(m, x);
  EXPECT_LT(m.stage_cost(next), m.stage_cost(x));
}

TEST(LocalStep, ClipsToTheBox) {
  const auto m = builtin_system("scalar_affine", {}, ControllerVariant::kIdentity);
  const auto [u, next] = local_step(m, vec({5.0}));
  EXPECT_EQ(u[0], 1.0);
  EXPECT_EQ(next[0], 3.5);
}

TEST(LocalStep, MissingControllerIsUnsupported) {
  EXPECT_THROW(local_step(identity_model(), vec({0.0})), UnsupportedOperation);
}

// Riccati solutions below were computed independently with a dense DARE solver.
TEST(Lqr, DoubleIntegratorMatchesReference) {
  Eigen::MatrixXd a(2, 2), b(2, 1);
  a << 1, 1, 0, 1;
  b << 0.5, 1;
  const auto sol = solve_discrete_lqr(a, b, Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(1, 1));
  EXPECT_NEAR(sol.gain(0, 0), 0.4344832432759556, 1e-10);
  EXPECT_NEAR(sol.gain(0, 1), 1.0284659329503845, 1e-10);
  EXPECT_NEAR(sol.cost_to_go(0, 0), 2.3671014909478783, 1e-10);
  EXPECT_NEAR(sol.cost_to_go(0, 1), 1.1180339887498953, 1e-10);
  EXPECT_NEAR(sol.cost_to_go(1, 1), 2.587482927325334, 1e-10);
}

TEST(Builtins, StageCostsUseTheRiccatiMatrix) {
  struct Ref {
    const char* name;
    double p11, p12, p22, k1, k2;
  };
  const Ref refs[] = {
      {"double_integrator", 2.3671014909478783, 1.1180339887498953, 2.587482927325334, 0.4344832432759556,
       1.0284659329503845},
      {"pendulum", 37.17830542643127, 25.812829316882087, 25.022785502421005, 2.2647957932896867,
       2.1879084255849754},
  };
  for (const auto& r : refs) {
    const auto m = builtin_system(r.name);
    const double tol = 1e-8 * r.p11;
    EXPECT_NEAR(m.stage_cost(vec({1.0, 0.0})), r.p11, tol) << r.name;
    EXPECT_NEAR(m.stage_cost(vec({0.0, 1.0})), r.p22, tol) << r.name;
    EXPECT_NEAR(m.stage_cost(vec({1.0, 1.0})), r.p11 + 2 * r.p12 + r.p22, tol) << r.name;
    const Vector u = m.local_controller(vec({0.01, -0.02}));
    EXPECT_NEAR(u[0], -(r.k1 * 0.01 - r.k2 * 0.02), 1e-9) << r.name;
    EXPECT_DOUBLE_EQ(m.decrease_fn(vec({0.3, 0.2})), m.metadata.gamma * m.stage_cost(vec({0.3, 0.2})));
  }
}

TEST(Builtins, ScalarAffineContract) {
  const auto m = builtin_system("scalar_affine");
  EXPECT_EQ(m.state_dim, 1);
  EXPECT_EQ(m.control_dim, 1);
  EXPECT_EQ(m.step(vec({2.0}), vec({0.25}))[0], 1.25);
  EXPECT_EQ(m.stage_cost(vec({-3.0})), 9.0);
  EXPECT_EQ(m.decrease_fn(vec({2.0})), 2.0);
  EXPECT_EQ(m.control_box.lower[0], -1.0);
  EXPECT_EQ(m.control_box.upper[0], 1.0);
  EXPECT_EQ(m.metadata.gamma, 0.5);
  EXPECT_EQ(m.metadata.rho_bar, 1.0);
}

TEST(Builtins, PendulumIsExplicitEuler) {
  const auto m = builtin_system("pendulum", {{"T", 0.05}, {"damping", 0.3}});
  const Vector x = vec({0.4, -0.7});
  const Vector u = vec({1.5});
  const Vector next = m.step(x, u);
  EXPECT_DOUBLE_EQ(next[0], 0.4 + 0.05 * -0.7);
  EXPECT_DOUBLE_EQ(next[1], -0.7 + 0.05 * (std::sin(0.4) - 0.3 * -0.7 + 1.5));
}

TEST(Builtins, UnknownNameListsTheValidOnes) {
  try {
    builtin_system("cartpole");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    for (const auto& n : builtin_names()) EXPECT_NE(msg.find(n), std::string::npos) << msg;
  }
  EXPECT_THROW(builtin_system("scalar_affine", {{"T", 0.1}}), ConfigError);
}

TEST(Builtins, EquilibriumAndPositiveDefiniteOnSamples) {
  testing::Gen gen(5);
  for (const auto& name : builtin_names()) {
    const auto m = builtin_system(name);
    const Vector zero = Vector::Zero(m.state_dim);
    EXPECT_EQ(m.step(zero, Vector::Zero(m.control_dim)), zero) << name;
    EXPECT_EQ(m.stage_cost(zero), 0.0);
    for (int s = 0; s < 10000; ++s) {
      const Vector x = gen.in_box(m.metadata.state_region);
      ASSERT_GT(m.stage_cost(x), 0.0) << name;
    }
  }
}

TEST(Builtins, SublevelBoxBoundsTheLevelSet) {
  testing::Gen gen(9);
  for (const auto& name : builtin_names()) {
    const auto m = builtin_system(name);
    const double rho = m.metadata.rho_bar;
    const Box box = m.sublevel_box(rho);
    // Points just outside each face of the box must have l > rho.
    for (int i = 0; i < m.state_dim; ++i) {
      for (int s = 0; s < 2000; ++s) {
        Vector x = gen.in_box(box);
        x[i] = box.upper[i] * (1.0 + 1e-9);
        ASSERT_GT(m.stage_cost(x), rho) << name;
        x[i] = box.lower[i] * (1.0 + 1e-9);
        ASSERT_GT(m.stage_cost(x), rho) << name;
      }
    }
  }
}

TEST(Box, ClampAndContains) {
  const Box b(vec({-1.0, 0.0}), vec({1.0, 2.0}));
  EXPECT_TRUE(b.contains(vec({1.0, 0.0})));
  EXPECT_FALSE(b.contains(vec({1.0, -0.1})));
  EXPECT_EQ(b.clamp(vec({3.0, -4.0})), vec({1.0, 0.0}));
}

TEST(ControlProfileTest, FlattenIsStepMajorAndInvertible) {
  ControlProfile p;
  p.controls = {vec({1.0, 2.0}), vec({3.0, 4.0})};
  EXPECT_EQ(p.flatten(), vec({1.0, 2.0, 3.0, 4.0}));
  EXPECT_TRUE(ControlProfile::from_flat(p.flatten(), 2) == p);
  EXPECT_THROW(ControlProfile::from_flat(vec({1.0, 2.0, 3.0}), 2), DimensionError);
}

}  // namespace
}  // namespace mwmpc
