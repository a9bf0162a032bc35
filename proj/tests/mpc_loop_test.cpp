#include "mwmpc/benchmarks.hpp"
#include "mwmpc/mpc_loop.hpp"
#include "mwmpc/solver.hpp"

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

SolveResult result_with(std::initializer_list<double> u) {
  SolveResult r;
  for (double x : u) r.profile.controls.push_back(vec({x}));
  return r;
}

MpcConfig config(int horizon, int exponent, int steps) {
  MpcConfig c;
  c.weight_spec = WeightSpec(horizon, exponent);
  c.steps = steps;
  return c;
}

TEST(ShiftedCandidate, DeadBeatTerminalControl) {
  // From 1.6 with zero controls x_2 = 0.4; the best append is -0.2, landing on 0.
  const auto m = builtin_system("scalar_affine");
  const auto c = shifted_candidate(m, result_with({0.0, 0.0}), vec({1.6}), SolverConfig{});
  ASSERT_EQ(c.profile.horizon(), 2);
  EXPECT_EQ(c.profile.controls[0][0], 0.0);
  EXPECT_NEAR(c.terminal_control[0], -0.2, 1e-7);
  EXPECT_EQ(c.profile.controls[1], c.terminal_control);
  EXPECT_FALSE(c.fallback);
}

TEST(ShiftedCandidate, EquilibriumTailAppendsZero) {
  const auto m = builtin_system("double_integrator");
  const auto c = shifted_candidate(m, result_with({-1.0, 1.0}), vec({1.0, 0.0}), SolverConfig{});
  EXPECT_EQ(c.terminal_control[0], 0.0);
  EXPECT_EQ(c.profile.controls[0][0], 1.0);
}

TEST(ShiftedCandidate, StaysInTheBox) {
  const auto m = builtin_system("scalar_affine");
  const auto c = shifted_candidate(m, result_with({1.0, 1.0, 1.0}), vec({4.0}), SolverConfig{});
  ASSERT_EQ(c.profile.horizon(), 3);
  for (const auto& u : c.profile.controls) EXPECT_TRUE(m.control_box.contains(u));
  EXPECT_EQ(c.terminal_control[0], -1.0);  // x_3 = 2.25 needs -1.125, so the clamp is active
}

TEST(ClosedLoop, EquilibriumStartStopsImmediately) {
  for (const auto& name : builtin_names()) {
    const auto m = builtin_system(name);
    const auto rec = run_closed_loop(m, config(3, 2, 10), Vector::Zero(m.state_dim));
    EXPECT_TRUE(rec.steps.empty());
    EXPECT_EQ(rec.termination, Termination::kStopLevelReached) << name;
    EXPECT_EQ(rec.final_stage_cost, 0.0);
    ASSERT_TRUE(rec.final_optimal_cost.has_value());
    EXPECT_EQ(*rec.final_optimal_cost, 0.0);
  }
}

void expect_record_invariants(const SystemModel& m, const SimulationRecord& rec) {
  for (std::size_t k = 0; k < rec.steps.size(); ++k) {
    const auto& s = rec.steps[k];
    EXPECT_EQ(s.k, static_cast<int>(k));
    EXPECT_EQ(s.stage_cost, m.stage_cost(s.state));
    EXPECT_TRUE(m.control_box.contains(s.applied_control));
    EXPECT_LE(s.terminal_stage_cost, s.optimal_cost + 1e-15);
    const Vector next = m.step(s.state, s.applied_control);
    const Vector& recorded = k + 1 < rec.steps.size() ? rec.steps[k + 1].state : rec.final_state;
    EXPECT_EQ(next, recorded) << "plant consistency at k=" << k;
    const std::optional<double> next_cost =
        k + 1 < rec.steps.size() ? std::optional<double>(rec.steps[k + 1].optimal_cost) : rec.final_optimal_cost;
    if (s.candidate_cost && next_cost) EXPECT_LE(*next_cost, *s.candidate_cost + 1e-12) << "k=" << k;
  }
}

TEST(ClosedLoop, ScalarConvergesAtTheMinimalExponent) {
  const auto m = builtin_system("scalar_affine");
  const auto rec = run_closed_loop(m, config(3, 4, 50), vec({1.0}));
  EXPECT_LE(rec.final_stage_cost, 1e-6);
  EXPECT_EQ(rec.termination, Termination::kStopLevelReached);
  expect_record_invariants(m, rec);
}

TEST(ClosedLoop, DoubleIntegratorOptimalCostStrictlyDecreases) {
  const auto m = builtin_system("double_integrator");
  const auto rec = run_closed_loop(m, config(2, 4, 100), vec({1.0, 0.0}));
  EXPECT_EQ(rec.termination, Termination::kStopLevelReached);
  ASSERT_GE(rec.steps.size(), 2u);
  for (std::size_t k = 1; k < rec.steps.size(); ++k) {
    EXPECT_LT(rec.steps[k].optimal_cost, rec.steps[k - 1].optimal_cost + 1e-8) << k;
    EXPECT_LT(rec.steps[k].optimal_cost, rec.steps[k - 1].optimal_cost) << k;
  }
  expect_record_invariants(m, rec);
}

TEST(ClosedLoop, PendulumRecordInvariants) {
  const auto m = builtin_system("pendulum");
  const auto rec = run_closed_loop(m, config(5, 25, 100), vec({0.1, 0.0}));
  EXPECT_EQ(rec.termination, Termination::kStopLevelReached);
  expect_record_invariants(m, rec);
}

TEST(ClosedLoop, UniformWeightsStillRun) {
  const auto m = builtin_system("double_integrator");
  const auto rec = run_closed_loop(m, config(2, 0, 30), vec({1.0, 0.0}));
  EXPECT_FALSE(rec.steps.empty());
  EXPECT_NE(rec.termination, Termination::kSolverFailure);
  expect_record_invariants(m, rec);
}

TEST(ClosedLoop, StepsExhausted) {
  const auto m = builtin_system("double_integrator");
  auto cfg = config(2, 4, 2);
  cfg.stop_level = 0.0;
  const auto rec = run_closed_loop(m, cfg, vec({1.0, 0.0}));
  EXPECT_EQ(rec.steps.size(), 2u);
  EXPECT_EQ(rec.termination, Termination::kStepsExhausted);
}

TEST(ClosedLoop, SolverFailureTruncatesTheRecord) {
  SystemModel m = builtin_system("scalar_affine");
  m.stage_cost = [](const Vector& x) { return std::abs(x[0]) < 0.3 ? std::nan("") : x[0] * x[0]; };
  const auto rec = run_closed_loop(m, config(2, 1, 10), vec({1.0}));
  EXPECT_EQ(rec.termination, Termination::kSolverFailure);
  EXPECT_FALSE(rec.failure_message.empty());
  EXPECT_FALSE(rec.final_optimal_cost.has_value());
}

TEST(ClosedLoop, Deterministic) {
  const auto m = builtin_system("pendulum");
  const auto a = run_closed_loop(m, config(5, 25, 20), vec({0.1, 0.0}));
  const auto b = run_closed_loop(m, config(5, 25, 20), vec({0.1, 0.0}));
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    EXPECT_EQ(a.steps[k].state, b.steps[k].state);
    EXPECT_EQ(a.steps[k].optimal_cost, b.steps[k].optimal_cost);
  }
}

TEST(TerminationTest, StringRoundTrip) {
  for (auto t : {Termination::kStepsExhausted, Termination::kStopLevelReached, Termination::kSolverFailure}) {
    EXPECT_EQ(parse_termination(to_string(t)), t);
  }
  EXPECT_EQ(to_string(Termination::kStopLevelReached), "stop_level_reached");
  EXPECT_THROW(parse_termination("done"), std::invalid_argument);
}

}  // namespace
}  // namespace mwmpc
