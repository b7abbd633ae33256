#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ctinform/errors.hpp"
#include "ctinform/signals.hpp"
#include "ctinform/trajectory_csv.hpp"

using namespace ctinform;
using namespace ctinform::signals;

namespace {

GriddedSignal zeros(Eigen::Index dim, double h, double T) {
  return GriddedSignal::constant(Vector::Zero(dim), h, T);
}

TrajectoryData scalar_traj(double h, double T, const std::function<double(double)>& x,
                           const std::function<double(double)>& u,
                           const std::function<double(double)>& xd) {
  return TrajectoryData(GriddedSignal::scalar_function(h, T, x),
                        GriddedSignal::scalar_function(h, T, u),
                        GriddedSignal::scalar_function(h, T, xd));
}

Matrix n_from(const Gramian& g) {
  Matrix n = -g.G.matrix();
  n(0, 0) += 1.0;
  return n;
}

}  // namespace

TEST(Grid, IntervalsRequireIntegerRatio) {
  EXPECT_EQ(grid_intervals(1e-3, 1.0), 1000);
  EXPECT_EQ(grid_intervals(0.1, 0.3), 3);
  EXPECT_THROW(grid_intervals(0.3, 1.0), GridError);
  EXPECT_THROW(grid_intervals(0.0, 1.0), GridError);
  EXPECT_THROW(grid_intervals(2.0, 1.0), GridError);
}

TEST(Grid, SignalRejectsNonFinite) {
  Matrix v(1, 3);
  v << 0, std::nan(""), 1;
  EXPECT_THROW(GriddedSignal(1.0, v), GridError);
}

TEST(Simulate, NoDynamicsKeepsState) {
  const double h = 0.01;
  LtiSystem sys{Matrix::Zero(2, 2), Matrix::Zero(2, 1)};
  Vector x0(2);
  x0 << 1.5, -2.0;
  const auto traj = simulate_lti(sys, x0, zeros(1, h, 1.0), zeros(2, h, 1.0), h);
  for (Eigen::Index k = 0; k < traj.x().size(); ++k) {
    EXPECT_EQ(traj.x().at(k), x0);
    EXPECT_EQ(traj.xdot().at(k).norm(), 0.0);
  }
}

TEST(Simulate, ScalarDecay) {
  const double h = 1e-3;
  LtiSystem sys{Matrix::Constant(1, 1, -1.0), Matrix::Zero(1, 1)};
  const auto traj = simulate_lti(sys, Vector::Ones(1), zeros(1, h, 1.0), zeros(1, h, 1.0), h);
  EXPECT_NEAR(traj.x().values()(0, traj.x().size() - 1), std::exp(-1.0), 1e-8);
}

TEST(Simulate, BenchmarkFinalState) {
  const double h = 1e-3;
  LtiSystem sys{Matrix::Constant(1, 1, -1.0), Matrix::Constant(1, 1, 0.1)};
  const auto u = GriddedSignal::constant(Vector::Ones(1), h, 1.0);
  const auto w = GriddedSignal::scalar_function(h, 1.0, benchmark::noise);
  const auto traj = simulate_lti(sys, Vector::Ones(1), u, w, h);
  const double e = std::exp(1.0);
  const double expected = 0.1 * std::exp(-1.0) * (9.0 - 40.0 * std::sqrt(e) + e * (61.0 - 40.0));
  EXPECT_NEAR(traj.x().values()(0, traj.x().size() - 1), expected, 1e-6);
}

TEST(Simulate, ResidualEqualsNoise) {
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 3, m = 1 + trial % 2;
    const double h = 0.01;
    Matrix A = Matrix::NullaryExpr(n, n, [&] { return 0.5 * nd(rng); });
    Matrix B = Matrix::NullaryExpr(n, m, [&] { return nd(rng); });
    const auto u = GriddedSignal::from_function(m, h, 1.0, [&](double t) {
      return Vector(Vector::Constant(m, std::sin(3.0 * t)));
    });
    const auto w = GriddedSignal::from_function(n, h, 1.0, [&](double t) {
      return Vector(Vector::Constant(n, 0.2 * std::cos(5.0 * t)));
    });
    const auto traj = simulate_lti({A, B}, Vector::Ones(n), u, w, h);
    const Matrix residual = traj.xdot().values() - A * traj.x().values() - B * u.values();
    EXPECT_LT((residual - w.values()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Simulate, RejectsGridMismatch) {
  LtiSystem sys{Matrix::Constant(1, 1, -1.0), Matrix::Zero(1, 1)};
  EXPECT_THROW(simulate_lti(sys, Vector::Ones(1), zeros(1, 0.01, 1.0), zeros(1, 0.02, 1.0), 0.01),
               GridError);
  EXPECT_THROW(simulate_lti(sys, Vector::Ones(1), zeros(1, 0.01, 1.0), zeros(1, 0.01, 1.0), 0.02),
               GridError);
}

TEST(Simulate, DivergenceIsReported) {
  LtiSystem sys{Matrix::Constant(1, 1, 800.0), Matrix::Zero(1, 1)};
  EXPECT_THROW(simulate_lti(sys, Vector::Ones(1), zeros(1, 0.01, 10.0), zeros(1, 0.01, 10.0), 0.01),
               DivergedError);
}

TEST(Derivative, Constant) {
  const auto d = derivative_estimate(GriddedSignal::scalar_function(0.1, 1.0, [](double) { return 3.0; }));
  EXPECT_LT(d.values().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Derivative, Linear) {
  const auto d = derivative_estimate(GriddedSignal::scalar_function(0.1, 1.0, [](double t) { return t; }));
  EXPECT_LT((d.values().array() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(Derivative, Quadratic) {
  const double h = 1e-3;
  const auto x = GriddedSignal::scalar_function(h, 1.0, [](double t) { return t * t; });
  const auto d = derivative_estimate(x);
  for (Eigen::Index k = 0; k < d.size(); ++k) EXPECT_NEAR(d.values()(0, k), 2.0 * x.time(k), 1e-6);
}

TEST(Derivative, TooShort) {
  Matrix v(1, 2);
  v << 0.0, 1.0;
  EXPECT_THROW(derivative_estimate(GriddedSignal(1.0, v)), GridError);
}

TEST(GramianCont, ZeroTrajectory) {
  const auto z = [](double) { return 0.0; };
  const auto g = gramian_cont(scalar_traj(0.1, 1.0, z, z, z));
  EXPECT_EQ(g.G.matrix().norm(), 0.0);
}

TEST(GramianCont, ConstantState) {
  const auto g = gramian_cont(scalar_traj(
      0.1, 1.0, [](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }));
  Matrix expected = Matrix::Zero(3, 3);
  expected(1, 1) = 1.0;
  EXPECT_LT((g.G.matrix() - expected).norm(), 1e-14);
}

TEST(GramianCont, BenchmarkMatchesReferenceMatrix) {
  const auto data = benchmark::make(1e-4);
  Matrix reference(3, 3);
  reference << -0.154, -0.500, -0.995, -0.500, -0.422, -0.595, -0.995, -0.595, -1.0;
  EXPECT_LT((n_from(gramian_cont(data.traj)) - reference).cwiseAbs().maxCoeff(), 2e-3);
}

TEST(GramianCont, TrapezoidConvergesQuadratically) {
  // Integrand entries: ẋ² = cos²t, x² = sin²t, xu = sin t·e^t, etc. on [0,1].
  const auto x = [](double t) { return std::sin(t); };
  const auto u = [](double t) { return std::exp(t); };
  const auto xd = [](double t) { return std::cos(t); };
  const double s2 = 0.5 - std::sin(2.0) / 4.0;  // ∫ sin²
  const double c2 = 0.5 + std::sin(2.0) / 4.0;  // ∫ cos²
  const double sc = std::sin(1.0) * std::sin(1.0) / 2.0;
  const double se = 0.5 * (std::exp(1.0) * (std::sin(1.0) - std::cos(1.0)) + 1.0);
  const double ce = 0.5 * (std::exp(1.0) * (std::sin(1.0) + std::cos(1.0)) - 1.0);
  const double e2 = 0.5 * (std::exp(2.0) - 1.0);
  Matrix exact(3, 3);
  exact << c2, -sc, -ce, -sc, s2, se, -ce, se, e2;
  double prev = 0.0;
  for (int level = 0; level < 4; ++level) {
    const double h = 0.1 / std::pow(2.0, level);
    const double err = (gramian_cont(scalar_traj(h, 1.0, x, u, xd)).G.matrix() - exact).norm();
    if (level > 0) {
      EXPECT_GT(prev / err, 3.6);
      EXPECT_LT(prev / err, 4.4);
    }
    prev = err;
  }
}

TEST(Sample, StepEqualsGrid) {
  const double h = 0.25;
  const auto traj = scalar_traj(h, 1.0, [](double t) { return t; }, [](double t) { return 2 * t; },
                                [](double) { return 1.0; });
  const auto s = sample(traj, h);
  ASSERT_EQ(s.count(), 4);
  for (Eigen::Index k = 0; k < 4; ++k) {
    EXPECT_EQ(s.x(0, k), traj.x().values()(0, k));
    EXPECT_EQ(s.u(0, k), traj.u().values()(0, k));
  }
}

TEST(Sample, SingleColumn) {
  const auto traj = scalar_traj(0.1, 1.0, [](double t) { return 1.0 + t; },
                                [](double) { return 2.0; }, [](double) { return 1.0; });
  const auto s = sample(traj, 1.0);
  ASSERT_EQ(s.count(), 1);
  EXPECT_EQ(s.x(0, 0), 1.0);
}

TEST(Sample, BenchmarkHalf) {
  const auto data = benchmark::make(1e-3);
  const auto s = sample(data.traj, 0.5);
  ASSERT_EQ(s.count(), 2);
  EXPECT_NEAR(s.x(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(s.x(0, 1), 0.1 * std::exp(-0.5) * (9.0 + std::exp(0.5)), 1e-14);
}

TEST(Sample, RejectsMisalignedStep) {
  const auto data = benchmark::make(0.01);
  EXPECT_THROW(sample(data.traj, 0.015), ResamplingError);
  EXPECT_THROW(sample(data.traj, 0.3), ResamplingError);
  EXPECT_THROW(sample(data.traj, -0.1), ResamplingError);
}

TEST(GramianDisc, ZeroSamples) {
  SampledData s;
  s.delta = 0.5;
  s.horizon = 1.0;
  s.xdot = s.x = s.u = Matrix::Zero(1, 2);
  EXPECT_EQ(gramian_disc(s).G.matrix().norm(), 0.0);
}

TEST(GramianDisc, SingleColumn) {
  SampledData s;
  s.delta = 2.0;
  s.horizon = 2.0;
  s.xdot = Matrix::Constant(1, 1, 1.0);
  s.x = Matrix::Constant(1, 1, 2.0);
  s.u = Matrix::Constant(1, 1, 3.0);
  Vector v(3);
  v << 1.0, -2.0, -3.0;
  EXPECT_LT((gramian_disc(s).G.matrix() - 2.0 * v * v.transpose()).norm(), 1e-14);
}

TEST(GramianDisc, BenchmarkEighth) {
  const auto data = benchmark::make(1e-4);
  Matrix reference(3, 3);
  reference << 0.0152, -0.5498, -0.9309, -0.5498, -0.4873, -0.6559, -0.9309, -0.6559, -1.0;
  EXPECT_LT((n_from(gramian_disc(sample(data.traj, 0.125))) - reference).cwiseAbs().maxCoeff(), 2e-3);
}

TEST(GramianDisc, InvariantToFineGrid) {
  const Matrix ref = gramian_disc(sample(benchmark::make(1.0 / 64).traj, 0.125)).G.matrix();
  for (double h : {1.0 / 128, 1.0 / 512, 1e-3 / 1.024}) {
    const Matrix g = gramian_disc(sample(benchmark::make(h).traj, 0.125)).G.matrix();
    EXPECT_LT((g - ref).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Gramian, PositiveSemidefinite) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 1 + trial % 3, m = 1 + trial % 2;
    const double h = 0.05;
    auto rand_sig = [&](Eigen::Index dim) {
      return GriddedSignal(1.0, Matrix::NullaryExpr(dim, 21, [&] { return ud(rng); }));
    };
    TrajectoryData traj(rand_sig(n), rand_sig(m), rand_sig(n));
    const auto gc = gramian_cont(traj);
    const auto gd = gramian_disc(sample(traj, trial % 2 ? 0.25 : h));
    const double scale = 1.0 + gc.G.matrix().norm();
    EXPECT_GE(linalg::min_eig(gc.G), -1e-10 * scale);
    EXPECT_GE(linalg::min_eig(gd.G), -1e-10 * scale);
  }
}

TEST(Benchmark, ClosedFormValues) {
  EXPECT_EQ(benchmark::state(0.0), 1.0);
  EXPECT_NEAR(benchmark::state(0.5), 0.1 * std::exp(-0.5) * (9.0 + std::exp(0.5)), 1e-15);
  // Continuity at the kink.
  EXPECT_NEAR(benchmark::state(0.5 + 1e-12), benchmark::state(0.5), 1e-11);
  const auto data = benchmark::make(1e-4);
  EXPECT_NEAR(integrate_outer(data.noise, data.noise)(0, 0), 2.0 / 3.0, 1e-7);
  EXPECT_THROW(benchmark::make(1.0 / 3), GridError);
}

TEST(TrajectoryCsv, RoundTrip) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ud(-1e3, 1e3);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 3, m = 1 + trial % 2;
    const Eigen::Index count = 4 + trial;
    const double T = 0.1 * (1 + trial);
    auto rand_sig = [&](Eigen::Index dim) {
      return GriddedSignal(T, Matrix::NullaryExpr(dim, count, [&] { return ud(rng); }));
    };
    std::optional<GriddedSignal> w;
    if (trial % 2) w = rand_sig(n);
    TrajectoryData traj(rand_sig(n), rand_sig(m), rand_sig(n), w);
    std::stringstream ss;
    write_trajectory_csv(ss, traj);
    const auto back = parse_trajectory_csv(ss);
    EXPECT_EQ(back.n(), n);
    EXPECT_EQ(back.m(), m);
    EXPECT_FALSE(back.derivative_estimated());
    EXPECT_NEAR(back.horizon(), T, 1e-12 * T);
    EXPECT_LT((back.x().values() - traj.x().values()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((back.u().values() - traj.u().values()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((back.xdot().values() - traj.xdot().values()).cwiseAbs().maxCoeff(), 1e-12);
    ASSERT_EQ(back.noise().has_value(), w.has_value());
    if (w) EXPECT_LT((back.noise()->values() - w->values()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(TrajectoryCsv, MissingDerivativeIsEstimated) {
  std::stringstream ss("# comment\nt,x1,u1\n0,0,1\n0.5,0.25,1\n# mid\n1,1,1\n");
  const auto traj = parse_trajectory_csv(ss);
  EXPECT_TRUE(traj.derivative_estimated());
  EXPECT_NEAR(traj.xdot().values()(0, 1), 1.0, 1e-12);
}

TEST(TrajectoryCsv, RejectsMalformedInput) {
  auto parse = [](const std::string& s) {
    std::stringstream ss(s);
    return parse_trajectory_csv(ss);
  };
  EXPECT_THROW(parse(""), FormatError);
  EXPECT_THROW(parse("x1,u1\n0,0\n"), FormatError);
  EXPECT_THROW(parse("t,x1,u1,y\n0,0,0,0\n"), FormatError);
  EXPECT_THROW(parse("t,x1,u1\n0,0,0\n0.5,0,abc\n1,0,0\n"), FormatError);
  EXPECT_THROW(parse("t,x1,u1\n0,0,0\n0.4,0,0\n1,0,0\n"), FormatError);
  EXPECT_THROW(parse("t,x1,u1\n0.1,0,0\n0.5,0,0\n1,0,0\n"), FormatError);
  EXPECT_THROW(parse("t,x1,u1\n0,0,0\n0.5,0\n1,0,0\n"), FormatError);
  EXPECT_THROW(parse("t,x1,x2,u1,xdot1\n0,0,0,0,0\n"), FormatError);
  try {
    parse("t,x1,u1\n0,0,0\n0.5,0,nan\n1,0,0\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos);
  }
}
