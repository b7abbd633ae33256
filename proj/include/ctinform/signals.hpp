#pragma once

#include <functional>
#include <optional>

#include "ctinform/linalg.hpp"

namespace ctinform::signals {

using linalg::Matrix;
using linalg::SymMatrix;
using linalg::Vector;

/// Number of intervals T/h; throws GridError unless it is a positive integer (1e-12 relative).
Eigen::Index grid_intervals(double step, double horizon);

/**
 * Vector-valued signal sampled on the uniform grid t_k = k·T/N, k = 0..N,
 * over [0, T]. Column k of values() is the sample at t_k.
 */
class GriddedSignal {
 public:
  GriddedSignal(double horizon, Matrix values);

  static GriddedSignal from_function(Eigen::Index dim, double step, double horizon,
                                     const std::function<Vector(double)>& f);
  static GriddedSignal scalar_function(double step, double horizon,
                                       const std::function<double(double)>& f);
  static GriddedSignal constant(const Vector& v, double step, double horizon);

  Eigen::Index dim() const { return values_.rows(); }
  Eigen::Index size() const { return values_.cols(); }
  Eigen::Index intervals() const { return values_.cols() - 1; }
  double horizon() const { return horizon_; }
  double step() const { return horizon_ / static_cast<double>(intervals()); }
  double time(Eigen::Index k) const {
    return static_cast<double>(k) * horizon_ / static_cast<double>(intervals());
  }
  Vector at(Eigen::Index k) const { return values_.col(k); }
  const Matrix& values() const { return values_; }

  bool same_grid(const GriddedSignal& other) const;

 private:
  double horizon_;
  Matrix values_;
};

struct LtiSystem {
  Matrix A;  // n×n
  Matrix B;  // n×m

  Eigen::Index n() const { return A.rows(); }
  Eigen::Index m() const { return B.cols(); }
  /// Throws DimensionError for inconsistent shapes.
  void validate() const;
};

/// Measured (x, u, ẋ) on a shared grid, with the noise when it is known (simulation).
class TrajectoryData {
 public:
  TrajectoryData(GriddedSignal x, GriddedSignal u, GriddedSignal xdot,
                 std::optional<GriddedSignal> noise = std::nullopt, bool derivative_estimated = false);

  const GriddedSignal& x() const { return x_; }
  const GriddedSignal& u() const { return u_; }
  const GriddedSignal& xdot() const { return xdot_; }
  const std::optional<GriddedSignal>& noise() const { return noise_; }
  bool derivative_estimated() const { return derivative_estimated_; }

  Eigen::Index n() const { return x_.dim(); }
  Eigen::Index m() const { return u_.dim(); }
  double horizon() const { return x_.horizon(); }
  double step() const { return x_.step(); }

 private:
  GriddedSignal x_, u_, xdot_;
  std::optional<GriddedSignal> noise_;
  bool derivative_estimated_;
};

/// Samples at t = kδ, k = 0..T/δ − 1 (the sample at T is never used).
struct SampledData {
  double delta = 0.0;
  double horizon = 0.0;
  Matrix xdot;                 // n × T/δ
  Matrix x;                    // n × T/δ
  Matrix u;                    // m × T/δ
  std::optional<Matrix> noise; // n × T/δ, when the trajectory carries it

  Eigen::Index count() const { return x.cols(); }
};

enum class GramianKind { Continuous, Discrete };

/// ∫ z zᵀ dt or δ Σ z_k z_kᵀ with z = (ẋ, −x, −u).
struct Gramian {
  SymMatrix G;
  GramianKind kind;
  double delta;  // 0 for Continuous
  double horizon;
  Eigen::Index n;
  Eigen::Index m;
};

/**
 * Integrates ẋ = Ax + Bu + w with classical RK4. Inside each step u and w are
 * linearly interpolated, so the midpoint stages use the average of the two
 * grid values. ẋ is reported exactly as Ax + Bu + w at grid points.
 */
TrajectoryData simulate_lti(const LtiSystem& sys, const Vector& x0, const GriddedSignal& u,
                            const GriddedSignal& w, double step);

/// Central differences inside, second-order one-sided differences at both ends.
GriddedSignal derivative_estimate(const GriddedSignal& x);

/// Composite trapezoid rule on the grid.
Gramian gramian_cont(const TrajectoryData& traj);

/// Throws ResamplingError unless δ is a multiple of the grid step and divides T.
SampledData sample(const TrajectoryData& traj, double delta);

Gramian gramian_disc(const SampledData& s);

/// Trapezoid ∫₀ᵀ f(t) g(t)ᵀ dt for two signals on the same grid.
Matrix integrate_outer(const GriddedSignal& f, const GriddedSignal& g);

/**
 * Scalar benchmark: ẋ = −x + u/10 + w, x(0) = 1, T = 1, u ≡ 1 and the
 * piecewise-linear noise w = 0 on [0, 1/2], w = 2 − 4t on (1/2, 1].
 * All signals are materialized from closed forms.
 */
namespace benchmark {

inline constexpr double kA = -1.0;
inline constexpr double kB = 0.1;
inline constexpr double kHorizon = 1.0;
inline constexpr double kNoiseBudget = 1.0;
inline constexpr double kSquareLipschitz = 16.0;

double state(double t);
double state_derivative(double t);
double noise(double t);

struct Data {
  TrajectoryData traj;
  GriddedSignal noise;
};

/// Requires 1/h to be an even integer so that t = 1/2 is a grid point.
Data make(double step);

}  // namespace benchmark

}  // namespace ctinform::signals
