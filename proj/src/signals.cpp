#include "ctinform/signals.hpp"

#include <cmath>
#include <string>

#include "ctinform/errors.hpp"

namespace ctinform::signals {

Eigen::Index grid_intervals(double step, double horizon) {
  if (!(step > 0.0) || !(horizon > 0.0) || !std::isfinite(step) || !std::isfinite(horizon)) {
    throw GridError("grid step and horizon must be positive and finite");
  }
  const double ratio = horizon / step;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-12 * n) {
    throw GridError("horizon " + std::to_string(horizon) + " is not an integer multiple of step " +
                    std::to_string(step));
  }
  return static_cast<Eigen::Index>(n);
}

GriddedSignal::GriddedSignal(double horizon, Matrix values)
    : horizon_(horizon), values_(std::move(values)) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) throw GridError("horizon must be positive");
  if (values_.rows() < 1 || values_.cols() < 2) {
    throw GridError("signal needs dim >= 1 and at least two grid points");
  }
  if (!values_.allFinite()) throw GridError("signal has non-finite values");
}

GriddedSignal GriddedSignal::from_function(Eigen::Index dim, double step, double horizon,
                                           const std::function<Vector(double)>& f) {
  const Eigen::Index n = grid_intervals(step, horizon);
  Matrix v(dim, n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * horizon / static_cast<double>(n);
    const Vector val = f(t);
    if (val.size() != dim) throw DimensionError("signal function returned wrong dimension");
    v.col(k) = val;
  }
  return GriddedSignal(horizon, std::move(v));
}

GriddedSignal GriddedSignal::scalar_function(double step, double horizon,
                                             const std::function<double(double)>& f) {
  return from_function(1, step, horizon, [&](double t) { return Vector::Constant(1, f(t)); });
}

GriddedSignal GriddedSignal::constant(const Vector& v, double step, double horizon) {
  const Eigen::Index n = grid_intervals(step, horizon);
  return GriddedSignal(horizon, v.replicate(1, n + 1));
}

bool GriddedSignal::same_grid(const GriddedSignal& other) const {
  return intervals() == other.intervals() &&
         std::abs(horizon_ - other.horizon_) <= 1e-12 * std::max(horizon_, other.horizon_);
}

void LtiSystem::validate() const {
  if (A.rows() < 1 || A.rows() != A.cols()) throw DimensionError("A must be square");
  if (B.rows() != A.rows()) throw DimensionError("B must have as many rows as A");
  if (!A.allFinite() || !B.allFinite()) throw InvalidArgument("system matrices must be finite");
}

TrajectoryData::TrajectoryData(GriddedSignal x, GriddedSignal u, GriddedSignal xdot,
                               std::optional<GriddedSignal> noise, bool derivative_estimated)
    : x_(std::move(x)),
      u_(std::move(u)),
      xdot_(std::move(xdot)),
      noise_(std::move(noise)),
      derivative_estimated_(derivative_estimated) {
  if (!x_.same_grid(u_) || !x_.same_grid(xdot_)) {
    throw GridError("x, u and xdot must share the same grid");
  }
  if (x_.dim() != xdot_.dim()) throw DimensionError("x and xdot dimensions differ");
  if (noise_) {
    if (!x_.same_grid(*noise_)) throw GridError("noise must share the trajectory grid");
    if (noise_->dim() != x_.dim()) throw DimensionError("noise and state dimensions differ");
  }
}

TrajectoryData simulate_lti(const LtiSystem& sys, const Vector& x0, const GriddedSignal& u,
                            const GriddedSignal& w, double step) {
  sys.validate();
  if (x0.size() != sys.n()) throw DimensionError("x0 has wrong dimension");
  if (u.dim() != sys.m()) throw DimensionError("input dimension does not match B");
  if (w.dim() != sys.n()) throw DimensionError("noise dimension does not match A");
  if (!u.same_grid(w)) throw GridError("u and w must share the same grid");
  if (!(step > 0.0) || std::abs(step - u.step()) > 1e-12 * u.step()) {
    throw GridError("simulation step does not match the input grid");
  }

  const Eigen::Index count = u.size();
  const double h = u.step();
  const Matrix& uv = u.values();
  const Matrix& wv = w.values();
  Matrix xs(sys.n(), count);
  xs.col(0) = x0;

  auto f = [&](const Vector& x, const Vector& uk, const Vector& wk) -> Vector {
    return sys.A * x + sys.B * uk + wk;
  };
  for (Eigen::Index k = 0; k + 1 < count; ++k) {
    const Vector x = xs.col(k);
    const Vector u0 = uv.col(k), u1 = uv.col(k + 1);
    const Vector w0 = wv.col(k), w1 = wv.col(k + 1);
    const Vector um = 0.5 * (u0 + u1), wm = 0.5 * (w0 + w1);
    const Vector k1 = f(x, u0, w0);
    const Vector k2 = f(x + 0.5 * h * k1, um, wm);
    const Vector k3 = f(x + 0.5 * h * k2, um, wm);
    const Vector k4 = f(x + h * k3, u1, w1);
    xs.col(k + 1) = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!xs.col(k + 1).allFinite()) {
      throw DivergedError("state became non-finite at t = " + std::to_string(u.time(k + 1)));
    }
  }
  Matrix xdot = sys.A * xs + sys.B * uv + wv;
  if (!xdot.allFinite()) throw DivergedError("state derivative became non-finite");
  return TrajectoryData(GriddedSignal(u.horizon(), std::move(xs)), u,
                        GriddedSignal(u.horizon(), std::move(xdot)), w, false);
}

GriddedSignal derivative_estimate(const GriddedSignal& x) {
  if (x.size() < 3) throw GridError("derivative estimate needs at least three grid points");
  const Matrix& v = x.values();
  const double h = x.step();
  const Eigen::Index last = x.size() - 1;
  Matrix d(x.dim(), x.size());
  d.col(0) = (-3.0 * v.col(0) + 4.0 * v.col(1) - v.col(2)) / (2.0 * h);
  for (Eigen::Index k = 1; k < last; ++k) d.col(k) = (v.col(k + 1) - v.col(k - 1)) / (2.0 * h);
  d.col(last) = (3.0 * v.col(last) - 4.0 * v.col(last - 1) + v.col(last - 2)) / (2.0 * h);
  return GriddedSignal(x.horizon(), std::move(d));
}

Matrix integrate_outer(const GriddedSignal& f, const GriddedSignal& g) {
  if (!f.same_grid(g)) throw GridError("integrand signals must share a grid");
  const Eigen::Index count = f.size();
  Vector weights = Vector::Constant(count, f.step());
  weights(0) *= 0.5;
  weights(count - 1) *= 0.5;
  return f.values() * weights.asDiagonal() * g.values().transpose();
}

namespace {

// Rows (ẋ, −x, −u) of the stacked data signal.
Matrix stack(const Matrix& xdot, const Matrix& x, const Matrix& u) {
  Matrix z(xdot.rows() + x.rows() + u.rows(), x.cols());
  z << xdot, -x, -u;
  return z;
}

}  // namespace

Gramian gramian_cont(const TrajectoryData& traj) {
  const GriddedSignal z(traj.horizon(),
                        stack(traj.xdot().values(), traj.x().values(), traj.u().values()));
  return Gramian{SymMatrix(integrate_outer(z, z)), GramianKind::Continuous, 0.0, traj.horizon(),
                 traj.n(), traj.m()};
}

SampledData sample(const TrajectoryData& traj, double delta) {
  const double h = traj.step();
  const double T = traj.horizon();
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ResamplingError("stepsize must be positive");
  const double ratio = delta / h;
  const double stride_d = std::round(ratio);
  if (stride_d < 1.0 || std::abs(ratio - stride_d) > 1e-9 * stride_d) {
    throw ResamplingError("stepsize " + std::to_string(delta) +
                          " is not an integer multiple of the grid step");
  }
  const double count_d = T / delta;
  const double count_r = std::round(count_d);
  if (count_r < 1.0 || std::abs(count_d - count_r) > 1e-9 * count_r) {
    throw ResamplingError("stepsize " + std::to_string(delta) + " does not divide the horizon");
  }
  const auto stride = static_cast<Eigen::Index>(stride_d);
  const auto count = static_cast<Eigen::Index>(count_r);
  if (stride * count != traj.x().intervals()) {
    throw ResamplingError("stepsize is inconsistent with the grid");
  }

  SampledData s;
  s.delta = delta;
  s.horizon = T;
  s.xdot.resize(traj.n(), count);
  s.x.resize(traj.n(), count);
  s.u.resize(traj.m(), count);
  if (traj.noise()) s.noise = Matrix(traj.n(), count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const Eigen::Index idx = k * stride;
    s.xdot.col(k) = traj.xdot().values().col(idx);
    s.x.col(k) = traj.x().values().col(idx);
    s.u.col(k) = traj.u().values().col(idx);
    if (s.noise) s.noise->col(k) = traj.noise()->values().col(idx);
  }
  return s;
}

Gramian gramian_disc(const SampledData& s) {
  const Matrix z = stack(s.xdot, s.x, s.u);
  return Gramian{SymMatrix(s.delta * z * z.transpose()), GramianKind::Discrete, s.delta, s.horizon,
                 s.x.rows(), s.u.rows()};
}

namespace benchmark {

double state(double t) {
  if (t <= 0.5) return 0.1 * std::exp(-t) * (9.0 + std::exp(t));
  return 0.1 * std::exp(-t) * (9.0 - 40.0 * std::sqrt(M_E) + std::exp(t) * (61.0 - 40.0 * t));
}

double noise(double t) { return t <= 0.5 ? 0.0 : 2.0 - 4.0 * t; }

double state_derivative(double t) { return kA * state(t) + kB * 1.0 + noise(t); }

Data make(double step) {
  const Eigen::Index n = grid_intervals(step, kHorizon);
  if (n % 2 != 0) throw GridError("benchmark grid must contain t = 1/2 (1/h even)");
  auto x = GriddedSignal::scalar_function(step, kHorizon, state);
  auto xdot = GriddedSignal::scalar_function(step, kHorizon, state_derivative);
  auto u = GriddedSignal::constant(Vector::Ones(1), step, kHorizon);
  auto w = GriddedSignal::scalar_function(step, kHorizon, noise);
  TrajectoryData traj(std::move(x), std::move(u), std::move(xdot), w, false);
  return Data{std::move(traj), std::move(w)};
}

}  // namespace benchmark

}  // namespace ctinform::signals
