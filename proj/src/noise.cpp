#include "ctinform/noise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ctinform/errors.hpp"

namespace ctinform::noise {

namespace {

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be finite and nonnegative");
  }
}

}  // namespace

bool divides(double delta, double horizon) {
  if (!(delta > 0.0) || !(horizon > 0.0)) return false;
  const double r = horizon / delta;
  const double k = std::round(r);
  return k >= 1.0 && std::abs(r - k) <= 1e-9 * k;
}

NoiseBudget::NoiseBudget(SymMatrix Q, double horizon, BudgetKind kind, double delta)
    : q_(std::move(Q)), horizon_(horizon), kind_(kind), delta_(delta) {
  if (!linalg::is_psd(q_)) throw InvalidBudget("noise budget Q must be positive semidefinite");
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw InvalidBudget("noise budget horizon must be positive");
  }
  if (kind_ == BudgetKind::Discrete && !divides(delta_, horizon_)) {
    throw InvalidBudget("sampling interval must divide the horizon");
  }
}

NoiseBudget NoiseBudget::continuous(SymMatrix Q, double horizon) {
  return NoiseBudget(std::move(Q), horizon, BudgetKind::ContinuousIntegral, 0.0);
}

NoiseBudget NoiseBudget::discrete(SymMatrix Q, double horizon, double delta) {
  return NoiseBudget(std::move(Q), horizon, BudgetKind::Discrete, delta);
}

RegularityCertificate RegularityCertificate::assumed_lipschitz(double L) {
  require_nonnegative(L, "square Lipschitz constant");
  RegularityCertificate c;
  c.kind = RegularityKind::SquareLipschitz;
  c.value = L;
  return c;
}

RegularityCertificate RegularityCertificate::assumed_variation(double V) {
  require_nonnegative(V, "total square variation");
  RegularityCertificate c;
  c.kind = RegularityKind::TotalSquareVariation;
  c.value = V;
  return c;
}

RegularityCertificate RegularityCertificate::from_lambda(double lambda, double data_lipschitz) {
  require_nonnegative(data_lipschitz, "data square Lipschitz constant");
  if (!(lambda >= 1.0)) throw InvalidArgument("lambda must be at least 1");
  RegularityCertificate c;
  c.kind = RegularityKind::SquareLipschitz;
  c.source = RegularitySource::LambdaScaled;
  c.lambda = lambda;
  c.base = data_lipschitz;
  c.value = lambda * data_lipschitz;
  return c;
}

std::string to_string(RegularitySource s) {
  switch (s) {
    case RegularitySource::Assumed: return "assumed";
    case RegularitySource::GridEstimate: return "grid-estimate";
    case RegularitySource::BoundedLipschitz: return "bounded-and-lipschitz";
    case RegularitySource::LambdaScaled: return "lambda-scaled";
  }
  return "unknown";
}

std::string to_string(RegularityKind k) {
  return k == RegularityKind::SquareLipschitz ? "square-lipschitz" : "total-square-variation";
}

std::string RegularityCertificate::describe() const {
  std::ostringstream os;
  os.precision(9);
  os << to_string(kind) << ' ' << value << " (" << to_string(source);
  if (source == RegularitySource::BoundedLipschitz) os << ", L1 = " << l1 << ", L2 = " << l2;
  if (source == RegularitySource::LambdaScaled) os << ", lambda = " << lambda << ", base = " << base;
  os << ')';
  return os.str();
}

SymMatrix integral_noise_matrix(const GriddedSignal& w) {
  return SymMatrix(signals::integrate_outer(w, w));
}

SymMatrix discrete_noise_matrix(const Matrix& W, double delta) {
  if (W.rows() < 1) throw DimensionError("noise samples need at least one row");
  if (!(delta > 0.0)) throw InvalidArgument("sampling interval must be positive");
  return SymMatrix(delta * W * W.transpose());
}

NoiseBudget pointwise_to_budget(const SymMatrix& Qbar, double horizon) {
  if (!linalg::is_psd(Qbar)) throw InvalidBudget("pointwise noise bound must be positive semidefinite");
  return NoiseBudget::continuous(Qbar * horizon, horizon);
}

double outer_difference_norm(const Eigen::Ref<const Eigen::VectorXd>& v,
                             const Eigen::Ref<const Eigen::VectorXd>& w) {
  const double tr = v.squaredNorm() - w.squaredNorm();
  // ‖v‖²‖w‖² − (v·w)² as a sum of squared 2×2 minors, exact zero for parallel vectors.
  double gram = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    for (Eigen::Index j = i + 1; j < v.size(); ++j) {
      const double minor = v(i) * w(j) - v(j) * w(i);
      gram += minor * minor;
    }
  return 0.5 * (std::abs(tr) + std::sqrt(tr * tr + 4.0 * gram));
}

RegularityCertificate estimate_square_lipschitz(const GriddedSignal& w) {
  const Matrix& v = w.values();
  const Eigen::Index count = w.size();
  const double h = w.step();
  double best = 0.0;
  auto visit = [&](Eigen::Index i, Eigen::Index j) {
    const double q = outer_difference_norm(v.col(i), v.col(j)) / (static_cast<double>(j - i) * h);
    best = std::max(best, q);
  };
  if (count <= 2000) {
    for (Eigen::Index i = 0; i < count; ++i)
      for (Eigen::Index j = i + 1; j < count; ++j) visit(i, j);
  } else {
    for (Eigen::Index i = 0; i + 1 < count; ++i) {
      visit(i, i + 1);
      if (i + 10 < count) visit(i, i + 10);
    }
  }
  RegularityCertificate c;
  c.kind = RegularityKind::SquareLipschitz;
  c.value = best;
  c.source = RegularitySource::GridEstimate;
  return c;
}

double bounded_lipschitz_constant(double L1, double L2) {
  require_nonnegative(L1, "L1");
  require_nonnegative(L2, "L2");
  return 2.0 * L1 * L2;
}

RegularityCertificate square_lipschitz_from_bounds(double L1, double L2) {
  RegularityCertificate c;
  c.kind = RegularityKind::SquareLipschitz;
  c.value = bounded_lipschitz_constant(L1, L2);
  c.source = RegularitySource::BoundedLipschitz;
  c.l1 = L1;
  c.l2 = L2;
  return c;
}

RegularityCertificate estimate_total_square_variation(const GriddedSignal& w) {
  const Matrix& v = w.values();
  double total = 0.0;
  for (Eigen::Index k = 0; k + 1 < w.size(); ++k) total += outer_difference_norm(v.col(k + 1), v.col(k));
  RegularityCertificate c;
  c.kind = RegularityKind::TotalSquareVariation;
  c.value = total;
  c.source = RegularitySource::GridEstimate;
  return c;
}

double deviation_bound(const RegularityCertificate& reg, double delta, double horizon) {
  if (!divides(delta, horizon)) throw StepsizeError("sampling interval must divide the horizon");
  require_nonnegative(reg.value, "regularity constant");
  if (reg.kind == RegularityKind::SquareLipschitz) return 0.5 * delta * horizon * reg.value;
  return delta * reg.value;
}

NoiseBudget inflate_budget(const NoiseBudget& b, double margin) {
  return inflate_budget(b, margin, b.kind(), b.delta());
}

NoiseBudget inflate_budget(const NoiseBudget& b, double margin, BudgetKind kind, double delta) {
  require_nonnegative(margin, "inflation margin");
  SymMatrix q = b.Q() + SymMatrix::identity(b.n()) * margin;
  if (kind == BudgetKind::Discrete) return NoiseBudget::discrete(std::move(q), b.horizon(), delta);
  return NoiseBudget::continuous(std::move(q), b.horizon());
}

double cross_stepsize_bound(double delta, double gamma, double horizon, double L) {
  if (!divides(delta, horizon) || !divides(gamma, horizon)) {
    throw StepsizeError("both stepsizes must divide the horizon");
  }
  const double ratio = gamma / delta;
  const double k = std::round(ratio);
  if (k < 1.0 || std::abs(ratio - k) > 1e-9 * k) {
    throw StepsizeError("coarse stepsize must be an integer multiple of the fine one");
  }
  require_nonnegative(L, "square Lipschitz constant");
  return 0.5 * (gamma - delta) * horizon * L;
}

}  // namespace ctinform::noise
