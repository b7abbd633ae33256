#pragma once

#include <string>

#include "ctinform/signals.hpp"

namespace ctinform::noise {

using linalg::Matrix;
using linalg::SymMatrix;
using signals::GriddedSignal;

enum class BudgetKind { ContinuousIntegral, Discrete };

/// ∫₀ᵀ w wᵀ dt ⪯ Q (ContinuousIntegral) or δ W Wᵀ ⪯ Q over samples at kδ (Discrete).
class NoiseBudget {
 public:
  static NoiseBudget continuous(SymMatrix Q, double horizon);
  static NoiseBudget discrete(SymMatrix Q, double horizon, double delta);

  const SymMatrix& Q() const { return q_; }
  double horizon() const { return horizon_; }
  BudgetKind kind() const { return kind_; }
  double delta() const { return delta_; }
  Eigen::Index n() const { return q_.dim(); }

 private:
  NoiseBudget(SymMatrix Q, double horizon, BudgetKind kind, double delta);

  SymMatrix q_;
  double horizon_;
  BudgetKind kind_;
  double delta_;
};

enum class RegularityKind { SquareLipschitz, TotalSquareVariation };

/**
 * Where a regularity constant comes from. Only Assumed, BoundedLipschitz and
 * LambdaScaled values are upper bounds usable by the sufficiency tests;
 * GridEstimate is a lower bound read off the samples.
 */
enum class RegularitySource { Assumed, GridEstimate, BoundedLipschitz, LambdaScaled };

struct RegularityCertificate {
  RegularityKind kind = RegularityKind::SquareLipschitz;
  double value = 0.0;
  RegularitySource source = RegularitySource::Assumed;
  double l1 = 0.0, l2 = 0.0;        // BoundedLipschitz inputs
  double lambda = 0.0, base = 0.0;  // LambdaScaled: value = lambda * base

  static RegularityCertificate assumed_lipschitz(double L);
  static RegularityCertificate assumed_variation(double V);
  /// Lipschitz constant lambda·L_data for every system consistent with the data.
  static RegularityCertificate from_lambda(double lambda, double data_lipschitz);

  bool is_upper_bound() const { return source != RegularitySource::GridEstimate; }
  std::string describe() const;
};

std::string to_string(RegularitySource s);
std::string to_string(RegularityKind k);

/// Trapezoid ∫₀ᵀ w wᵀ dt.
SymMatrix integral_noise_matrix(const GriddedSignal& w);

/// δ W Wᵀ for W with one sample per column.
SymMatrix discrete_noise_matrix(const Matrix& W, double delta);

/// Pointwise bound w(t)w(t)ᵀ ⪯ Qbar on [0,T] implies the integral budget T·Qbar.
NoiseBudget pointwise_to_budget(const SymMatrix& Qbar, double horizon);

/// ‖v vᵀ − w wᵀ‖₂ in closed form (the difference has rank at most two).
double outer_difference_norm(const Eigen::Ref<const Eigen::VectorXd>& v,
                             const Eigen::Ref<const Eigen::VectorXd>& w);

/**
 * Largest difference quotient ‖wᵢwᵢᵀ − wⱼwⱼᵀ‖/|tᵢ − tⱼ| over all pairs when
 * the grid has at most 2000 points, otherwise over pairs at distance 1 and 10.
 */
RegularityCertificate estimate_square_lipschitz(const GriddedSignal& w);

/// 2·L1·L2 for a signal with ‖w‖ ≤ L1 and Lipschitz constant L2.
double bounded_lipschitz_constant(double L1, double L2);
/// w with ‖w‖ ≤ L1 and L2-Lipschitz is 2·L1·L2-square Lipschitz.
RegularityCertificate square_lipschitz_from_bounds(double L1, double L2);

/// Σ ‖wᵢ₊₁wᵢ₊₁ᵀ − wᵢwᵢᵀ‖ over adjacent grid points.
RegularityCertificate estimate_total_square_variation(const GriddedSignal& w);

/// ‖∫wwᵀ − δWWᵀ‖ ≤ ½δTL (SquareLipschitz) or δV (TotalSquareVariation).
double deviation_bound(const RegularityCertificate& reg, double delta, double horizon);

/// Q ← Q + margin·I; the caller decides which direction the new budget describes.
NoiseBudget inflate_budget(const NoiseBudget& b, double margin);
NoiseBudget inflate_budget(const NoiseBudget& b, double margin, BudgetKind kind, double delta);

/// ½(γ − δ)TL for γ = (ℓ+1)δ; throws StepsizeError otherwise.
double cross_stepsize_bound(double delta, double gamma, double horizon, double L);

/// True when T/δ is a positive integer within 1e-9 relative.
bool divides(double delta, double horizon);

}  // namespace ctinform::noise
