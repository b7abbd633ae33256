#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctinform/linalg.hpp"

namespace ctinform::sdp {

using linalg::Matrix;
using linalg::SymMatrix;
using linalg::Vector;

/// One linear matrix inequality F₀ + Σᵢ yᵢ Fᵢ ⪰ 0.
struct LmiBlock {
  SymMatrix constant;
  std::vector<SymMatrix> coefficients;  // one per decision variable

  Eigen::Index dim() const { return constant.dim(); }
  SymMatrix evaluate(const Vector& y) const;
};

/// maximize cᵀy subject to every block being positive semidefinite.
struct SdpProblem {
  int num_vars = 0;
  std::vector<LmiBlock> blocks;
  Vector objective;
  std::vector<std::string> var_names;

  /// Throws InvalidProblem when dimensions are inconsistent or data is non-finite.
  void validate() const;

  /// 1 + max over blocks of ‖F₀‖₂; tolerances are relative to this.
  double scale() const;
};

enum class SdpStatus { StrictlyFeasible, Feasible, Infeasible, NumericalFailure };

const char* to_string(SdpStatus s);

struct SdpSettings {
  double eps_feas = 1e-7;
  double gap_tol = 1e-8;
  int max_outer_iterations = 200;
  int max_newton_iterations = 80;
  double mu_shrink = 0.2;
  /// t_cap = cap_factor·scale() for the phase-I shift.
  double cap_factor = 10.0;
  /// Variables are confined to |yᵢ| ≤ box_factor·scale() so every barrier subproblem is bounded.
  double box_factor = 1e6;
  /// Start the objective phase here instead of at the phase-I point (must be strictly feasible).
  std::optional<Vector> initial_y;
};

struct Phase1Result {
  double margin = 0.0;  // t* = sup { t : F_k(y) ⪰ t·I for all k }, capped at t_cap
  Vector y;             // point attaining (approximately) the margin
  bool capped = false;
  bool converged = false;
  int iterations = 0;
};

struct SdpReport {
  SdpStatus status = SdpStatus::NumericalFailure;
  Vector y;
  double objective_value = 0.0;
  double feasibility_margin = 0.0;  // min over blocks of min_eig at y
  double duality_gap = 0.0;
  int iterations = 0;
  double phase1_margin = 0.0;
  std::string message;

  bool feasible() const {
    return status == SdpStatus::StrictlyFeasible || status == SdpStatus::Feasible;
  }
};

/// Largest uniform shift t with F_k(y) ⪰ t·I on every block.
Phase1Result find_interior_point(const SdpProblem& p, const SdpSettings& s = {});

double phase1_margin(const SdpProblem& p, const SdpSettings& s = {});

/**
 * Log-det barrier path following.
 *
 * A phase-I solve decides strict feasibility (t* > eps_feas·scale), then the
 * barrier problem max cᵀy + μ Σ log det F_k(y) is re-centred by damped Newton
 * steps while μ shrinks geometrically, until μ·Σ dim_k ≤ gap_tol·(1 + |cᵀy|).
 * Marginal problems (|t*| ≤ eps_feas·scale) are reported as NumericalFailure.
 */
SdpReport solve(const SdpProblem& p, const SdpSettings& s = {});

/// min over blocks of min_eig(F_k(y)).
double feasibility_margin(const SdpProblem& p, const Vector& y);

/**
 * Rewrites the problem in new variables z with y = offset + basis·z.
 * Used to eliminate linear equality constraints before calling solve().
 */
SdpProblem substitute(const SdpProblem& p, const Vector& offset, const Matrix& basis,
                      std::vector<std::string> new_names = {});

}  // namespace ctinform::sdp
