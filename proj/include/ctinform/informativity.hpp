#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctinform/noise.hpp"
#include "ctinform/sdp.hpp"
#include "ctinform/signals.hpp"

namespace ctinform::informativity {

using linalg::Matrix;
using linalg::SymMatrix;
using linalg::Vector;

enum class Provenance { Continuous, Sampled };

enum class Verdict { Informative, NotInformative, Indeterminate, Insufficient, NoExcitation };

/// Upper-case label used in reports ("INFORMATIVE", "NOT-INFORMATIVE", ...).
std::string to_string(Verdict v);
std::string to_string(Provenance p);

inline constexpr double kMembershipTol = 1e-9;

/**
 * Quadratic matrix inequality describing every (A, B) consistent with the
 * data: [I A B] N [I A B]ᵀ ⪰ 0 with N = diag(Q, 0, 0) − G and G the data
 * Gramian of z = (ẋ, −x, −u).
 */
class DataQmi {
 public:
  /// Throws DimensionError on size mismatch and InvalidMatrix unless N22 ⪯ 0.
  DataQmi(SymMatrix N, Eigen::Index n, Eigen::Index m, Provenance provenance, double delta,
          double horizon, std::optional<noise::NoiseBudget> budget = std::nullopt);

  const SymMatrix& N() const { return n_mat_; }
  Eigen::Index n() const { return n_; }
  Eigen::Index m() const { return m_; }
  Provenance provenance() const { return provenance_; }
  double delta() const { return delta_; }
  double horizon() const { return horizon_; }
  const std::optional<noise::NoiseBudget>& budget() const { return budget_; }
  /// max(1, ‖N‖₂); floors and tolerances are taken relative to this.
  double scale() const { return scale_; }

  Matrix N11() const { return n_mat_.matrix().topLeftCorner(n_, n_); }
  Matrix N12() const { return n_mat_.matrix().topRightCorner(n_, n_ + m_); }
  Matrix N22() const { return n_mat_.matrix().bottomRightCorner(n_ + m_, n_ + m_); }

  /// ∫(x;u)(x;u)ᵀ or its sampled counterpart, i.e. −N22.
  SymMatrix state_input_gramian() const { return SymMatrix(-N22()); }

  /// N11 − N12 N22† N21 ⪰ 0.
  bool nonempty(double tol = kMembershipTol) const;

 private:
  SymMatrix n_mat_;
  Eigen::Index n_, m_;
  Provenance provenance_;
  double delta_, horizon_;
  std::optional<noise::NoiseBudget> budget_;
  double scale_;
};

/// Throws ProvenanceError when the Gramian kind and the budget kind disagree.
DataQmi assemble_qmi(const signals::Gramian& g, const noise::NoiseBudget& b);

/// min_eig([I A B] N [I A B]ᵀ).
double membership_margin(const Matrix& A, const Matrix& B, const DataQmi& q);
/// membership_margin ≥ −tol·scale.
bool membership(const Matrix& A, const Matrix& B, const DataQmi& q, double tol = kMembershipTol);

/// Which stabilization condition a certificate satisfies.
enum class Condition { ContinuousData, SampledData, SampledSufficient };
std::string to_string(Condition c);

struct CertificateCheck {
  bool ok = false;
  double residual = 0.0;  // min_eig of the certified matrix
  double p_min_eig = 0.0;
  double beta_excess = 0.0;  // β − floor
};

/**
 * Evaluates −N − [[βI, P, PKᵀ], [P, 0, 0], [KP, 0, 0]] and accepts when its
 * smallest eigenvalue is ≥ −tol·scale, P ≻ 0 and β > beta_floor.
 */
CertificateCheck check_certificate(const DataQmi& q, const SymMatrix& P, const Matrix& K, double beta,
                                   double beta_floor = 0.0, double tol = 1e-7);

struct StabilizationCertificate {
  SymMatrix P = SymMatrix::identity(1);
  Matrix K;
  Matrix L;  // K·P
  double beta = 0.0;
  Condition condition = Condition::ContinuousData;
  double p_floor = 0.0;
  double b_floor = 0.0;
  double beta_floor = 0.0;  // lower bound imposed on β (b_floor or ½δTL + b_floor)
  double cond_P = 0.0;
  double residual = 0.0;
  bool reduced = false;  // unexcited directions were eliminated before solving
  std::string solver_summary;
};

struct SynthesisResult {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<StabilizationCertificate> certificate;
  double phase1_margin = 0.0;
  std::string message;

  bool informative() const { return verdict == Verdict::Informative; }
};

struct SynthesisOptions {
  sdp::SdpSettings sdp;
  /// p_floor = b_floor = floor_factor·scale.
  double floor_factor = 1e-6;
};

/**
 * Searches for P ≻ 0, L and β > 0 with
 * −N − [[βI, P, Lᵀ], [P, 0, 0], [L, 0, 0]] ⪰ 0 and returns K = L P⁻¹.
 * Strictly positive feasibility margin gives a certificate, strictly
 * negative gives NotInformative, anything within tolerance is Indeterminate.
 */
SynthesisResult synthesize(const DataQmi& q, const SynthesisOptions& opts = {});

struct MarginReport {
  Verdict verdict = Verdict::Indeterminate;
  double beta_hat = 0.0;
  std::optional<SymMatrix> P;
  Matrix K;
  double trace_bound = 0.0;   // trace(P) ≤ trace_bound during the maximization
  bool trace_active = false;
  std::optional<double> delta_max;  // β̂/(TL)
  std::optional<long> ell_max;      // coarsening factor, sampled data only
  double duality_gap = 0.0;
  std::string message;
};

/**
 * Maximizes β over the same LMI with trace(P) ≤ n·scale. With a regularity
 * certificate the stepsize and coarsening bounds are filled in.
 */
MarginReport maximize_beta(const DataQmi& q,
                           const std::optional<noise::RegularityCertificate>& reg = std::nullopt,
                           const SynthesisOptions& opts = {});

/// Square Lipschitz constant implied by a certificate: L itself, or 2V/T for a variation bound.
double equivalent_lipschitz(const noise::RegularityCertificate& reg, double horizon);

/**
 * Sampled LMI with β ≥ ½δTL + b_floor. A certificate stabilizes every system
 * consistent with the continuous-time noise model whose noise has the given
 * regularity. GridEstimate regularity is rejected with ProvenanceError.
 */
SynthesisResult sampled_sufficient(const DataQmi& q, const noise::RegularityCertificate& reg,
                                   const SynthesisOptions& opts = {});

/// β̂/(TL); +infinity when L = 0.
double stepsize_bound(double beta_hat, double horizon, double L);

/// Largest ℓ with ℓ < 2β̂/(δTL) and T/((ℓ+1)δ) integer; 0 when none.
long coarsening_bound(double beta_hat, double delta, double horizon, double L);

struct LambdaCertificate {
  double lambda = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool excitation_ok = false;
  double residual = 0.0;
};

struct LambdaResult {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<LambdaCertificate> certificate;
  double excitation_min_eig = 0.0;
  std::string message;
};

/**
 * Smallest λ ≥ 1 with AAᵀ + BBᵀ ≺ (λ−1)I on every consistent system, via
 * diag((λ−1−β)I, −I, −I) − αN ⪰ 0 with α ≥ 0, β ≥ b_floor. Returns
 * NoExcitation when ∫(x;u)(x;u)ᵀ is not positive definite.
 */
LambdaResult certify_lambda(const DataQmi& q, const SynthesisOptions& opts = {});

struct RegionGrid {
  Vector a, b;
  std::vector<std::uint8_t> inside;  // index j·a.size() + i for (a_i, b_j)

  bool at(Eigen::Index i, Eigen::Index j) const {
    return inside[static_cast<std::size_t>(j * a.size() + i)] != 0;
  }
};

/// Linearly spaced values; a single point yields lo.
Vector linspace(double lo, double hi, Eigen::Index count);

/// Membership of scalar systems (a, b) on a grid; throws DimensionError unless n = m = 1.
RegionGrid region_scan(const DataQmi& q, const Vector& a, const Vector& b, int workers = 1,
                       double tol = kMembershipTol);

/// (A+BK)P + P(A+BK)ᵀ ≺ 0; throws InvalidArgument unless P ≻ 0.
bool lyapunov_check(const Matrix& A, const Matrix& B, const Matrix& K, const SymMatrix& P);

/**
 * Draws [A B] from Z(N) when ∫(x;u)(x;u)ᵀ ≻ 0, using the parametrization
 * [A B] = Xc + S^{1/2} U (−N22)^{-1/2} with ‖U‖₂ ≤ 1. A fraction of the
 * draws has ‖U‖₂ = 1 so the boundary is covered.
 */
std::vector<Matrix> sample_members(const DataQmi& q, int count, std::uint64_t seed,
                                   double boundary_fraction = 0.25);

}  // namespace ctinform::informativity
