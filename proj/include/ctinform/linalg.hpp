#pragma once

#include <Eigen/Dense>

namespace ctinform::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative tolerance used by is_psd() when the caller does not pick one.
inline constexpr double kDefaultPsdTol = 1e-8;

/**
 * Dense real symmetric matrix.
 *
 * Construction symmetrizes the input as (A + Aᵀ)/2, so entries(i,j) and
 * entries(j,i) are bitwise equal afterwards. Non-square, empty or non-finite
 * input is rejected with InvalidMatrix.
 */
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& a);

  static SymMatrix zero(Eigen::Index n);
  static SymMatrix identity(Eigen::Index n);
  static SymMatrix diagonal(const Vector& d);
  static SymMatrix scalar(double v) { return SymMatrix(Matrix::Constant(1, 1, v)); }

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  SymMatrix operator+(const SymMatrix& o) const;
  SymMatrix operator-(const SymMatrix& o) const;
  SymMatrix operator*(double s) const;
  SymMatrix operator-() const { return *this * -1.0; }

  /// Congruence Tᵀ·A·T.
  SymMatrix congruence(const Matrix& t) const;

 private:
  Matrix m_;
};

inline SymMatrix operator*(double s, const SymMatrix& a) { return a * s; }

struct EigDecomposition {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // columns, orthonormal
};

/// Cyclic Jacobi eigendecomposition. Throws InvalidMatrix on non-finite input.
EigDecomposition sym_eig(const SymMatrix& a);

double min_eig(const SymMatrix& a);
double max_eig(const SymMatrix& a);

/// max |λ|, i.e. the induced Euclidean norm.
double spectral_norm(const SymMatrix& a);

/// Induced Euclidean norm of a general (rectangular) matrix.
double spectral_norm(const Matrix& a);

/// min_eig(a) ≥ −tol·(1 + ‖a‖₂).
bool is_psd(const SymMatrix& a, double tol = kDefaultPsdTol);

/// Lower-triangular L with L·Lᵀ = a. Throws NotPd when a pivot is not positive.
Matrix cholesky(const SymMatrix& a);

/// Moore–Penrose pseudo-inverse; eigenvalues below rel_tol·‖a‖ are treated as zero.
SymMatrix pseudo_inverse(const SymMatrix& a, double rel_tol = 1e-12);

bool all_finite(const Matrix& a);

}  // namespace ctinform::linalg
