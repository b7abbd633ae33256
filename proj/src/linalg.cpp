#include "ctinform/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ctinform/errors.hpp"

namespace ctinform::linalg {

bool all_finite(const Matrix& a) { return a.allFinite(); }

SymMatrix::SymMatrix(const Matrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidMatrix("symmetric matrix must be square with dim >= 1");
  }
  if (!a.allFinite()) {
    throw InvalidMatrix("symmetric matrix has non-finite entries");
  }
  m_ = 0.5 * (a + a.transpose());
}

SymMatrix SymMatrix::zero(Eigen::Index n) { return SymMatrix(Matrix::Zero(n, n)); }

SymMatrix SymMatrix::identity(Eigen::Index n) { return SymMatrix(Matrix::Identity(n, n)); }

SymMatrix SymMatrix::diagonal(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal())); }

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
  if (dim() != o.dim()) throw InvalidMatrix("dimension mismatch in SymMatrix sum");
  return SymMatrix(m_ + o.m_);
}

SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
  if (dim() != o.dim()) throw InvalidMatrix("dimension mismatch in SymMatrix difference");
  return SymMatrix(m_ - o.m_);
}

SymMatrix SymMatrix::operator*(double s) const { return SymMatrix(m_ * s); }

SymMatrix SymMatrix::congruence(const Matrix& t) const {
  if (t.rows() != dim()) throw InvalidMatrix("congruence factor has wrong row count");
  return SymMatrix(t.transpose() * m_ * t);
}

EigDecomposition sym_eig(const SymMatrix& sym) {
  const Eigen::Index n = sym.dim();
  Matrix a = sym.matrix();
  Matrix v = Matrix::Identity(n, n);

  const double frob = a.norm();
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps && frob > 0.0; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-15 * frob) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = c * arq + s * arp;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  EigDecomposition out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]);
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

double min_eig(const SymMatrix& a) { return sym_eig(a).eigenvalues(0); }

double max_eig(const SymMatrix& a) {
  const auto e = sym_eig(a);
  return e.eigenvalues(e.eigenvalues.size() - 1);
}

double spectral_norm(const SymMatrix& a) {
  const auto e = sym_eig(a);
  return std::max(std::abs(e.eigenvalues(0)), std::abs(e.eigenvalues(e.eigenvalues.size() - 1)));
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  // ‖A‖₂² = λ_max(AᵀA) on the smaller Gram side.
  const Matrix gram = a.rows() < a.cols() ? Matrix(a * a.transpose()) : Matrix(a.transpose() * a);
  return std::sqrt(std::max(0.0, max_eig(SymMatrix(gram))));
}

bool is_psd(const SymMatrix& a, double tol) {
  if (tol < 0.0) throw InvalidArgument("is_psd tolerance must be non-negative");
  const auto e = sym_eig(a);
  const double lo = e.eigenvalues(0);
  const double norm = std::max(std::abs(lo), std::abs(e.eigenvalues(e.eigenvalues.size() - 1)));
  return lo >= -tol * (1.0 + norm);
}

Matrix cholesky(const SymMatrix& a) {
  Eigen::LLT<Matrix> llt(a.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPd("matrix is not positive definite (non-positive Cholesky pivot)");
  }
  return llt.matrixL();
}

SymMatrix pseudo_inverse(const SymMatrix& a, double rel_tol) {
  const auto e = sym_eig(a);
  const double norm = std::max(std::abs(e.eigenvalues(0)),
                               std::abs(e.eigenvalues(e.eigenvalues.size() - 1)));
  Vector inv = Vector::Zero(a.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    if (std::abs(e.eigenvalues(i)) > rel_tol * norm) inv(i) = 1.0 / e.eigenvalues(i);
  }
  return SymMatrix(e.eigenvectors * inv.asDiagonal() * e.eigenvectors.transpose());
}

}  // namespace ctinform::linalg
