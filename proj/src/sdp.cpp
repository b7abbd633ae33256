#include "ctinform/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctinform/errors.hpp"

namespace ctinform::sdp {

SymMatrix LmiBlock::evaluate(const Vector& y) const {
  Matrix f = constant.matrix();
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    f += y(static_cast<Eigen::Index>(i)) * coefficients[i].matrix();
  }
  return SymMatrix(f);
}

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::StrictlyFeasible: return "StrictlyFeasible";
    case SdpStatus::Feasible: return "Feasible";
    case SdpStatus::Infeasible: return "Infeasible";
    case SdpStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

void SdpProblem::validate() const {
  if (num_vars < 0) throw InvalidProblem("negative variable count");
  if (blocks.empty()) throw InvalidProblem("problem has no LMI blocks");
  if (objective.size() != num_vars) throw InvalidProblem("objective length != num_vars");
  if (!objective.allFinite()) throw InvalidProblem("objective has non-finite entries");
  if (!var_names.empty() && static_cast<int>(var_names.size()) != num_vars) {
    throw InvalidProblem("var_names length != num_vars");
  }
  for (const auto& b : blocks) {
    if (static_cast<int>(b.coefficients.size()) != num_vars) {
      throw InvalidProblem("block coefficient count != num_vars");
    }
    for (const auto& f : b.coefficients) {
      if (f.dim() != b.dim()) throw InvalidProblem("block coefficient dimension mismatch");
    }
  }
}

double SdpProblem::scale() const {
  double s = 0.0;
  for (const auto& b : blocks) s = std::max(s, linalg::spectral_norm(b.constant));
  return 1.0 + s;
}

double feasibility_margin(const SdpProblem& p, const Vector& y) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : p.blocks) m = std::min(m, linalg::min_eig(b.evaluate(y)));
  return m;
}

namespace {

// Plain-matrix LMI used inside the barrier iterations.
struct DenseBlock {
  Matrix f0;
  std::vector<Matrix> fi;
};

struct DenseLmi {
  int nv = 0;
  std::vector<DenseBlock> blocks;

  Eigen::Index total_dim() const {
    Eigen::Index d = 0;
    for (const auto& b : blocks) d += b.f0.rows();
    return d;
  }
};

Matrix eval_block(const DenseBlock& b, const Vector& z) {
  Matrix g = b.f0;
  for (std::size_t i = 0; i < b.fi.size(); ++i) g += z(static_cast<Eigen::Index>(i)) * b.fi[i];
  return g;
}

// −Σ log det G_k(z); +∞ outside the interior.
double barrier_value(const DenseLmi& lmi, const Vector& z) {
  double v = 0.0;
  for (const auto& b : lmi.blocks) {
    Eigen::LLT<Matrix> llt(eval_block(b, z));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const Matrix& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      const double d = l(i, i);
      if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
      v -= 2.0 * std::log(d);
    }
  }
  return v;
}

// Solves H·x = rhs for symmetric positive (semi)definite H with diagonal
// equilibration and, if needed, growing Tikhonov regularization.
Vector solve_newton_system(const Matrix& h, const Vector& rhs) {
  const Eigen::Index n = h.rows();
  Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = h(i, i) > 0.0 ? 1.0 / std::sqrt(h(i, i)) : 1.0;
  Matrix hs = d.asDiagonal() * h * d.asDiagonal();
  const Vector rs = d.asDiagonal() * rhs;
  double reg = 0.0;
  for (int attempt = 0; attempt < 12; ++attempt) {
    Matrix hr = hs;
    hr.diagonal().array() += reg;
    Eigen::LLT<Matrix> llt(hr);
    if (llt.info() == Eigen::Success) {
      Vector x = llt.solve(rs);
      if (x.allFinite()) return d.asDiagonal() * x;
    }
    reg = reg == 0.0 ? 1e-14 : reg * 100.0;
  }
  return Vector::Zero(n);
}

struct CenterResult {
  bool ok = true;
  int iterations = 0;
};

// Damped Newton on φ(z) = −cᵀz/μ − Σ log det G_k(z), starting strictly inside.
CenterResult center(const DenseLmi& lmi, const Vector& c, double mu, Vector& z, int max_iter) {
  CenterResult res;
  const int nv = lmi.nv;
  auto phi = [&](const Vector& v) { return -c.dot(v) / mu + barrier_value(lmi, v); };

  for (int it = 0; it < max_iter; ++it) {
    Vector grad = -c / mu;
    Matrix hess = Matrix::Zero(nv, nv);
    std::vector<Matrix> scaled(static_cast<std::size_t>(nv));
    for (const auto& b : lmi.blocks) {
      Eigen::LLT<Matrix> llt(eval_block(b, z));
      if (llt.info() != Eigen::Success) {
        res.ok = false;
        return res;
      }
      const auto lower = llt.matrixL();
      for (int i = 0; i < nv; ++i) {
        // A_i = L⁻¹ F_i L⁻ᵀ
        Matrix tmp = lower.solve(b.fi[static_cast<std::size_t>(i)]);
        scaled[static_cast<std::size_t>(i)] = lower.solve(tmp.transpose()).transpose();
        grad(i) -= scaled[static_cast<std::size_t>(i)].trace();
      }
      for (int i = 0; i < nv; ++i) {
        for (int j = i; j < nv; ++j) {
          const double v = scaled[static_cast<std::size_t>(i)]
                               .cwiseProduct(scaled[static_cast<std::size_t>(j)])
                               .sum();
          hess(i, j) += v;
          if (i != j) hess(j, i) += v;
        }
      }
    }
    ++res.iterations;
    const Vector step = solve_newton_system(hess, -grad);
    const double decrement = -grad.dot(step);
    if (!(decrement > 0.0) || decrement / 2.0 <= 1e-10) return res;

    const double f0 = phi(z);
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Vector trial = z + alpha * step;
      const double f1 = phi(trial);
      if (std::isfinite(f1) && f1 <= f0 - 0.25 * alpha * decrement) {
        z = trial;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    // No progress possible at working precision: accept the current point.
    if (!moved) return res;
  }
  return res;
}

struct PathResult {
  Vector z;
  double mu = 0.0;
  int iterations = 0;
  bool converged = false;
  bool broken = false;
};

PathResult follow_path(const DenseLmi& lmi, const Vector& c, Vector z, const SdpSettings& s,
                       double mu0) {
  PathResult out;
  double mu = mu0;
  const double dims = static_cast<double>(lmi.total_dim());
  for (int outer = 0; outer < s.max_outer_iterations; ++outer) {
    const auto cr = center(lmi, c, mu, z, s.max_newton_iterations);
    out.iterations += cr.iterations;
    if (!cr.ok) {
      out.broken = true;
      break;
    }
    if (dims * mu <= s.gap_tol * (1.0 + std::abs(c.dot(z)))) {
      out.converged = true;
      break;
    }
    mu *= s.mu_shrink;
  }
  out.z = std::move(z);
  out.mu = mu;
  return out;
}

DenseLmi to_dense(const SdpProblem& p) {
  DenseLmi lmi;
  lmi.nv = p.num_vars;
  for (const auto& b : p.blocks) {
    DenseBlock d{b.constant.matrix(), {}};
    for (const auto& f : b.coefficients) d.fi.push_back(f.matrix());
    lmi.blocks.push_back(std::move(d));
  }
  return lmi;
}

// |z_i| ≤ radius for the first `count` variables of an nv-variable LMI.
void add_box(DenseLmi& lmi, int count, double radius) {
  for (int i = 0; i < count; ++i) {
    for (double sign : {1.0, -1.0}) {
      DenseBlock b{Matrix::Constant(1, 1, radius), {}};
      for (int j = 0; j < lmi.nv; ++j) {
        b.fi.push_back(Matrix::Constant(1, 1, j == i ? -sign : 0.0));
      }
      lmi.blocks.push_back(std::move(b));
    }
  }
}

}  // namespace

Phase1Result find_interior_point(const SdpProblem& p, const SdpSettings& s) {
  p.validate();
  const double scale = p.scale();
  const double t_cap = s.cap_factor * scale;
  const int nv = p.num_vars;

  // Variables (y, t): F_k(y) − t·I ⪰ 0, t ≤ t_cap, box on y.
  DenseLmi lmi;
  lmi.nv = nv + 1;
  for (const auto& b : p.blocks) {
    DenseBlock d{b.constant.matrix(), {}};
    for (const auto& f : b.coefficients) d.fi.push_back(f.matrix());
    d.fi.push_back(-Matrix::Identity(b.dim(), b.dim()));
    lmi.blocks.push_back(std::move(d));
  }
  {
    DenseBlock cap{Matrix::Constant(1, 1, t_cap), {}};
    for (int j = 0; j < nv; ++j) cap.fi.push_back(Matrix::Zero(1, 1));
    cap.fi.push_back(Matrix::Constant(1, 1, -1.0));
    lmi.blocks.push_back(std::move(cap));
  }
  add_box(lmi, nv, s.box_factor * scale);

  Vector z = Vector::Zero(nv + 1);
  const double start_margin = feasibility_margin(p, Vector::Zero(nv));
  z(nv) = std::min(start_margin, t_cap) - 1.0;

  Vector c = Vector::Zero(nv + 1);
  c(nv) = 1.0;
  const auto path = follow_path(lmi, c, z, s, scale);

  Phase1Result r;
  r.y = path.z.head(nv);
  // F_k(y) ⪰ t·I holds at the final iterate, so the exact margin at y is the
  // tightest available lower bound on t*.
  r.margin = std::min(feasibility_margin(p, r.y), t_cap);
  r.capped = r.margin >= t_cap * (1.0 - 1e-6);
  r.converged = path.converged && !path.broken;
  r.iterations = path.iterations;
  return r;
}

double phase1_margin(const SdpProblem& p, const SdpSettings& s) {
  return find_interior_point(p, s).margin;
}

SdpReport solve(const SdpProblem& p, const SdpSettings& s) {
  p.validate();
  const double scale = p.scale();
  const double tol = s.eps_feas * scale;
  SdpReport rep;

  Vector start;
  if (s.initial_y && s.initial_y->size() == p.num_vars &&
      feasibility_margin(p, *s.initial_y) > 0.0) {
    start = *s.initial_y;
    rep.phase1_margin = feasibility_margin(p, start);
  } else {
    const auto ph = find_interior_point(p, s);
    rep.phase1_margin = ph.margin;
    rep.iterations += ph.iterations;
    if (!ph.converged) {
      rep.status = SdpStatus::NumericalFailure;
      rep.y = ph.y;
      rep.message = "phase-I iteration did not converge";
      return rep;
    }
    if (ph.margin < -tol) {
      rep.status = SdpStatus::Infeasible;
      rep.y = ph.y;
      rep.feasibility_margin = ph.margin;
      rep.message = "phase-I margin is negative";
      return rep;
    }
    if (ph.margin <= tol) {
      rep.status = SdpStatus::NumericalFailure;
      rep.y = ph.y;
      rep.feasibility_margin = ph.margin;
      rep.message = "phase-I margin within tolerance of zero (marginal problem)";
      return rep;
    }
    start = ph.y;
  }

  DenseLmi lmi = to_dense(p);
  const double radius = s.box_factor * scale;
  add_box(lmi, p.num_vars, radius);

  const double mu0 = scale * (1.0 + p.objective.norm());
  const auto path = follow_path(lmi, p.objective, start, s, mu0);
  rep.iterations += path.iterations;
  rep.y = path.z;
  rep.objective_value = p.objective.dot(rep.y);
  rep.feasibility_margin = feasibility_margin(p, rep.y);
  rep.duality_gap = static_cast<double>(lmi.total_dim()) * path.mu;

  if (path.broken || !path.converged) {
    rep.status = SdpStatus::NumericalFailure;
    rep.message = path.broken ? "barrier iterate left the interior"
                              : "outer iteration cap reached before the gap tolerance";
    return rep;
  }
  if (p.num_vars > 0 && rep.y.cwiseAbs().maxCoeff() > 0.5 * radius) {
    rep.status = SdpStatus::NumericalFailure;
    rep.message = "objective appears unbounded (iterate reached the variable box)";
    return rep;
  }
  if (rep.feasibility_margin > 0.0) {
    rep.status = SdpStatus::StrictlyFeasible;
  } else if (rep.feasibility_margin >= -tol) {
    rep.status = SdpStatus::Feasible;
  } else {
    rep.status = SdpStatus::NumericalFailure;
    rep.message = "final iterate violates the constraints";
  }
  return rep;
}

SdpProblem substitute(const SdpProblem& p, const Vector& offset, const Matrix& basis,
                      std::vector<std::string> new_names) {
  p.validate();
  if (offset.size() != p.num_vars || basis.rows() != p.num_vars) {
    throw InvalidProblem("substitution has wrong dimensions");
  }
  SdpProblem q;
  q.num_vars = static_cast<int>(basis.cols());
  q.objective = basis.transpose() * p.objective;
  q.var_names = std::move(new_names);
  for (const auto& b : p.blocks) {
    LmiBlock nb{b.evaluate(offset), {}};
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      Matrix f = Matrix::Zero(b.dim(), b.dim());
      for (Eigen::Index i = 0; i < basis.rows(); ++i) {
        if (basis(i, j) != 0.0) f += basis(i, j) * b.coefficients[static_cast<std::size_t>(i)].matrix();
      }
      nb.coefficients.emplace_back(f);
    }
    q.blocks.push_back(std::move(nb));
  }
  return q;
}

}  // namespace ctinform::sdp
