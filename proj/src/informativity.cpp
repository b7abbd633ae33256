#include "ctinform/informativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "ctinform/errors.hpp"

namespace ctinform::informativity {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Informative: return "INFORMATIVE";
    case Verdict::NotInformative: return "NOT-INFORMATIVE";
    case Verdict::Indeterminate: return "INDETERMINATE";
    case Verdict::Insufficient: return "INSUFFICIENT";
    case Verdict::NoExcitation: return "NO-EXCITATION";
  }
  return "UNKNOWN";
}

std::string to_string(Provenance p) { return p == Provenance::Continuous ? "continuous" : "sampled"; }

std::string to_string(Condition c) {
  switch (c) {
    case Condition::ContinuousData: return "continuous-data";
    case Condition::SampledData: return "sampled-data";
    case Condition::SampledSufficient: return "sampled-sufficient";
  }
  return "unknown";
}

DataQmi::DataQmi(SymMatrix N, Eigen::Index n, Eigen::Index m, Provenance provenance, double delta,
                 double horizon, std::optional<noise::NoiseBudget> budget)
    : n_mat_(std::move(N)),
      n_(n),
      m_(m),
      provenance_(provenance),
      delta_(delta),
      horizon_(horizon),
      budget_(std::move(budget)) {
  if (n_ < 1 || m_ < 1 || n_mat_.dim() != 2 * n_ + m_) {
    throw DimensionError("QMI matrix must have dimension 2n + m");
  }
  if (budget_ && budget_->n() != n_) throw DimensionError("noise budget dimension differs from n");
  scale_ = std::max(1.0, linalg::spectral_norm(n_mat_));
  if (linalg::max_eig(SymMatrix(N22())) > 1e-8 * scale_) {
    throw InvalidMatrix("lower-right block of the QMI matrix must be negative semidefinite");
  }
}

bool DataQmi::nonempty(double tol) const {
  const SymMatrix pinv = linalg::pseudo_inverse(SymMatrix(N22()), 1e-10);
  const SymMatrix schur(N11() - N12() * pinv.matrix() * N12().transpose());
  return linalg::min_eig(schur) >= -tol * scale_;
}

DataQmi assemble_qmi(const signals::Gramian& g, const noise::NoiseBudget& b) {
  const bool cont = g.kind == signals::GramianKind::Continuous;
  if (cont != (b.kind() == noise::BudgetKind::ContinuousIntegral)) {
    throw ProvenanceError("noise budget kind does not match the Gramian kind");
  }
  if (!cont && std::abs(g.delta - b.delta()) > 1e-12 * g.delta) {
    throw ProvenanceError("noise budget sampling interval does not match the data");
  }
  if (b.n() != g.n) throw DimensionError("noise budget dimension differs from the state dimension");
  if (std::abs(g.horizon - b.horizon()) > 1e-12 * g.horizon) {
    throw ProvenanceError("noise budget horizon does not match the data");
  }
  Matrix N = -g.G.matrix();
  N.topLeftCorner(g.n, g.n) += b.Q().matrix();
  return DataQmi(SymMatrix(N), g.n, g.m, cont ? Provenance::Continuous : Provenance::Sampled,
                 cont ? 0.0 : g.delta, g.horizon, b);
}

namespace {

Matrix stacked_identity(const Matrix& A, const Matrix& B) {
  Matrix x(A.rows(), A.rows() + A.cols() + B.cols());
  x << Matrix::Identity(A.rows(), A.rows()), A, B;
  return x;
}

void check_system_dims(const Matrix& A, const Matrix& B, const DataQmi& q) {
  if (A.rows() != q.n() || A.cols() != q.n() || B.rows() != q.n() || B.cols() != q.m()) {
    throw DimensionError("system dimensions do not match the data");
  }
}

// −N − [[βI, P, Lᵀ], [P, 0, 0], [L, 0, 0]].
Matrix certified_matrix(const DataQmi& q, const Matrix& P, const Matrix& L, double beta) {
  const Eigen::Index n = q.n(), m = q.m();
  Matrix M = -q.N().matrix();
  M.topLeftCorner(n, n) -= beta * Matrix::Identity(n, n);
  M.block(0, n, n, n) -= P;
  M.block(n, 0, n, n) -= P;
  M.block(0, 2 * n, n, m) -= L.transpose();
  M.block(2 * n, 0, m, n) -= L;
  return M;
}

// Decision variables: upper triangle of P, entries of L (row-major), β.
struct Layout {
  Eigen::Index n, m;
  int num_p() const { return static_cast<int>(n * (n + 1) / 2); }
  int num_l() const { return static_cast<int>(m * n); }
  int beta() const { return num_p() + num_l(); }
  int total() const { return beta() + 1; }

  int p_index(Eigen::Index i, Eigen::Index j) const {
    if (i > j) std::swap(i, j);
    return static_cast<int>(i * n - i * (i - 1) / 2 + (j - i));
  }
  int l_index(Eigen::Index i, Eigen::Index j) const { return num_p() + static_cast<int>(i * n + j); }

  Matrix unit_p(int k) const {
    Matrix e = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j)
        if (p_index(i, j) == k) e(i, j) = e(j, i) = 1.0;
    return e;
  }
  Matrix unit_l(int k) const {
    Matrix e = Matrix::Zero(m, n);
    const int r = k - num_p();
    e(r / n, r % n) = 1.0;
    return e;
  }

  Matrix P(const Vector& y) const {
    Matrix p(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) p(i, j) = y(p_index(i, j));
    return p;
  }
  Matrix L(const Vector& y) const {
    Matrix l(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) l(i, j) = y(l_index(i, j));
    return l;
  }
};

// Orthonormal bases of the range and kernel of the (PSD) state-input Gramian.
struct GramianSplit {
  Matrix range, kernel;
};

GramianSplit split_gramian(const DataQmi& q) {
  const auto eig = linalg::sym_eig(q.state_input_gramian());
  const double tol = 1e-10 * q.scale();
  GramianSplit s;
  std::vector<Eigen::Index> r, k;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    (eig.eigenvalues(i) > tol ? r : k).push_back(i);
  s.range.resize(eig.eigenvectors.rows(), static_cast<Eigen::Index>(r.size()));
  s.kernel.resize(eig.eigenvectors.rows(), static_cast<Eigen::Index>(k.size()));
  for (std::size_t i = 0; i < r.size(); ++i) s.range.col(static_cast<Eigen::Index>(i)) = eig.eigenvectors.col(r[i]);
  for (std::size_t i = 0; i < k.size(); ++i) s.kernel.col(static_cast<Eigen::Index>(i)) = eig.eigenvectors.col(k[i]);
  return s;
}

struct StabilizationLmi {
  Layout layout;
  sdp::SdpProblem problem;  // in reduced variables z
  Matrix basis;             // y = basis·z
  bool reduced = false;
  double p_floor = 0.0;
  double b_floor = 0.0;
  double beta_floor = 0.0;
};

/**
 * Blocks: main LMI, P ⪰ p_floor·I, β ≥ beta_floor and optionally
 * trace(P) ≤ trace_bound. When the state-input Gramian has a kernel V0, the
 * main block can only be PSD if [P Lᵀ]V0 = 0; those equalities are
 * eliminated and the block is compressed onto the range of the Gramian.
 */
StabilizationLmi build_stabilization_lmi(const DataQmi& q, double beta_floor, double p_floor,
                                         std::optional<double> trace_bound) {
  StabilizationLmi out;
  out.layout = Layout{q.n(), q.m()};
  const Layout& lay = out.layout;
  const Eigen::Index n = q.n(), m = q.m();
  const int nv = lay.total();

  const GramianSplit split = split_gramian(q);
  out.reduced = split.kernel.cols() > 0;
  Matrix T = Matrix::Zero(2 * n + m, n + split.range.cols());
  T.topLeftCorner(n, n) = Matrix::Identity(n, n);
  T.bottomRightCorner(n + m, split.range.cols()) = split.range;

  sdp::SdpProblem p;
  p.num_vars = nv;
  p.objective = Vector::Zero(nv);
  p.objective(lay.beta()) = 1.0;

  sdp::LmiBlock main{SymMatrix(-q.N().matrix()).congruence(T), {}};
  for (int k = 0; k < nv; ++k) {
    Matrix P = Matrix::Zero(n, n), L = Matrix::Zero(m, n);
    double beta = 0.0;
    if (k < lay.num_p()) {
      P = lay.unit_p(k);
    } else if (k < lay.beta()) {
      L = lay.unit_l(k);
    } else {
      beta = 1.0;
    }
    const Matrix coeff = certified_matrix(q, P, L, beta) + q.N().matrix();
    main.coefficients.push_back(SymMatrix(coeff).congruence(T));
  }
  p.blocks.push_back(std::move(main));

  sdp::LmiBlock pblock{SymMatrix::identity(n) * (-p_floor), {}};
  for (int k = 0; k < nv; ++k) {
    pblock.coefficients.push_back(k < lay.num_p() ? SymMatrix(lay.unit_p(k)) : SymMatrix::zero(n));
  }
  p.blocks.push_back(std::move(pblock));

  sdp::LmiBlock bblock{SymMatrix::scalar(-beta_floor), {}};
  for (int k = 0; k < nv; ++k) bblock.coefficients.push_back(SymMatrix::scalar(k == lay.beta() ? 1.0 : 0.0));
  p.blocks.push_back(std::move(bblock));

  if (trace_bound) {
    sdp::LmiBlock tblock{SymMatrix::scalar(*trace_bound), {}};
    for (int k = 0; k < nv; ++k) {
      double c = 0.0;
      if (k < lay.num_p()) c = -lay.unit_p(k).trace();
      tblock.coefficients.push_back(SymMatrix::scalar(c));
    }
    p.blocks.push_back(std::move(tblock));
  }

  for (int k = 0; k < nv; ++k) p.var_names.push_back(k < lay.num_p() ? "P" : k < lay.beta() ? "L" : "beta");

  out.basis = Matrix::Identity(nv, nv);
  if (out.reduced) {
    // Rows: entries of [P Lᵀ]·v for each kernel vector v.
    const Eigen::Index kdim = split.kernel.cols();
    Matrix eq = Matrix::Zero(n * kdim, nv);
    for (int k = 0; k < lay.beta(); ++k) {
      Matrix PL = Matrix::Zero(n, n + m);
      if (k < lay.num_p()) {
        PL.leftCols(n) = lay.unit_p(k);
      } else {
        PL.rightCols(m) = lay.unit_l(k).transpose();
      }
      const Matrix r = PL * split.kernel;
      eq.col(k) = Eigen::Map<const Vector>(r.data(), r.size());
    }
    Eigen::JacobiSVD<Matrix> svd(eq, Eigen::ComputeFullV);
    const double tol = 1e-12 * std::max(1.0, svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > tol) ++rank;
    out.basis = svd.matrixV().rightCols(nv - rank);
    p = sdp::substitute(p, Vector::Zero(nv), out.basis);
  }
  out.problem = std::move(p);
  out.p_floor = p_floor;
  out.b_floor = beta_floor;
  out.beta_floor = beta_floor;
  return out;
}

StabilizationCertificate make_certificate(const DataQmi& q, const StabilizationLmi& lmi, const Vector& z,
                                          Condition condition, double b_floor, const std::string& summary) {
  const Vector y = lmi.basis * z;
  StabilizationCertificate c;
  c.P = SymMatrix(lmi.layout.P(y));
  c.L = lmi.layout.L(y);
  c.beta = y(lmi.layout.beta());
  const Matrix chol = linalg::cholesky(c.P);
  const Matrix X = chol.triangularView<Eigen::Lower>().solve(c.L.transpose());
  c.K = chol.transpose().triangularView<Eigen::Upper>().solve(X).transpose();
  c.condition = condition;
  c.p_floor = lmi.p_floor;
  c.b_floor = b_floor;
  c.beta_floor = lmi.beta_floor;
  const double lo = linalg::min_eig(c.P), hi = linalg::max_eig(c.P);
  c.cond_P = hi / lo;
  c.residual = check_certificate(q, c.P, c.K, c.beta).residual;
  c.reduced = lmi.reduced;
  c.solver_summary = summary;
  return c;
}

std::string describe_phase1(const sdp::Phase1Result& r) {
  std::ostringstream os;
  os.precision(9);
  os << "phase-I margin " << r.margin << " after " << r.iterations << " iterations"
     << (r.capped ? " (capped)" : "") << (r.converged ? "" : " (not converged)");
  return os.str();
}

// Shared feasibility path of synthesize and sampled_sufficient.
SynthesisResult run_feasibility(const DataQmi& q, double beta_floor, Condition condition,
                                Verdict negative, const SynthesisOptions& opts) {
  const double floor = opts.floor_factor * q.scale();
  const StabilizationLmi lmi = build_stabilization_lmi(q, beta_floor, floor, std::nullopt);
  SynthesisResult res;
  if (lmi.basis.cols() == 0) {
    res.verdict = negative;
    res.phase1_margin = -floor;
    res.message = "no P satisfies the equality constraints of unexcited directions";
    return res;
  }
  const auto ph = sdp::find_interior_point(lmi.problem, opts.sdp);
  const double tol = opts.sdp.eps_feas * lmi.problem.scale();
  res.phase1_margin = ph.margin;
  res.message = describe_phase1(ph);
  if (!ph.converged) {
    res.verdict = Verdict::Indeterminate;
    return res;
  }
  if (ph.margin > tol) {
    res.verdict = Verdict::Informative;
    res.certificate = make_certificate(q, lmi, ph.y, condition, floor, res.message);
  } else if (ph.margin < -tol) {
    res.verdict = negative;
  } else {
    res.verdict = Verdict::Indeterminate;
    res.message += "; margin within tolerance of zero";
  }
  return res;
}

Condition condition_for(const DataQmi& q) {
  return q.provenance() == Provenance::Continuous ? Condition::ContinuousData : Condition::SampledData;
}

}  // namespace

double membership_margin(const Matrix& A, const Matrix& B, const DataQmi& q) {
  check_system_dims(A, B, q);
  const Matrix X = stacked_identity(A, B);
  return linalg::min_eig(SymMatrix(X * q.N().matrix() * X.transpose()));
}

bool membership(const Matrix& A, const Matrix& B, const DataQmi& q, double tol) {
  return membership_margin(A, B, q) >= -tol * q.scale();
}

CertificateCheck check_certificate(const DataQmi& q, const SymMatrix& P, const Matrix& K, double beta,
                                   double beta_floor, double tol) {
  if (P.dim() != q.n() || K.rows() != q.m() || K.cols() != q.n()) {
    throw DimensionError("certificate dimensions do not match the data");
  }
  CertificateCheck c;
  const Matrix L = K * P.matrix();
  c.residual = linalg::min_eig(SymMatrix(certified_matrix(q, P.matrix(), L, beta)));
  c.p_min_eig = linalg::min_eig(P);
  c.beta_excess = beta - beta_floor;
  c.ok = c.residual >= -tol * q.scale() && c.p_min_eig > 0.0 && beta > 0.0 && beta > beta_floor;
  return c;
}

SynthesisResult synthesize(const DataQmi& q, const SynthesisOptions& opts) {
  const double floor = opts.floor_factor * q.scale();
  return run_feasibility(q, floor, condition_for(q), Verdict::NotInformative, opts);
}

double equivalent_lipschitz(const noise::RegularityCertificate& reg, double horizon) {
  if (reg.kind == noise::RegularityKind::SquareLipschitz) return reg.value;
  return 2.0 * reg.value / horizon;
}

SynthesisResult sampled_sufficient(const DataQmi& q, const noise::RegularityCertificate& reg,
                                   const SynthesisOptions& opts) {
  if (q.provenance() != Provenance::Sampled) {
    throw ProvenanceError("sufficiency test needs sampled data");
  }
  if (!reg.is_upper_bound()) {
    throw ProvenanceError("a grid estimate of the noise regularity is only a lower bound");
  }
  const double L = equivalent_lipschitz(reg, q.horizon());
  const double floor = opts.floor_factor * q.scale();
  const double beta_floor = 0.5 * q.delta() * q.horizon() * L + floor;
  auto res = run_feasibility(q, beta_floor, Condition::SampledSufficient, Verdict::Insufficient, opts);
  if (res.certificate) res.certificate->b_floor = floor;
  return res;
}

MarginReport maximize_beta(const DataQmi& q, const std::optional<noise::RegularityCertificate>& reg,
                           const SynthesisOptions& opts) {
  MarginReport rep;
  const auto pre = synthesize(q, opts);
  if (!pre.informative()) {
    rep.verdict = pre.verdict;
    rep.message = pre.message;
    return rep;
  }
  const double floor = opts.floor_factor * q.scale();
  rep.trace_bound = static_cast<double>(q.n()) * q.scale();
  const StabilizationLmi lmi = build_stabilization_lmi(q, floor, floor, rep.trace_bound);
  const auto sol = sdp::solve(lmi.problem, opts.sdp);
  rep.duality_gap = sol.duality_gap;
  rep.message = sol.message;
  if (!sol.feasible()) {
    rep.verdict = Verdict::Indeterminate;
    rep.message = "margin maximization failed: " + sol.message;
    return rep;
  }
  const auto cert = make_certificate(q, lmi, sol.y, condition_for(q), floor, sol.message);
  rep.verdict = Verdict::Informative;
  rep.beta_hat = cert.beta;
  rep.P = cert.P;
  rep.K = cert.K;
  rep.trace_active = rep.trace_bound - cert.P.matrix().trace() <= 1e-6 * rep.trace_bound;
  if (reg) {
    const double L = equivalent_lipschitz(*reg, q.horizon());
    rep.delta_max = stepsize_bound(rep.beta_hat, q.horizon(), L);
    if (q.provenance() == Provenance::Sampled) {
      rep.ell_max = coarsening_bound(rep.beta_hat, q.delta(), q.horizon(), L);
    }
  }
  return rep;
}

double stepsize_bound(double beta_hat, double horizon, double L) {
  if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
  if (!(L >= 0.0)) throw InvalidArgument("square Lipschitz constant must be nonnegative");
  if (L == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, beta_hat) / (horizon * L);
}

long coarsening_bound(double beta_hat, double delta, double horizon, double L) {
  if (!noise::divides(delta, horizon)) throw StepsizeError("stepsize must divide the horizon");
  const auto samples = std::lround(horizon / delta);
  const double limit = L > 0.0 ? 2.0 * beta_hat / (delta * horizon * L)
                               : std::numeric_limits<double>::infinity();
  for (long ell = samples - 1; ell >= 1; --ell) {
    if (static_cast<double>(ell) < limit && samples % (ell + 1) == 0) return ell;
  }
  return 0;
}

LambdaResult certify_lambda(const DataQmi& q, const SynthesisOptions& opts) {
  if (q.provenance() != Provenance::Continuous) {
    throw ProvenanceError("lambda certification uses the continuous-time data");
  }
  LambdaResult res;
  res.excitation_min_eig = linalg::min_eig(q.state_input_gramian());
  if (!(res.excitation_min_eig > 1e-9 * q.scale())) {
    res.verdict = Verdict::NoExcitation;
    res.message = "state-input Gramian is not positive definite";
    return res;
  }
  const Eigen::Index n = q.n(), d = 2 * q.n() + q.m();
  const double floor = opts.floor_factor * q.scale();
  // Variables (λ, α, β).
  sdp::SdpProblem p;
  p.num_vars = 3;
  p.var_names = {"lambda", "alpha", "beta"};
  p.objective = Vector::Zero(3);
  p.objective(0) = -1.0;
  Matrix top = Matrix::Zero(d, d);
  top.topLeftCorner(n, n) = Matrix::Identity(n, n);
  p.blocks.push_back({SymMatrix(-Matrix::Identity(d, d)), {SymMatrix(top), -q.N(), -SymMatrix(top)}});
  auto scalar_block = [&](double c0, double cl, double ca, double cb) {
    return sdp::LmiBlock{SymMatrix::scalar(c0),
                         {SymMatrix::scalar(cl), SymMatrix::scalar(ca), SymMatrix::scalar(cb)}};
  };
  p.blocks.push_back(scalar_block(-1.0, 1.0, 0.0, 0.0));
  p.blocks.push_back(scalar_block(0.0, 0.0, 1.0, 0.0));
  p.blocks.push_back(scalar_block(-floor, 0.0, 0.0, 1.0));
  const auto sol = sdp::solve(p, opts.sdp);
  res.message = sol.message;
  if (!sol.feasible()) {
    res.verdict = Verdict::Indeterminate;
    return res;
  }
  LambdaCertificate c;
  c.lambda = sol.y(0);
  c.alpha = sol.y(1);
  c.beta = sol.y(2);
  c.excitation_ok = true;
  c.residual = sdp::feasibility_margin(p, sol.y);
  res.certificate = c;
  res.verdict = Verdict::Informative;
  return res;
}

Vector linspace(double lo, double hi, Eigen::Index count) {
  if (count < 1) throw InvalidArgument("grid needs at least one point");
  if (count == 1) return Vector::Constant(1, lo);
  return Vector::LinSpaced(count, lo, hi);
}

RegionGrid region_scan(const DataQmi& q, const Vector& a, const Vector& b, int workers, double tol) {
  if (q.n() != 1 || q.m() != 1) throw DimensionError("region scans need a scalar system (n = m = 1)");
  if (a.size() < 1 || b.size() < 1) throw InvalidArgument("region grid must be nonempty");
  RegionGrid g{a, b, std::vector<std::uint8_t>(static_cast<std::size_t>(a.size() * b.size()), 0)};
  const Matrix& N = q.N().matrix();
  const double threshold = -tol * q.scale();
  auto rows = [&](Eigen::Index j0, Eigen::Index j1) {
    for (Eigen::Index j = j0; j < j1; ++j)
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        const Eigen::Vector3d v(1.0, a(i), b(j));
        const double form = v.dot(N * v);
        g.inside[static_cast<std::size_t>(j * a.size() + i)] = form >= threshold ? 1 : 0;
      }
  };
  const int w = std::max(1, std::min<int>(workers, static_cast<int>(b.size())));
  if (w == 1) {
    rows(0, b.size());
    return g;
  }
  std::vector<std::thread> pool;
  const Eigen::Index chunk = (b.size() + w - 1) / w;
  for (int t = 0; t < w; ++t) {
    const Eigen::Index j0 = t * chunk, j1 = std::min<Eigen::Index>(b.size(), j0 + chunk);
    if (j0 < j1) pool.emplace_back(rows, j0, j1);
  }
  for (auto& th : pool) th.join();
  return g;
}

bool lyapunov_check(const Matrix& A, const Matrix& B, const Matrix& K, const SymMatrix& P) {
  if (A.rows() != A.cols() || B.rows() != A.rows() || K.rows() != B.cols() || K.cols() != A.rows() ||
      P.dim() != A.rows()) {
    throw DimensionError("closed-loop dimensions are inconsistent");
  }
  if (!(linalg::min_eig(P) > 0.0)) throw InvalidArgument("Lyapunov matrix must be positive definite");
  const Matrix Acl = A + B * K;
  const Matrix lhs = Acl * P.matrix() + P.matrix() * Acl.transpose();
  return linalg::max_eig(SymMatrix(lhs)) < 0.0;
}

std::vector<Matrix> sample_members(const DataQmi& q, int count, std::uint64_t seed, double boundary_fraction) {
  const SymMatrix H = q.state_input_gramian();
  const auto heig = linalg::sym_eig(H);
  if (!(heig.eigenvalues(0) > 1e-12 * q.scale())) {
    throw InvalidArgument("member sampling needs a positive definite state-input Gramian");
  }
  const Matrix Hinv = heig.eigenvectors * heig.eigenvalues.cwiseInverse().asDiagonal() *
                      heig.eigenvectors.transpose();
  const Matrix Hinv_sqrt = heig.eigenvectors * heig.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                           heig.eigenvectors.transpose();
  const Matrix center = q.N12() * Hinv;
  const SymMatrix S(q.N11() + q.N12() * Hinv * q.N12().transpose());
  const auto seig = linalg::sym_eig(S);
  if (seig.eigenvalues(0) < -kMembershipTol * q.scale()) {
    throw InvalidArgument("the set of consistent systems is empty");
  }
  const Matrix S_sqrt = seig.eigenvectors * seig.eigenvalues.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                        seig.eigenvectors.transpose();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const Eigen::Index rows = q.n(), cols = q.n() + q.m();
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(std::max(0, count)));
  for (int k = 0; k < count; ++k) {
    Matrix U = Matrix::NullaryExpr(rows, cols, [&] { return nd(rng); });
    const double norm = linalg::spectral_norm(U);
    if (norm == 0.0) continue;
    const bool boundary = ud(rng) < boundary_fraction;
    const double radius = boundary ? 1.0 : std::pow(ud(rng), 1.0 / static_cast<double>(rows * cols));
    U *= radius / norm;
    out.push_back(center + S_sqrt * U * Hinv_sqrt);
  }
  return out;
}

}  // namespace ctinform::informativity
