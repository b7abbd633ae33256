// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 0 iff all pass.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ctinform/informativity.hpp"
#include "ctinform/noise.hpp"
#include "ctinform/sdp.hpp"
#include "ctinform/signals.hpp"
#include "support/analytic_signals.hpp"
#include "support/sdp_cases.hpp"

using namespace ctinform;
using namespace ctinform::informativity;
using linalg::Matrix;
using linalg::SymMatrix;
using linalg::Vector;
using signals::GriddedSignal;
using clock_type = std::chrono::steady_clock;

namespace {

constexpr double kTol = 2e-3;
constexpr double kL = 16.0;
const std::vector<double> kDeltas = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

Matrix reference_cont() {
  Matrix m(3, 3);
  m << -0.154, -0.500, -0.995, -0.500, -0.422, -0.595, -0.995, -0.595, -1.0;
  return m;
}

std::map<double, Matrix> reference_sampled() {
  auto mk = [](double a, double b, double c, double d, double e) {
    Matrix m(3, 3);
    m << a, b, c, b, d, e, c, e, -1.0;
    return m;
  };
  return {
      {0.5, mk(0.446, -0.6263, -0.7229, -0.7086, -0.8229)},
      {0.25, mk(0.1712, -0.5877, -0.8642, -0.5567, -0.7142)},
      {0.125, mk(0.0152, -0.5498, -0.9309, -0.4873, -0.6559)},
      {0.0625, mk(-0.0678, -0.5264, -0.9633, -0.4543, -0.6258)},
      {0.03125, mk(-0.1106, -0.5135, -0.9792, -0.4382, -0.6105)},
      {0.015625, mk(-0.1323, -0.5069, -0.9872, -0.4303, -0.6028)},
  };
}

DataQmi cont_qmi(const signals::TrajectoryData& traj, double q = 1.0) {
  return assemble_qmi(signals::gramian_cont(traj), noise::NoiseBudget::continuous(SymMatrix::scalar(q), 1.0));
}

DataQmi sampled_qmi(const signals::TrajectoryData& traj, double delta, double q = 1.0) {
  return assemble_qmi(signals::gramian_disc(signals::sample(traj, delta)),
                      noise::NoiseBudget::discrete(SymMatrix::scalar(q), 1.0, delta));
}

struct Bench {
  signals::benchmark::Data data;
  DataQmi cont;
  std::map<double, DataQmi> sampled;
};

const Bench& bench() {
  static const Bench b = [] {
    auto data = signals::benchmark::make(1.0 / 16384);
    DataQmi cont = cont_qmi(data.traj);
    std::map<double, DataQmi> sampled;
    for (double d : kDeltas) sampled.emplace(d, sampled_qmi(data.traj, d));
    return Bench{std::move(data), std::move(cont), std::move(sampled)};
  }();
  return b;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome criterion1() {
  const auto t0 = clock_type::now();
  const auto data = signals::benchmark::make(1e-4);
  const DataQmi q = cont_qmi(data.traj);
  const double elapsed = seconds_since(t0);
  const double dev = (q.N().matrix() - reference_cont()).cwiseAbs().maxCoeff();
  std::ostringstream s;
  s << "max deviation " << dev << ", " << elapsed << " s";
  return {dev <= kTol && elapsed < 1.0, s.str()};
}

Outcome criterion2() {
  double worst = 0.0;
  for (const auto& [d, ref] : reference_sampled())
    worst = std::max(worst, (bench().sampled.at(d).N().matrix() - ref).cwiseAbs().maxCoeff());
  std::ostringstream s;
  s << "max deviation over six stepsizes " << worst;
  return {worst <= kTol, s.str()};
}

Outcome criterion3() {
  const auto r = synthesize(bench().cont);
  const auto c = check_certificate(bench().cont, SymMatrix::scalar(0.5), scalar(2.0), 0.1);
  std::ostringstream s;
  s << to_string(r.verdict) << ", triple residual " << c.residual << (c.ok ? " ok" : " rejected");
  return {r.informative() && c.ok, s.str()};
}

Outcome criterion4() {
  bool ok = true;
  std::ostringstream s;
  for (double d : kDeltas) {
    const auto v = synthesize(bench().sampled.at(d)).verdict;
    ok = ok && v == (d > 0.1 ? Verdict::NotInformative : Verdict::Informative);
    s << d << ":" << to_string(v) << " ";
  }
  return {ok, s.str()};
}

Outcome criterion5() {
  const auto r = sampled_sufficient(bench().sampled.at(0.015625), noise::RegularityCertificate::assumed_lipschitz(kL));
  if (!r.certificate) return {false, to_string(r.verdict) + " without certificate"};
  const double closed = signals::benchmark::kA + signals::benchmark::kB * r.certificate->K(0, 0);
  std::ostringstream s;
  s << to_string(r.verdict) << ", beta " << r.certificate->beta << ", closed-loop eigenvalue " << closed;
  return {r.informative() && r.certificate->beta > 0.125 && closed < 0.0, s.str()};
}

Outcome criterion6() {
  const auto m = maximize_beta(bench().cont);
  const double bound = m.beta_hat / kL;
  std::ostringstream s;
  s << "beta_hat " << m.beta_hat << ", beta_hat/16 = " << bound;
  return {m.verdict == Verdict::Informative && bound >= 0.0090 && bound <= 0.0102, s.str()};
}

Outcome criterion7() {
  bool ok = membership(scalar(4.35), scalar(-3.0), bench().cont);
  std::ostringstream s;
  s << "(4.35,-3) in cont " << ok << ";";
  for (double d : kDeltas) {
    const auto& q = bench().sampled.at(d);
    const bool origin = membership(scalar(0.0), scalar(0.0), q);
    const bool far = membership(scalar(4.35), scalar(-3.0), q);
    ok = ok && origin == (d > 0.1) && !far;
    s << " " << d << ":" << origin << far;
  }
  return {ok, s.str()};
}

Outcome criterion8() {
  const double h = 2.5e-7, T = 3.0;
  const std::vector<std::function<double(double)>> steps = {
      [](double t) { return t > 1.0 && t < 2.0 ? 1.0 : 0.0; },
      [](double t) { return t > 1.0 && t <= 2.0 ? 1.0 : 0.0; },
      [](double t) { return t >= 1.0 && t <= 2.0 ? 1.0 : 0.0; }};
  std::vector<double> integrals;
  std::vector<double> discrete;
  for (const auto& f : steps) {
    integrals.push_back(noise::integral_noise_matrix(GriddedSignal::scalar_function(h, T, f))(0, 0));
    Matrix W(1, 3);
    for (int k = 0; k < 3; ++k) W(0, k) = f(k);
    discrete.push_back(noise::discrete_noise_matrix(W, 1.0)(0, 0));
  }
  double spread = 0.0;
  for (double a : integrals)
    for (double b : integrals) spread = std::max(spread, std::abs(a - b));
  std::ostringstream s;
  s << "integral spread " << spread << ", discrete " << discrete[0] << "," << discrete[1] << "," << discrete[2];
  return {spread <= 1e-6 && discrete == std::vector<double>{0.0, 1.0, 2.0}, s.str()};
}

GriddedSignal residual(const signals::TrajectoryData& traj, const Matrix& A, const Matrix& B) {
  return GriddedSignal(traj.horizon(), traj.xdot().values() - A * traj.x().values() - B * traj.u().values());
}

Outcome criterion9() {
  std::ostringstream s;
  bool ok = true;

  // Deviation bounds on analytic signals.
  const auto suite = testsupport::analytic_suite();
  int bound_failures = 0;
  for (const auto& sig : suite) {
    for (int i = 0; i <= 7; ++i) {
      const double delta = sig.horizon / std::pow(2.0, i);
      const double dev = linalg::spectral_norm(
          SymMatrix(sig.integral) - noise::discrete_noise_matrix(testsupport::samples(sig, delta), delta));
      if (std::isfinite(sig.L))
        bound_failures +=
            dev > noise::deviation_bound(noise::RegularityCertificate::assumed_lipschitz(sig.L), delta, sig.horizon) +
                      1e-12;
      bound_failures +=
          dev > noise::deviation_bound(noise::RegularityCertificate::assumed_variation(sig.V), delta, sig.horizon) +
                    1e-12;
    }
  }
  ok = ok && suite.size() >= 10 && bound_failures == 0;
  s << suite.size() << " signals/" << bound_failures << " bound failures";

  // Cellwise inclusion of the continuous set in the inflated sampled sets.
  const Vector a = linspace(-6, 6, 241), b = linspace(-6, 6, 241);
  const auto cont = region_scan(bench().cont, a, b, 4);
  int violations = 0;
  for (double d : kDeltas) {
    const double margin = noise::deviation_bound(noise::RegularityCertificate::assumed_lipschitz(kL), d, 1.0);
    const auto inflated = region_scan(sampled_qmi(bench().data.traj, d, 1.0 + margin), a, b, 4);
    for (std::size_t k = 0; k < cont.inside.size(); ++k) violations += cont.inside[k] && !inflated.inside[k];
  }
  ok = ok && violations == 0;
  s << "; " << violations << " inclusion violations";

  // Certificate soundness on sampled members of the consistent sets.
  auto lyapunov_failures = [](const DataQmi& q, const SynthesisResult& r, std::uint64_t seed, int& count) {
    int fails = 0;
    if (!r.certificate) return 1;
    for (const auto& X : sample_members(q, 200, seed)) {
      ++count;
      fails += !membership(X.leftCols(1), X.rightCols(1), q) ||
               !lyapunov_check(X.leftCols(1), X.rightCols(1), r.certificate->K, r.certificate->P);
    }
    return fails;
  };
  int t1 = 0, n1 = 0, t2 = 0, n2 = 0, t3 = 0, n3 = 0;
  t1 = lyapunov_failures(bench().cont, synthesize(bench().cont), 11, n1);
  for (double d : {0.0625, 0.03125, 0.015625}) {
    int count = 0;
    t2 += lyapunov_failures(bench().sampled.at(d), synthesize(bench().sampled.at(d)), 12, count);
    n2 = n2 == 0 ? count : std::min(n2, count);
  }
  {
    const auto r = sampled_sufficient(bench().sampled.at(0.015625), noise::RegularityCertificate::assumed_lipschitz(kL));
    if (!r.certificate) {
      t3 = 1;
    } else {
      for (const auto& X : sample_members(bench().cont, 600, 13)) {
        const Matrix A = X.leftCols(1), B = X.rightCols(1);
        if (noise::estimate_square_lipschitz(residual(bench().data.traj, A, B)).value > kL) continue;
        ++n3;
        t3 += !lyapunov_check(A, B, r.certificate->K, r.certificate->P);
      }
    }
  }
  ok = ok && n1 >= 200 && n2 >= 200 && n3 >= 200 && t1 + t2 + t3 == 0;
  s << "; soundness " << t1 << "/" << n1 << ", " << t2 << "/" << n2 << " per stepsize, " << t3 << "/" << n3;

  // Trapezoid quadrature O(h^2) over three halvings.
  {
    const auto x = [](double t) { return Vector::Constant(1, std::sin(t)); };
    const double exact = 0.5 - std::sin(2.0) / 4.0;
    double prev = 0.0;
    bool rates = true;
    for (int level = 0; level < 4; ++level) {
      const double h = 0.1 / std::pow(2.0, level);
      const auto f = GriddedSignal::from_function(1, h, 1.0, x);
      const double err = std::abs(signals::integrate_outer(f, f)(0, 0) - exact);
      if (level > 0) rates = rates && prev / err > 3.6 && prev / err < 4.4;
      prev = err;
    }
    ok = ok && rates;
    s << "; quadrature order " << (rates ? "2" : "off");
  }

  // SDP solver against closed-form optima.
  {
    const auto cases = testsupport::analytic_sdp_cases();
    double worst = 0.0;
    for (const auto& c : cases) {
      const auto r = sdp::solve(c.p);
      worst = std::max(worst, r.feasible() ? std::abs(r.objective_value - c.optimum) : 1.0);
    }
    ok = ok && cases.size() >= 5 && worst <= 1e-6;
    s << "; sdp " << cases.size() << " cases, worst error " << worst;
  }
  return {ok, s.str()};
}

Outcome criterion10() {
  const auto t0 = clock_type::now();
  const std::string cmd = std::string(CTINFORM_CLI) + " reproduce-paper > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const double elapsed = seconds_since(t0);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ostringstream s;
  s << "exit " << code << " in " << elapsed << " s";
  return {code == 0 && elapsed < 60.0, s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 continuous QMI matrix", criterion1},  {"2 sampled QMI matrices", criterion2},
      {"3 continuous-data verdict", criterion3}, {"4 sampled-data sweep", criterion4},
      {"5 sufficient condition", criterion5},    {"6 stepsize bound", criterion6},
      {"7 membership geometry", criterion7},     {"8 endpoint-sensitive noise", criterion8},
      {"9 property suites", criterion9},         {"10 reproduce-paper runtime", criterion10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << name << ": " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
