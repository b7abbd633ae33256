#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ctinform/errors.hpp"
#include "ctinform/informativity.hpp"
#include "ctinform/noise.hpp"
#include "ctinform/report.hpp"
#include "ctinform/signals.hpp"
#include "ctinform/trajectory_csv.hpp"
#include "input_spec.hpp"

namespace ctinform::cli {

namespace {

using informativity::DataQmi;
using informativity::Verdict;
using linalg::SymMatrix;
using report::format_matrix;

std::string num(double v) { return report::format_number(v); }

// Grid for the built-in benchmark: dyadic, so every stepsize 2^-i with i ≤ 14 is a grid multiple.
constexpr double kBenchmarkStep = 1.0 / 16384;

SymMatrix budget_matrix(const std::string& text, Eigen::Index n) {
  if (text.empty()) return SymMatrix::identity(n);
  const Matrix q = parse_matrix_arg(text, "Q");
  if (q.rows() == 1 && q.cols() == 1 && n > 1) return SymMatrix::identity(n) * q(0, 0);
  if (q.rows() != n || q.cols() != n) {
    throw DimensionError("--Q must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + q.cwiseAbs().maxCoeff())) {
    throw InvalidBudget("--Q must be symmetric");
  }
  return SymMatrix(q);
}

std::optional<noise::RegularityCertificate> regularity(const std::string& L, const std::string& V) {
  if (!L.empty() && !V.empty()) throw InvalidArgument("give either --L or --V, not both");
  if (!L.empty()) return noise::RegularityCertificate::assumed_lipschitz(parse_real(L));
  if (!V.empty()) return noise::RegularityCertificate::assumed_variation(parse_real(V));
  return std::nullopt;
}

DataQmi continuous_qmi(const signals::TrajectoryData& traj, const SymMatrix& Q) {
  return informativity::assemble_qmi(signals::gramian_cont(traj),
                                     noise::NoiseBudget::continuous(Q, traj.horizon()));
}

DataQmi sampled_qmi(const signals::TrajectoryData& traj, double delta, const SymMatrix& Q) {
  return informativity::assemble_qmi(signals::gramian_disc(signals::sample(traj, delta)),
                                     noise::NoiseBudget::discrete(Q, traj.horizon(), delta));
}

double require_delta(const std::string& text) {
  if (text.empty()) throw InvalidArgument("this mode needs --delta");
  const double d = parse_real(text);
  if (!(d > 0.0)) throw InvalidArgument("--delta must be positive");
  return d;
}

std::string sanitize(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

void open_output(const std::string& path, std::ofstream& file) {
  file.open(path);
  if (!file) throw FormatError("cannot write " + path);
}

}  // namespace

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  if (o.out.empty()) throw InvalidArgument("--out is required");
  std::optional<signals::TrajectoryData> traj;
  if (o.paper_example) {
    if (!o.A.empty() || !o.B.empty() || !o.x0.empty() || o.u != "zero" || o.w != "zero") {
      throw InvalidArgument("--paper-example fixes the system, inputs and noise");
    }
    const double h = o.h.empty() ? kBenchmarkStep : parse_real(o.h);
    traj = signals::benchmark::make(h).traj;
  } else {
    if (o.A.empty() || o.B.empty() || o.x0.empty()) {
      throw InvalidArgument("simulate needs --A, --B and --x0 (or --paper-example)");
    }
    const signals::LtiSystem sys{parse_matrix_arg(o.A, "A"), parse_matrix_arg(o.B, "B")};
    sys.validate();
    const Vector x0 = parse_vector_arg(o.x0, "x0");
    const double T = parse_real(o.horizon);
    const double h = o.h.empty() ? 1e-3 : parse_real(o.h);
    const auto u = signals::GriddedSignal::from_function(sys.m(), h, T, parse_signal_spec(o.u, sys.m(), T));
    const auto w = signals::GriddedSignal::from_function(sys.n(), h, T, parse_signal_spec(o.w, sys.n(), T));
    traj = signals::simulate_lti(sys, x0, u, w, h);
  }
  signals::write_trajectory_csv(std::filesystem::path(o.out), *traj);

  const auto& w = *traj->noise();
  out << "rows = " << traj->x().size() << '\n';
  out << "horizon = " << num(traj->horizon()) << '\n';
  out << "step = " << num(traj->step()) << '\n';
  out << "noise_integral = " << format_matrix(noise::integral_noise_matrix(w).matrix()) << '\n';
  out << "square_lipschitz_estimate = " << num(noise::estimate_square_lipschitz(w).value)
      << " (grid estimate, lower bound)\n";
  out << "total_square_variation_estimate = " << num(noise::estimate_total_square_variation(w).value)
      << " (grid estimate, lower bound)\n";
  out << "wrote " << o.out << '\n';
  return kExitOk;
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  if (o.traj.empty()) throw InvalidArgument("--traj is required");
  const auto traj = signals::read_trajectory_csv(o.traj);
  const SymMatrix Q = budget_matrix(o.Q, traj.n());
  const auto reg = regularity(o.L, o.V);

  report::AnalysisRecord rec;
  rec.mode = o.mode;
  rec.source = o.traj;
  rec.horizon = traj.horizon();
  rec.step = traj.step();
  rec.Q = Q.matrix();
  rec.regularity = reg;
  rec.derivative_estimated = traj.derivative_estimated();

  std::optional<DataQmi> q;
  informativity::SynthesisResult res;
  if (o.mode == "cont") {
    q = continuous_qmi(traj, Q);
    res = informativity::synthesize(*q);
  } else if (o.mode == "sampled" || o.mode == "sampled-sufficient") {
    const double delta = require_delta(o.delta);
    rec.delta = delta;
    q = sampled_qmi(traj, delta, Q);
    if (o.mode == "sampled") {
      res = informativity::synthesize(*q);
    } else {
      if (!reg) throw InvalidArgument("sampled-sufficient mode needs --L or --V");
      res = informativity::sampled_sufficient(*q, *reg);
    }
  } else {
    throw InvalidArgument("--mode must be cont, sampled or sampled-sufficient");
  }
  rec.verdict = res.verdict;
  rec.certificate = res.certificate;
  rec.phase1_margin = res.phase1_margin;
  rec.message = res.message;
  if (res.informative()) rec.margin = informativity::maximize_beta(*q, reg);

  const auto doc = report::to_document(rec);
  report::write(out, doc);
  if (!o.out.empty()) {
    std::ofstream f;
    open_output(o.out, f);
    report::write(f, doc);
  }
  return res.informative() ? kExitOk : kExitNegative;
}

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  if (o.traj.empty()) throw InvalidArgument("--traj is required");
  const auto traj = signals::read_trajectory_csv(o.traj);
  const SymMatrix Q = budget_matrix(o.Q, traj.n());
  const auto reg = regularity(o.L, o.V);
  const auto deltas = parse_real_list(o.deltas);

  std::ofstream file;
  if (!o.out.empty()) open_output(o.out, file);
  std::ostream& csv = o.out.empty() ? out : file;
  csv << "delta,thm2_verdict,beta_hat,thm3_floor,thm3_verdict\n";
  for (double delta : deltas) {
    std::optional<DataQmi> q;
    try {
      q = sampled_qmi(traj, delta, Q);
    } catch (const Error& e) {
      csv << num(delta) << ",SKIPPED,nan,nan,SKIPPED: " << sanitize(e.what()) << '\n';
      continue;
    }
    const auto plain = informativity::synthesize(*q);
    double beta_hat = std::nan("");
    if (plain.informative()) {
      const auto m = informativity::maximize_beta(*q);
      if (m.verdict == Verdict::Informative) beta_hat = m.beta_hat;
    }
    std::string floor = "nan", suff = "n/a";
    if (reg) {
      const double L = informativity::equivalent_lipschitz(*reg, traj.horizon());
      floor = num(0.5 * delta * traj.horizon() * L);
      suff = informativity::to_string(informativity::sampled_sufficient(*q, *reg).verdict);
    }
    csv << num(delta) << ',' << informativity::to_string(plain.verdict) << ',' << num(beta_hat) << ','
        << floor << ',' << suff << '\n';
  }
  if (!o.out.empty()) out << "wrote " << o.out << '\n';
  return kExitOk;
}

namespace {

struct RegionLayers {
  informativity::RegionGrid cont, delta, inflated;
};

RegionLayers scan_layers(const signals::TrajectoryData& traj, double delta, const SymMatrix& Q, double L,
                         const Vector& a, const Vector& b, int workers) {
  const double margin = noise::deviation_bound(noise::RegularityCertificate::assumed_lipschitz(L), delta,
                                               traj.horizon());
  const auto cont = continuous_qmi(traj, Q);
  const auto disc = sampled_qmi(traj, delta, Q);
  const auto infl = sampled_qmi(traj, delta, Q + SymMatrix::identity(Q.dim()) * margin);
  return {informativity::region_scan(cont, a, b, workers), informativity::region_scan(disc, a, b, workers),
          informativity::region_scan(infl, a, b, workers)};
}

void write_region_csv(std::ostream& csv, const RegionLayers& r) {
  csv << "a,b,in_cont,in_delta,in_delta_inflated\n";
  const auto& g = r.cont;
  for (Eigen::Index j = 0; j < g.b.size(); ++j)
    for (Eigen::Index i = 0; i < g.a.size(); ++i)
      csv << num(g.a(i)) << ',' << num(g.b(j)) << ',' << int(r.cont.at(i, j)) << ',' << int(r.delta.at(i, j))
          << ',' << int(r.inflated.at(i, j)) << '\n';
}

void write_region_svg(std::ostream& svg, const RegionLayers& r, double delta) {
  const auto& a = r.cont.a;
  const auto& b = r.cont.b;
  const double width = 600.0, height = 600.0, pad = 40.0;
  const double a0 = a(0), a1 = a(a.size() - 1), b0 = b(0), b1 = b(b.size() - 1);
  const double da = a.size() > 1 ? (a1 - a0) / static_cast<double>(a.size() - 1) : 1.0;
  const double db = b.size() > 1 ? (b1 - b0) / static_cast<double>(b.size() - 1) : 1.0;
  auto X = [&](double v) { return pad + (v - (a0 - da / 2)) / (a1 - a0 + da) * width; };
  auto Y = [&](double v) { return pad + height - (v - (b0 - db / 2)) / (b1 - b0 + db) * height; };
  const double cw = width / static_cast<double>(a.size()), ch = height / static_cast<double>(b.size());

  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width + 2 * pad << "\" height=\""
      << height + 2 * pad + 30 << "\">\n";
  svg << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  auto layer = [&](const informativity::RegionGrid& g, const char* colour, double opacity) {
    svg << "<g fill=\"" << colour << "\" fill-opacity=\"" << opacity << "\">\n";
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      Eigen::Index i = 0;
      while (i < a.size()) {
        if (!g.at(i, j)) {
          ++i;
          continue;
        }
        const Eigen::Index start = i;
        while (i < a.size() && g.at(i, j)) ++i;
        svg << "<rect x=\"" << X(a(start)) - cw / 2 << "\" y=\"" << Y(b(j)) - ch / 2 << "\" width=\""
            << cw * static_cast<double>(i - start) << "\" height=\"" << ch << "\"/>\n";
      }
    }
    svg << "</g>\n";
  };
  layer(r.inflated, "#f4a6a6", 0.6);
  layer(r.cont, "#f28c28", 0.8);
  layer(r.delta, "#c81e1e", 0.8);
  auto marker = [&](double av, double bv, const char* colour) {
    svg << "<circle cx=\"" << X(av) << "\" cy=\"" << Y(bv) << "\" r=\"4\" fill=\"" << colour << "\"/>\n";
  };
  marker(-1.0, 0.1, "black");
  marker(4.35, -3.0, "#1f4fd8");
  svg << "<text x=\"" << pad << "\" y=\"" << height + 2 * pad + 15 << "\" font-size=\"13\">"
      << "orange: continuous data; red: sampled, delta = " << num(delta)
      << "; light red: sampled with inflated budget; a horizontal, b vertical</text>\n";
  svg << "</svg>\n";
}

}  // namespace

int cmd_region(const RegionOptions& o, std::ostream& out) {
  if (o.traj.empty()) throw InvalidArgument("--traj is required");
  if (o.L.empty()) throw InvalidArgument("--L is required for the inflated layer");
  const auto traj = signals::read_trajectory_csv(o.traj);
  if (traj.n() != 1 || traj.m() != 1) throw DimensionError("region scans need scalar data (n = m = 1)");
  const double delta = require_delta(o.delta);
  const SymMatrix Q = budget_matrix(o.Q, 1);
  const Vector a = informativity::linspace(o.a_min, o.a_max, o.na);
  const Vector b = informativity::linspace(o.b_min, o.b_max, o.nb);
  const auto layers = scan_layers(traj, delta, Q, parse_real(o.L), a, b, o.workers);

  std::ofstream file;
  if (!o.out.empty()) open_output(o.out, file);
  write_region_csv(o.out.empty() ? out : file, layers);
  if (!o.svg.empty()) {
    std::ofstream svg;
    open_output(o.svg, svg);
    write_region_svg(svg, layers, delta);
  }
  return kExitOk;
}

namespace {

// Reference values of the scalar benchmark, three to four decimals.
Matrix reference_continuous() {
  Matrix m(3, 3);
  m << -0.154, -0.500, -0.995, -0.500, -0.422, -0.595, -0.995, -0.595, -1.0;
  return m;
}

const std::vector<std::pair<double, Matrix>>& reference_sampled() {
  static const std::vector<std::pair<double, Matrix>> table = [] {
    auto mk = [](double a, double b, double c, double d, double e) {
      Matrix m(3, 3);
      m << a, b, c, b, d, e, c, e, -1.0;
      return m;
    };
    return std::vector<std::pair<double, Matrix>>{
        {1.0 / 2, mk(0.446, -0.6263, -0.7229, -0.7086, -0.8229)},
        {1.0 / 4, mk(0.1712, -0.5877, -0.8642, -0.5567, -0.7142)},
        {1.0 / 8, mk(0.0152, -0.5498, -0.9309, -0.4873, -0.6559)},
        {1.0 / 16, mk(-0.0678, -0.5264, -0.9633, -0.4543, -0.6258)},
        {1.0 / 32, mk(-0.1106, -0.5135, -0.9792, -0.4382, -0.6105)},
        {1.0 / 64, mk(-0.1323, -0.5069, -0.9872, -0.4303, -0.6028)},
    };
  }();
  return table;
}

struct CheckTable {
  std::ostream& out;
  int failures = 0;

  void add(const std::string& name, bool pass, const std::string& detail) {
    failures += !pass;
    out << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << '\n';
  }
};

void side_by_side(std::ostream& out, const std::string& title, const Matrix& computed, const Matrix& reference) {
  out << title << "\n  computed                                  reference\n";
  for (Eigen::Index i = 0; i < computed.rows(); ++i) {
    std::ostringstream l, r;
    for (Eigen::Index j = 0; j < computed.cols(); ++j) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%11.6f", computed(i, j));
      l << buf;
      std::snprintf(buf, sizeof(buf), "%9.4f", reference(i, j));
      r << buf;
    }
    out << "  " << l.str() << "   " << r.str() << '\n';
  }
  out << "  max |deviation| = " << num((computed - reference).cwiseAbs().maxCoeff()) << '\n';
}

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

}  // namespace

int cmd_reproduce(const ReproduceOptions& o, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  namespace inf = informativity;
  const double tol = o.tolerance;
  const double L = signals::benchmark::kSquareLipschitz;
  const SymMatrix one = SymMatrix::scalar(1.0);
  CheckTable checks{out};
  out.precision(9);

  // Continuous data on the stated grid h = 1e-4.
  const auto t0 = clock::now();
  const auto coarse = signals::benchmark::make(1e-4);
  const DataQmi cont_coarse = continuous_qmi(coarse.traj, one);
  const double elapsed = std::chrono::duration<double>(clock::now() - t0).count();
  side_by_side(out, "continuous-data QMI matrix, Q = 1, h = 1e-4", cont_coarse.N().matrix(), reference_continuous());
  const double dev_cont = (cont_coarse.N().matrix() - reference_continuous()).cwiseAbs().maxCoeff();
  checks.add("continuous QMI matrix", dev_cont <= tol && elapsed < 1.0,
             "max deviation " + num(dev_cont) +
                 (elapsed < 1.0 ? ", assembled in under 1 s" : ", assembly took over 1 s"));

  const double w2 = noise::integral_noise_matrix(coarse.noise)(0, 0);
  checks.add("noise energy", std::abs(w2 - 2.0 / 3.0) <= 1e-6, "integral of w^2 = " + num(w2));

  // Sampled analyses on the dyadic grid.
  const auto data = signals::benchmark::make(kBenchmarkStep);
  const DataQmi cont = continuous_qmi(data.traj, one);
  std::map<double, DataQmi> sampled;
  double worst = 0.0;
  for (const auto& [delta, ref] : reference_sampled()) {
    const DataQmi q = sampled_qmi(data.traj, delta, one);
    side_by_side(out, "sampled-data QMI matrix, Q = 1, delta = " + num(delta), q.N().matrix(), ref);
    worst = std::max(worst, (q.N().matrix() - ref).cwiseAbs().maxCoeff());
    sampled.emplace(delta, q);
  }
  checks.add("sampled QMI matrices", worst <= tol, "max deviation over six stepsizes " + num(worst));

  const auto r_cont = inf::synthesize(cont);
  const auto triple = inf::check_certificate(cont, SymMatrix::scalar(0.5), scalar(2.0), 0.1);
  checks.add("continuous-data verdict", r_cont.informative() && triple.ok,
             inf::to_string(r_cont.verdict) + "; (P, K, beta) = (1/2, 2, 1/10) residual " + num(triple.residual));
  if (r_cont.certificate) {
    out << "  certificate: P = " << num(r_cont.certificate->P(0, 0)) << ", K = " << num(r_cont.certificate->K(0, 0))
        << ", beta = " << num(r_cont.certificate->beta) << '\n';
  }

  bool sweep_ok = true;
  std::string verdicts;
  for (const auto& [delta, q] : sampled) {
    const auto r = inf::synthesize(q);
    const bool expected = delta < 0.1;
    sweep_ok = sweep_ok && r.informative() == expected &&
               (expected || r.verdict == Verdict::NotInformative);
    verdicts += " " + num(delta) + ":" + inf::to_string(r.verdict);
  }
  checks.add("sampled-data verdicts", sweep_ok, verdicts.substr(1));

  const auto suff = inf::sampled_sufficient(sampled.at(1.0 / 64), noise::RegularityCertificate::assumed_lipschitz(L));
  bool suff_ok = suff.informative() && suff.certificate->beta > 0.125 &&
                 -1.0 + 0.1 * suff.certificate->K(0, 0) < 0.0;
  checks.add("sufficient condition at delta = 1/64, L = 16", suff_ok,
             inf::to_string(suff.verdict) +
                 (suff.certificate ? ", beta = " + num(suff.certificate->beta) + ", closed loop " +
                                         num(-1.0 + 0.1 * suff.certificate->K(0, 0))
                                   : std::string()));
  const auto suff16 = inf::sampled_sufficient(sampled.at(1.0 / 16), noise::RegularityCertificate::assumed_lipschitz(L));
  checks.add("sufficient condition at delta = 1/16, L = 16", suff16.verdict == Verdict::Insufficient,
             inf::to_string(suff16.verdict));

  const auto margin = inf::maximize_beta(cont, noise::RegularityCertificate::assumed_lipschitz(L));
  const double dmax = margin.delta_max.value_or(std::nan(""));
  checks.add("stepsize bound", dmax >= 0.0090 && dmax <= 0.0102,
             "beta_hat = " + num(margin.beta_hat) + ", beta_hat/(TL) = " + num(dmax) + " (about 1/" +
                 num(std::round(1.0 / dmax)) + ")");

  const auto fine_margin = inf::maximize_beta(sampled.at(1.0 / 64), noise::RegularityCertificate::assumed_lipschitz(L));
  bool coarse_ok = fine_margin.ell_max.has_value();
  std::string coarse_detail = "beta_hat(1/64) = " + num(fine_margin.beta_hat);
  if (coarse_ok) {
    const double gamma = static_cast<double>(*fine_margin.ell_max + 1) / 64.0;
    const bool again = inf::synthesize(sampled_qmi(data.traj, gamma, one)).informative();
    coarse_ok = again;
    coarse_detail += ", ell_max = " + std::to_string(*fine_margin.ell_max) + ", gamma = " + num(gamma) +
                     (again ? " informative" : " not informative");
  }
  checks.add("coarsening bound", coarse_ok, coarse_detail);

  bool geometry = inf::membership(scalar(4.35), scalar(-3.0), cont);
  std::string geo = "(4.35,-3) in continuous set: " + std::string(geometry ? "yes" : "no") + "; origin:";
  int far_inside = 0;
  for (const auto& [delta, q] : sampled) {
    const bool origin = inf::membership(scalar(0), scalar(0), q);
    far_inside += inf::membership(scalar(4.35), scalar(-3.0), q);
    geometry = geometry && origin == (delta > 0.1);
    geo += " " + num(delta) + (origin ? ":in" : ":out");
  }
  geometry = geometry && far_inside == 0;
  geo += "; (4.35,-3) in " + std::to_string(far_inside) + " of six sampled sets";
  checks.add("membership geometry", geometry, geo);

  {
    const double h = 2.5e-7, T = 3.0;
    const std::vector<std::function<double(double)>> steps = {
        [](double t) { return t > 1.0 && t < 2.0 ? 1.0 : 0.0; },
        [](double t) { return t > 1.0 && t <= 2.0 ? 1.0 : 0.0; },
        [](double t) { return t >= 1.0 && t <= 2.0 ? 1.0 : 0.0; }};
    std::vector<double> integrals, discrete;
    for (const auto& f : steps) {
      const auto w = signals::GriddedSignal::scalar_function(h, T, f);
      integrals.push_back(noise::integral_noise_matrix(w)(0, 0));
      const auto stride = static_cast<Eigen::Index>(std::llround(1.0 / h));
      Matrix W(1, 3);
      for (Eigen::Index k = 0; k < 3; ++k) W(0, k) = w.values()(0, k * stride);
      discrete.push_back(noise::discrete_noise_matrix(W, 1.0)(0, 0));
    }
    const double spread = *std::max_element(integrals.begin(), integrals.end()) -
                          *std::min_element(integrals.begin(), integrals.end());
    checks.add("endpoint-sensitive noise", spread <= 1e-6 && discrete == std::vector<double>{0.0, 1.0, 2.0},
               "integral spread " + num(spread) + ", sampled energies " + num(discrete[0]) + "," +
                   num(discrete[1]) + "," + num(discrete[2]));
  }

  {
    const Vector a = inf::linspace(-6, 6, 241), b = inf::linspace(-6, 6, 241);
    int violations = 0;
    for (double delta : {1.0 / 2, 1.0 / 8, 1.0 / 16, 1.0 / 64}) {
      const auto layers = scan_layers(data.traj, delta, one, L, a, b, o.workers);
      for (std::size_t k = 0; k < layers.cont.inside.size(); ++k)
        violations += layers.cont.inside[k] && !layers.inflated.inside[k];
      if (!o.out_dir.empty()) {
        std::ofstream f;
        open_output((std::filesystem::path(o.out_dir) / ("region_" + std::to_string(std::lround(1.0 / delta)) + ".csv")).string(), f);
        write_region_csv(f, layers);
        std::ofstream s;
        open_output((std::filesystem::path(o.out_dir) / ("region_" + std::to_string(std::lround(1.0 / delta)) + ".svg")).string(), s);
        write_region_svg(s, layers, delta);
      }
    }
    checks.add("inflated sampled sets contain the continuous set", violations == 0,
               std::to_string(violations) + " violating cells on a 241x241 grid for four stepsizes");
  }

  {
    int failures = 0, total = 0;
    auto run = [&](const DataQmi& q, const inf::SynthesisResult& r) {
      if (!r.certificate) {
        ++failures;
        return;
      }
      for (const auto& X : inf::sample_members(q, 200, 7)) {
        ++total;
        failures += !inf::membership(X.leftCols(1), X.rightCols(1), q) ||
                    !inf::lyapunov_check(X.leftCols(1), X.rightCols(1), r.certificate->K, r.certificate->P);
      }
    };
    run(cont, r_cont);
    for (double delta : {1.0 / 16, 1.0 / 32, 1.0 / 64}) run(sampled.at(delta), inf::synthesize(sampled.at(delta)));
    checks.add("certificates stabilize sampled consistent systems", failures == 0,
               std::to_string(total) + " systems, " + std::to_string(failures) + " failures");
  }

  const auto lam = inf::certify_lambda(cont);
  checks.add("excitation and lambda certificate", lam.verdict == Verdict::Informative,
             inf::to_string(lam.verdict) + (lam.certificate ? ", lambda = " + num(lam.certificate->lambda) : ""));

  if (!o.out_dir.empty()) {
    signals::write_trajectory_csv(std::filesystem::path(o.out_dir) / "trajectory.csv", data.traj);
  }
  out << (checks.failures == 0 ? "all checks passed" : std::to_string(checks.failures) + " check(s) failed") << '\n';
  return checks.failures == 0 ? kExitOk : kExitNegative;
}

}  // namespace ctinform::cli
