#include "ctinform/trajectory_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "ctinform/errors.hpp"

namespace ctinform::signals {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
  throw FormatError(source + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& tok, const std::string& source, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || tok.empty()) {
    fail(source, line, "cannot parse number '" + tok + "'");
  }
  if (!std::isfinite(v)) fail(source, line, "non-finite value '" + tok + "'");
  return v;
}

// Counts the run prefix1, prefix2, ... starting at header[pos].
Eigen::Index count_run(const std::vector<std::string>& header, std::size_t pos,
                       const std::string& prefix) {
  Eigen::Index k = 0;
  while (pos + static_cast<std::size_t>(k) < header.size() &&
         header[pos + static_cast<std::size_t>(k)] == prefix + std::to_string(k + 1)) {
    ++k;
  }
  return k;
}

}  // namespace

TrajectoryData parse_trajectory_csv(std::istream& in, const std::string& source) {
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::size_t header_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    header = split(line);
    header_line = line_no;
    break;
  }
  if (header.empty()) fail(source, line_no, "missing header line");
  if (header[0] != "t") fail(source, header_line, "first column must be 't'");

  std::size_t pos = 1;
  const Eigen::Index n = count_run(header, pos, "x");
  pos += static_cast<std::size_t>(n);
  const Eigen::Index m = count_run(header, pos, "u");
  pos += static_cast<std::size_t>(m);
  if (n < 1) fail(source, header_line, "expected state columns x1..xn");
  if (m < 1) fail(source, header_line, "expected input columns u1..um");
  const Eigen::Index nd = count_run(header, pos, "xdot");
  pos += static_cast<std::size_t>(nd);
  const Eigen::Index nw = count_run(header, pos, "w");
  pos += static_cast<std::size_t>(nw);
  if (pos != header.size()) fail(source, header_line, "unexpected column '" + header[pos] + "'");
  if (nd != 0 && nd != n) fail(source, header_line, "xdot columns must match the state dimension");
  if (nw != 0 && nw != n) fail(source, header_line, "w columns must match the state dimension");

  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto tok = split(line);
    if (tok.size() != header.size()) {
      fail(source, line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                std::to_string(tok.size()));
    }
    std::vector<double> vals;
    vals.reserve(tok.size());
    for (const auto& t : tok) vals.push_back(parse_double(t, source, line_no));
    if (!times.empty() && !(vals[0] > times.back())) fail(source, line_no, "t must increase");
    times.push_back(vals[0]);
    rows.push_back(std::move(vals));
    row_lines.push_back(line_no);
  }
  if (rows.size() < 3) fail(source, line_no, "need at least three data rows");

  const auto intervals = static_cast<Eigen::Index>(rows.size() - 1);
  const double horizon = times.back();
  const double h = horizon / static_cast<double>(intervals);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double expected = static_cast<double>(k) * horizon / static_cast<double>(intervals);
    if (std::abs(times[k] - expected) > 1e-9 * h) {
      fail(source, row_lines[k], "time grid is not uniform from t = 0");
    }
  }

  auto block = [&](std::size_t first, Eigen::Index dim) {
    Matrix v(dim, intervals + 1);
    for (Eigen::Index k = 0; k <= intervals; ++k)
      for (Eigen::Index i = 0; i < dim; ++i)
        v(i, k) = rows[static_cast<std::size_t>(k)][first + static_cast<std::size_t>(i)];
    return GriddedSignal(horizon, std::move(v));
  };
  std::size_t col = 1;
  GriddedSignal x = block(col, n);
  col += static_cast<std::size_t>(n);
  GriddedSignal u = block(col, m);
  col += static_cast<std::size_t>(m);
  std::optional<GriddedSignal> noise;
  bool estimated = nd == 0;
  GriddedSignal xdot = estimated ? derivative_estimate(x) : block(col, n);
  col += static_cast<std::size_t>(nd);
  if (nw > 0) noise = block(col, n);
  return TrajectoryData(std::move(x), std::move(u), std::move(xdot), std::move(noise), estimated);
}

TrajectoryData read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open trajectory file " + path.string());
  return parse_trajectory_csv(in, path.string());
}

void write_trajectory_csv(std::ostream& out, const TrajectoryData& traj) {
  const Eigen::Index n = traj.n(), m = traj.m();
  out << "t";
  for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i;
  for (Eigen::Index i = 1; i <= m; ++i) out << ",u" << i;
  for (Eigen::Index i = 1; i <= n; ++i) out << ",xdot" << i;
  if (traj.noise())
    for (Eigen::Index i = 1; i <= n; ++i) out << ",w" << i;
  out << '\n';

  char buf[32];
  auto put = [&](double v) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    (void)ec;
    out.write(buf, ptr - buf);
  };
  for (Eigen::Index k = 0; k < traj.x().size(); ++k) {
    put(traj.x().time(k));
    auto row = [&](const GriddedSignal& s) {
      for (Eigen::Index i = 0; i < s.dim(); ++i) {
        out << ',';
        put(s.values()(i, k));
      }
    };
    row(traj.x());
    row(traj.u());
    row(traj.xdot());
    if (traj.noise()) row(*traj.noise());
    out << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryData& traj) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write trajectory file " + path.string());
  write_trajectory_csv(out, traj);
  if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace ctinform::signals
