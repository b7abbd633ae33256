#include "ctinform/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ctinform/errors.hpp"

namespace ctinform::report {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok) {
  const std::string t = trim(tok);
  if (t == "inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  if (t == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw FormatError("cannot parse number '" + t + "'");
  }
  return v;
}

}  // namespace

void Document::set(const std::string& section, const std::string& key, const std::string& value) {
  for (auto& [name, entries] : sections_) {
    if (name != section) continue;
    for (auto& [k, v] : entries) {
      if (k == key) {
        v = value;
        return;
      }
    }
    entries.emplace_back(key, value);
    return;
  }
  sections_.push_back({section, {{key, value}}});
}

std::optional<std::string> Document::get(const std::string& section, const std::string& key) const {
  for (const auto& [name, entries] : sections_) {
    if (name != section) continue;
    for (const auto& [k, v] : entries)
      if (k == key) return v;
  }
  return std::nullopt;
}

bool Document::has_section(const std::string& section) const {
  for (const auto& s : sections_)
    if (s.first == section) return true;
  return false;
}

void write(std::ostream& out, const Document& doc) {
  bool first = true;
  for (const auto& [name, entries] : doc.sections()) {
    if (!first) out << '\n';
    first = false;
    out << '[' << name << "]\n";
    for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
  }
}

Document parse(std::istream& in) {
  Document doc;
  std::string line, section;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) throw FormatError("line " + std::to_string(no) + ": bad section header");
      section = t.substr(1, t.size() - 2);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw FormatError("line " + std::to_string(no) + ": expected 'key = value' inside a section");
    }
    doc.set(section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return doc;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_matrix(const Matrix& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) s += ';';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) s += ',';
      s += format_number(m(i, j));
    }
  }
  return s;
}

Matrix parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<double> vals;
    std::stringstream cs(row);
    std::string tok;
    while (std::getline(cs, tok, ',')) vals.push_back(parse_number(tok));
    if (vals.empty()) throw FormatError("empty matrix row in '" + text + "'");
    if (!rows.empty() && vals.size() != rows.front().size()) throw FormatError("ragged matrix '" + text + "'");
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw FormatError("empty matrix");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

Document to_document(const AnalysisRecord& r) {
  using informativity::to_string;
  Document d;
  d.set("verdict", "verdict", to_string(r.verdict));
  d.set("verdict", "mode", r.mode);
  if (r.certificate) d.set("verdict", "condition", to_string(r.certificate->condition));
  if (!r.message.empty()) d.set("verdict", "message", r.message);

  if (r.certificate) {
    const auto& c = *r.certificate;
    d.set("P", "matrix", format_matrix(c.P.matrix()));
    d.set("P", "min_eig", format_number(linalg::min_eig(c.P)));
    d.set("P", "condition_number", format_number(c.cond_P));
    d.set("K", "matrix", format_matrix(c.K));
    d.set("beta", "value", format_number(c.beta));
    d.set("beta", "floor", format_number(c.beta_floor));
    d.set("beta", "p_floor", format_number(c.p_floor));
  } else {
    d.set("P", "matrix", "none");
    d.set("K", "matrix", "none");
    d.set("beta", "value", "none");
  }

  d.set("margins", "phase1", format_number(r.phase1_margin));
  if (r.certificate) d.set("margins", "lmi_residual", format_number(r.certificate->residual));
  if (r.margin && r.margin->verdict == informativity::Verdict::Informative) {
    d.set("margins", "beta_hat", format_number(r.margin->beta_hat));
    d.set("margins", "trace_bound", format_number(r.margin->trace_bound));
    d.set("margins", "trace_active", r.margin->trace_active ? "true" : "false");
    if (r.margin->delta_max) d.set("margins", "delta_max", format_number(*r.margin->delta_max));
    if (r.margin->ell_max) d.set("margins", "ell_max", std::to_string(*r.margin->ell_max));
  }

  d.set("provenance", "source", r.source);
  d.set("provenance", "horizon", format_number(r.horizon));
  d.set("provenance", "grid_step", format_number(r.step));
  if (r.delta) d.set("provenance", "delta", format_number(*r.delta));
  if (r.Q.size() > 0) d.set("provenance", "Q", format_matrix(r.Q));
  d.set("provenance", "derivative", r.derivative_estimated ? "estimated" : "measured");
  if (r.regularity) d.set("provenance", "regularity", r.regularity->describe());
  if (r.certificate) d.set("provenance", "reduced", r.certificate->reduced ? "true" : "false");
  return d;
}

}  // namespace ctinform::report
