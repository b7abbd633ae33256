#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctinform/informativity.hpp"

namespace ctinform::report {

using linalg::Matrix;

/**
 * Plain-text document of `[section]` headers followed by `key = value`
 * lines. Matrices are written as rows separated by ';' with ',' between
 * entries. Sections and keys keep insertion order.
 */
class Document {
 public:
  using Entries = std::vector<std::pair<std::string, std::string>>;

  void set(const std::string& section, const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;
  const std::vector<std::pair<std::string, Entries>>& sections() const { return sections_; }

 private:
  std::vector<std::pair<std::string, Entries>> sections_;
};

void write(std::ostream& out, const Document& doc);
/// Throws FormatError with the line number on malformed input.
Document parse(std::istream& in);

/// 9 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);
std::string format_matrix(const Matrix& m);
/// Inverse of format_matrix; throws FormatError on ragged or non-numeric input.
Matrix parse_matrix(const std::string& text);

struct AnalysisRecord {
  std::string mode;
  informativity::Verdict verdict = informativity::Verdict::Indeterminate;
  std::optional<informativity::StabilizationCertificate> certificate;
  std::optional<informativity::MarginReport> margin;
  double phase1_margin = 0.0;
  std::string message;

  std::string source;
  double horizon = 0.0;
  double step = 0.0;
  std::optional<double> delta;
  Matrix Q;
  std::optional<noise::RegularityCertificate> regularity;
  bool derivative_estimated = false;
};

/// Sections [verdict] [P] [K] [beta] [margins] [provenance].
Document to_document(const AnalysisRecord& r);

}  // namespace ctinform::report
