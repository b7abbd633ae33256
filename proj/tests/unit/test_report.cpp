#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ctinform/errors.hpp"
#include "ctinform/report.hpp"

using namespace ctinform;
using namespace ctinform::report;

TEST(Report, MatrixRoundTrip) {
  std::mt19937 rng(2);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = Matrix::NullaryExpr(1 + trial % 3, 1 + trial % 4, [&] { return nd(rng) * 100.0; });
    const Matrix back = parse_matrix(format_matrix(m));
    ASSERT_EQ(back.rows(), m.rows());
    EXPECT_LT(((back - m).array() / m.array().abs().max(1e-300)).abs().maxCoeff(), 1e-8);
  }
  EXPECT_EQ(format_matrix((Matrix(2, 2) << 1, 2, 3, 4).finished()), "1,2;3,4");
  EXPECT_THROW(parse_matrix("1,2;3"), FormatError);
  EXPECT_THROW(parse_matrix("1,x"), FormatError);
}

TEST(Report, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Report, DocumentRoundTrip) {
  Document d;
  d.set("verdict", "verdict", "INFORMATIVE");
  d.set("P", "matrix", "0.5");
  d.set("verdict", "mode", "cont");
  std::stringstream ss;
  write(ss, d);
  const auto back = parse(ss);
  EXPECT_EQ(back.get("verdict", "mode"), "cont");
  EXPECT_EQ(back.get("P", "matrix"), "0.5");
  EXPECT_FALSE(back.get("K", "matrix").has_value());
  std::stringstream bad("key = value\n");
  EXPECT_THROW(parse(bad), FormatError);
}

TEST(Report, CertificateSections) {
  informativity::StabilizationCertificate c;
  c.P = linalg::SymMatrix::scalar(0.5);
  c.K = Matrix::Constant(1, 1, 2.0);
  c.beta = 0.1;
  c.cond_P = 1.0;
  AnalysisRecord r;
  r.mode = "cont";
  r.verdict = informativity::Verdict::Informative;
  r.certificate = c;
  r.source = "traj.csv";
  r.horizon = 1.0;
  r.Q = Matrix::Ones(1, 1);
  const auto d = to_document(r);
  for (const char* s : {"verdict", "P", "K", "beta", "margins", "provenance"}) EXPECT_TRUE(d.has_section(s)) << s;
  EXPECT_EQ(d.get("K", "matrix"), "2");
  EXPECT_EQ(d.get("verdict", "verdict"), "INFORMATIVE");
}
