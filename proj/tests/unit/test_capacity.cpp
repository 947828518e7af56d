#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "lossdeph/capacity.hpp"
#include "oracles.hpp"

using namespace lossdeph;

namespace {

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

double dense_entropy(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v > 1e-15) s -= v * std::log2(v);
  }
  return s;
}

// S(B) - S(E) through the explicit dilation.
double dense_coherent_info(double lam, double g, const std::vector<double>& probs) {
  const int c = static_cast<int>(probs.size());
  auto dil = oracle::loss_dephasing_dilation(lam, g, c);
  ComplexMatrix rho = ComplexMatrix::Zero(c, c);
  for (int i = 0; i < c; ++i) rho(i, i) = probs[i];
  return dense_entropy(oracle::channel_output(dil, rho)) - dense_entropy(oracle::complementary_output(dil, rho));
}

}  // namespace

TEST(CoherentInfo, Examples) {
  EXPECT_NEAR(coherent_info_two_level(1.0, 0.0, 0.5), 1.0, 1e-12);
  for (double p = 0.1; p < 0.95; p += 0.1) EXPECT_LE(coherent_info_two_level(0.5, 0.0, p), 1e-12) << p;
  EXPECT_NEAR(coherent_info_two_level(0.7, 0.0, 0.5), h2(0.35) - h2(0.15), 1e-12);
  EXPECT_NEAR(h2(0.35) - h2(0.15), 0.32423, 1e-5);
  EXPECT_THROW(coherent_info_two_level(0.7, 0.0, 1.2), std::domain_error);
}

TEST(CoherentInfo, MatchesDenseDilation) {
  for (auto [lam, g, p] : {std::tuple{0.7, 0.5, 0.3}, {0.9, 0.05, 0.6}, {0.4, 1.5, 0.5}, {0.95, 2.0, 0.1}})
    EXPECT_NEAR(coherent_info_two_level(lam, g, p), dense_coherent_info(lam, g, {p, 1 - p}), 1e-10) << lam;
  const std::vector<double> probs{0.4, 0.3, 0.2, 0.1};
  EXPECT_NEAR(coherent_info_diagonal(0.8, 0.3, probs), dense_coherent_info(0.8, 0.3, probs), 1e-10);
}

TEST(CoherentInfo, ContinuousInP) {
  for (auto [lam, g] : {std::pair{0.6, 0.01}, {0.9, 0.5}, {0.99, 3.0}})
    for (int i = 0; i < 1000; ++i) {
      const double a = coherent_info_two_level(lam, g, 1e-3 * i);
      const double b = coherent_info_two_level(lam, g, 1e-3 * (i + 1));
      EXPECT_LT(std::abs(a - b), 0.05) << lam << ' ' << i;
    }
}

TEST(MaxCoherentInfo, Examples) {
  auto best = max_coherent_info(1.0, 0.0);
  EXPECT_NEAR(best.p, 0.5, 1e-6);
  EXPECT_NEAR(best.value, 1.0, 1e-12);

  auto lossy = max_coherent_info(0.6, 0.01);
  EXPECT_GT(lossy.value, 1e-3);
  for (double p = 0.0; p <= 1.0; p += 0.01) EXPECT_LE(coherent_info_two_level(0.6, 0.01, p), lossy.value + 1e-10);

  auto anti = max_coherent_info(0.4, 0.0);
  EXPECT_LE(anti.value, 1e-12);
  for (double p = 0.0; p <= 1.0; p += 0.05) EXPECT_LE(coherent_info_two_level(0.4, 0.0, p), 1e-12);
}

TEST(Ppt, Examples) {
  EXPECT_NEAR(ppt_min_eigenvalue(1.0, 0.0, 0.5), -0.5, 1e-15);
  EXPECT_NEAR(ppt_min_eigenvalue(0.0, 0.7, 0.5), 0.0, 1e-15);
  EXPECT_LT(ppt_min_eigenvalue(0.3, 2.0, 0.4), 0.0);
  EXPECT_THROW(ppt_min_eigenvalue(0.3, 2.0, 0.0), std::domain_error);
  EXPECT_THROW(ppt_min_eigenvalue(0.3, 2.0, 1.0), std::domain_error);
}

TEST(Ppt, HandBuiltMatrix) {
  const double lam = 0.6, g = 0.8, ns = 0.3;
  // sqrt(1-Ns)|00> + sqrt(Ns)|11> through the channel, transposed on B
  const double b = (1 - lam) * ns, c = std::sqrt((1 - ns) * ns * std::exp(-g) * lam);
  ComplexMatrix pt = ComplexMatrix::Zero(4, 4);
  pt(0, 0) = 1 - ns;
  pt(2, 2) = b;
  pt(3, 3) = lam * ns;
  pt(1, 2) = pt(2, 1) = c;
  EXPECT_LT(oracle::max_abs(partial_transpose(ppt_probe_state(lam, g, ns), 1).matrix() - pt), 1e-15);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt, Eigen::EigenvaluesOnly);
  EXPECT_NEAR(ppt_min_eigenvalue(lam, g, ns), es.eigenvalues()(0), 1e-15);
}

TEST(Ppt, ClosedFormOnGrid) {
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 20; ++k) {
        const double lam = 1e-3 + (1.0 - 1e-3) * i / 19.0;
        const double g = -std::log(0.01 + 0.98 * j / 19.0);
        const double ns = 0.05 + 0.9 * k / 19.0;
        const double closed = ppt_min_eigenvalue(lam, g, ns);
        EXPECT_NEAR(closed, ppt_min_eigenvalue_dense(lam, g, ns), 1e-12);
        EXPECT_LT(closed, -1e-9);
      }
}

TEST(Classify, Examples) {
  auto a = classify_point(0.3, 0.5);
  EXPECT_TRUE(a.red);
  EXPECT_EQ(a.label(), RegionLabel::Red);

  auto b = classify_point(0.9, 0.1);
  EXPECT_TRUE(b.green);
  EXPECT_TRUE(b.crossed_green);
  EXPECT_FALSE(b.anti_degradable());

  auto c = classify_point(0.55, 2.0);
  EXPECT_TRUE(c.red);
  EXPECT_EQ(c.label(), RegionLabel::Red);
  EXPECT_EQ(c.theta.criterion, Criterion::ThetaSeries);
}

TEST(Classify, SdpOverlay) {
  ClassifyConfig cfg;
  cfg.sdp_dimension = 2;
  auto v = classify_point(0.75, 1.0, cfg);
  ASSERT_TRUE(v.sdp.has_value());
  EXPECT_EQ(*v.sdp, FeasibilityStatus::Infeasible);
  EXPECT_TRUE(v.green);
  auto w = classify_point(0.6, 2.0, cfg);
  EXPECT_EQ(*w.sdp, FeasibilityStatus::Feasible);
}

TEST(Classify, LabelPrecedence) {
  RegionVerdict v;
  EXPECT_EQ(v.label(), RegionLabel::Undetermined);
  v.green = true;
  EXPECT_EQ(v.label(), RegionLabel::Green);
  v.crossed_green = true;
  EXPECT_EQ(v.label(), RegionLabel::CrossedGreen);
  v = RegionVerdict{};
  v.crossed_red = true;
  EXPECT_EQ(v.label(), RegionLabel::CrossedRed);
  v.red = true;
  EXPECT_EQ(v.label(), RegionLabel::Red);
}

TEST(Classify, NoOverlapOnGrid) {
  int red = 0, crossed_green = 0;
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 60; ++j) {
      const double lam = 0.01 + 0.98 * i / 59.0;
      const double g = -std::log(0.01 + 0.98 * j / 59.0);
      RegionVerdict v;
      ASSERT_NO_THROW(v = classify_point(lam, g)) << lam << ' ' << g;
      EXPECT_FALSE(v.red && v.crossed_green) << lam << ' ' << g;
      EXPECT_FALSE(v.anti_degradable() && v.not_anti_degradable());
      red += v.red;
      crossed_green += v.crossed_green;
    }
  EXPECT_GT(red, 0);
  EXPECT_GT(crossed_green, 0);
}
