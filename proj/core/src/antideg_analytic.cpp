#include "lossdeph/antideg_analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lossdeph/channels.hpp"

namespace lossdeph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_point(double lambda, double gamma) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::domain_error("transmissivity must lie in [0,1]");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::domain_error("dephasing must be finite and >= 0");
}

double log_sum_exp(const std::vector<double>& xs) {
  double top = -kInf;
  for (double x : xs) top = std::max(top, x);
  if (top == -kInf) return -kInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - top);
  return top + std::log(s);
}

// Upper end probed when the multiplier matrix stays PSD up to lambda -> 1.
constexpr double kUpperProbe = 1.0 - 1e-14;

bool multiplier_psd(double lambda, double gamma, int d) {
  return hadamard_multiplier_min_eigenvalue(lambda, gamma, d) >= -kTolPsd;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::AntiDegradable: return "AntiDegradable";
    case Verdict::NotAntiDegradable: return "NotAntiDegradable";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::LowTransmissivity: return "LowTransmissivity";
    case Criterion::ThetaSeries: return "ThetaSeries";
    case Criterion::SimpleBound: return "SimpleBound";
    case Criterion::QubitRestriction: return "QubitRestriction";
    case Criterion::HadamardMultiplier: return "HadamardMultiplier";
    case Criterion::None: return "None";
  }
  return "None";
}

double theta(double x, double y, double tol) {
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("theta needs x in [0,1)");
  if (!(y >= 0.0) || !std::isfinite(y)) throw std::domain_error("theta needs finite y >= 0");
  if (x == 0.0 || y == 0.0) return 1.0;
  const double lx = std::log(x);
  const double ly = std::log(y);
  double sum = 1.0;
  for (long n = 1; n < 10'000'000; ++n) {
    double dn = static_cast<double>(n);
    double term = std::exp(dn * dn * lx + dn * ly);
    sum += term;
    bool decreasing = (2.0 * dn + 1.0) * lx + ly < 0.0;
    if (decreasing && term < tol * sum) return sum;
  }
  throw std::runtime_error("theta series did not converge");
}

CriterionOutcome theta_criterion(double transmissivity, double dephasing) {
  check_point(transmissivity, dephasing);
  if (transmissivity <= 0.5)
    return {Verdict::AntiDegradable, Criterion::LowTransmissivity, 0.5 - transmissivity};
  if (transmissivity >= 1.0 || dephasing == 0.0)
    return {Verdict::Inconclusive, Criterion::ThetaSeries, -kInf};
  double t = theta(std::exp(-dephasing / 2.0), std::sqrt(transmissivity / (1.0 - transmissivity)));
  double margin = 1.5 - t;
  return {margin >= 0.0 ? Verdict::AntiDegradable : Verdict::Inconclusive, Criterion::ThetaSeries,
          margin};
}

double theta_boundary(double dephasing) {
  check_point(0.5, dephasing);
  if (dephasing == 0.0) return 0.5;
  const double x = std::exp(-dephasing / 2.0);
  if (theta(x, 1.0) >= 1.5) return 0.5;
  double lo = 1.0, hi = 2.0;
  while (theta(x, hi) < 1.5) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (theta(x, mid) <= 1.5 ? lo : hi) = mid;
  }
  return lo * lo / (1.0 + lo * lo);
}

bool simple_sufficient_condition(double transmissivity, double dephasing) {
  check_point(transmissivity, dephasing);
  return transmissivity <= std::max(0.5, 1.0 / (1.0 + 9.0 * std::exp(-dephasing)));
}

double qubit_threshold(double dephasing) {
  check_point(0.5, dephasing);
  return 1.0 / (1.0 + std::exp(-dephasing));
}

double qubit_inequality_gap(double transmissivity, double dephasing) {
  auto c = qubit_choi(transmissivity, dephasing);
  const std::array<int, 1> keep_b{1};
  auto out = partial_trace(c, keep_b);
  double lhs = (out.matrix() * out.matrix()).trace().real();
  double purity = (c.matrix() * c.matrix()).trace().real();
  double det = std::max(c.matrix().real().determinant(), 0.0);
  return lhs - purity + 4.0 * std::sqrt(det);
}

CriterionOutcome qubit_restriction_criterion(double transmissivity, double dephasing) {
  check_point(transmissivity, dephasing);
  double margin = qubit_threshold(dephasing) - transmissivity;
  double gap = qubit_inequality_gap(transmissivity, dephasing);
  if ((margin > 1e-9 && gap < -1e-9) || (margin < -1e-9 && gap > 1e-9))
    throw InconsistencyError("qubit criterion: closed form and inequality disagree");
  return {margin < 0.0 ? Verdict::NotAntiDegradable : Verdict::Inconclusive,
          Criterion::QubitRestriction, margin};
}

int qubit_choi_rank(double transmissivity, double dephasing) {
  auto spec = hermitian_spectrum(qubit_choi(transmissivity, dephasing));
  double cut = 1e-10 * std::max(spec.max(), 1e-300);
  return static_cast<int>(std::count_if(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                         [cut](double v) { return v > cut; }));
}

RealMatrix hadamard_multiplier(double transmissivity, double dephasing, int d) {
  check_point(transmissivity, dephasing);
  if (!(transmissivity > 0.5)) throw std::domain_error("multiplier matrix needs lambda > 1/2");
  if (!(dephasing > 0.0)) throw std::domain_error("multiplier matrix needs gamma > 0");
  if (d < 1) throw std::invalid_argument("multiplier size must be >= 1");
  const double q = (2.0 * transmissivity - 1.0) / transmissivity;
  RealMatrix a(d, d);
  std::vector<double> terms;
  for (int n = 0; n < d; ++n)
    for (int m = 0; m <= n; ++m) {
      terms.clear();
      for (int j = 0; j <= m; ++j)
        terms.push_back(0.5 * (log_binom_weight(n, j, q) + log_binom_weight(m, j, q)));
      double dn = n - m;
      double log_a = -dephasing * dn * dn / 2.0 - log_sum_exp(terms);
      double v = log_a > 700.0 ? kInf : std::exp(log_a);
      a(m, n) = v;
      a(n, m) = v;
    }
  return a;
}

double hadamard_multiplier_min_eigenvalue(double transmissivity, double dephasing, int d) {
  return min_eigenvalue(hadamard_multiplier(transmissivity, dephasing, d));
}

bool is_diagonally_dominant(const RealMatrix& a, double slack) {
  for (Eigen::Index n = 0; n < a.cols(); ++n) {
    double off = 0.0;
    for (Eigen::Index m = 0; m < a.rows(); ++m)
      if (m != n) off += std::abs(a(m, n));
    if (!(off <= a(n, n) + slack)) return false;
  }
  return true;
}

CriterionOutcome hadamard_criterion(double transmissivity, double dephasing, int d) {
  check_point(transmissivity, dephasing);
  if (transmissivity <= 0.5 || dephasing == 0.0)
    return {Verdict::Inconclusive, Criterion::HadamardMultiplier,
            std::numeric_limits<double>::quiet_NaN()};
  double e = hadamard_multiplier_min_eigenvalue(transmissivity, dephasing, d);
  return {e >= -kTolPsd ? Verdict::AntiDegradable : Verdict::Inconclusive,
          Criterion::HadamardMultiplier, e};
}

double hadamard_psd_threshold(double dephasing, int d, double tol) {
  check_point(0.5, dephasing);
  if (!(dephasing > 0.0)) throw std::domain_error("threshold needs gamma > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  constexpr int kScan = 16;
  std::array<double, kScan> grid{};
  std::array<bool, kScan> psd{};
  for (int i = 0; i < kScan; ++i) {
    grid[i] = 0.5 + 0.5 * (i + 1) / (kScan + 1.0);
    psd[i] = multiplier_psd(grid[i], dephasing, d);
  }
  for (int i = 1; i < kScan; ++i)
    if (psd[i] && !psd[i - 1])
      throw std::runtime_error("multiplier PSD set is not an interval on the pre-scan grid");

  double lo = 0.5, hi = kUpperProbe;
  for (int i = 0; i < kScan; ++i) {
    if (psd[i]) {
      lo = grid[i];
    } else {
      hi = grid[i];
      break;
    }
  }
  if (hi == kUpperProbe && multiplier_psd(hi, dephasing, d)) return hi;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (multiplier_psd(mid, dephasing, d) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace lossdeph
