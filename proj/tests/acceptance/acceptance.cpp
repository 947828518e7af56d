// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "algebra_suite.hpp"
#include "cli_app.hpp"
#include "lossdeph/antideg_analytic.hpp"
#include "lossdeph/capacity.hpp"
#include "lossdeph/extendibility_sdp.hpp"
#include "lossdeph/witnesses.hpp"

using namespace lossdeph;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome qubit_curve() {
  const auto t0 = Clock::now();
  cli::CurveOptions opt;
  opt.visibility_min = 0.05;
  opt.visibility_max = 0.95;
  opt.gamma_steps = 15;
  opt.dims = {2};
  opt.workers = 4;
  auto res = cli::lambda_curve(opt);
  double worst = 0.0;
  for (const auto& row : res.table.rows) {
    const double vis = std::stod(row[0]);
    const double lam = std::stod(row[2]);
    worst = std::max(worst, std::isfinite(lam) ? std::abs(lam - 1.0 / (1.0 + vis)) : INFINITY);
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = res.table.rows.size() == 15 && res.undecided == 0 && worst <= 5e-3 && secs < 60.0;
  o.detail = "max |lambda_2 - 1/(1+e^-g)| = " + fmt("%.3g", worst) + ", " + fmt("%.1f s", secs);
  return o;
}

Outcome qutrit_curve() {
  const auto t0 = Clock::now();
  cli::CurveOptions opt;
  opt.visibility_min = 0.1;
  opt.visibility_max = 0.4;
  opt.gamma_steps = 4;
  opt.dims = {3};
  opt.workers = 4;
  auto res = cli::lambda_curve(opt);
  double worst = 0.0;
  for (const auto& row : res.table.rows) {
    const double lam = std::stod(row[2]);
    worst = std::max(worst, std::isfinite(lam) ? std::abs(lam - 1.0 / (1.0 + std::stod(row[0]))) : INFINITY);
  }

  double lo = 0.6, hi = 0.9;
  bool bracket = qutrit_extension_min_eigenvalue(lo) < -kTolPsd && qutrit_extension_min_eigenvalue(hi) >= -kTolPsd;
  while (bracket && hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    (qutrit_extension_min_eigenvalue(mid) < -kTolPsd ? lo : hi) = mid;
  }
  const double root_err = std::abs(0.5 * (lo + hi) - 1.0 / std::sqrt(2.0));
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = res.undecided == 0 && res.table.rows.size() == 4 && worst <= 5e-3 && bracket && root_err <= 1e-4 &&
           secs < 300.0;
  o.detail = "max |lambda_3 - 1/(1+e^-g)| = " + fmt("%.3g", worst) + ", qutrit root off 1/sqrt2 by " +
             fmt("%.2g", root_err) + ", " + fmt("%.1f s", secs);
  return o;
}

Outcome witnesses() {
  std::vector<std::pair<double, double>> region_i, region_ii{{0.55, 2.0}};
  for (int k = 0; k < 10; ++k) region_i.emplace_back(0.05 + 0.045 * k, 0.1 + 0.4 * k);
  for (double vis : {0.02, 0.05, 0.1})
    for (double frac : {0.3, 0.6, 0.9}) {
      const double g = -std::log(vis);
      region_ii.emplace_back(0.5 + frac * (theta_boundary(g) - 0.5), g);
    }
  double map_dev = 0.0, ext_dev = 0.0, ext_min = INFINITY;
  int points = 0;
  bool ok = region_i.size() == 10 && region_ii.size() == 10;
  for (auto [lam, g] : region_i) {
    ok = ok && lam <= 0.5;
    map_dev = std::max(map_dev, verify_antidegrading({lam, g, 8}));
    ++points;
  }
  for (auto [lam, g] : region_ii) {
    const auto crit = theta_criterion(lam, g);
    ok = ok && lam > 0.5 && crit.verdict == Verdict::AntiDegradable && crit.criterion == Criterion::ThetaSeries;
    map_dev = std::max(map_dev, verify_antidegrading({lam, g, 8}));
    const auto ext = build_two_extension({lam, g, 12}, 0.5);
    ext_dev = std::max({ext_dev, ext.marginal_ab1_deviation, ext.marginal_ab2_deviation});
    ext_min = std::min(ext_min, ext.min_eigenvalue);
    ++points;
  }
  Outcome o;
  o.pass = ok && map_dev <= 1e-10 && ext_dev <= 1e-6 && ext_min >= -kTolPsd;
  o.detail = std::to_string(points) + " points, map deviation " + fmt("%.2g", map_dev) + ", extension deviation " +
             fmt("%.2g", ext_dev) + ", extension min eig " + fmt("%.2g", ext_min);
  return o;
}

Outcome non_overlap() {
  ClassifyConfig cfg;
  cfg.sdp_dimension = 2;
  int both = 0, crossed_green_red = 0, errors = 0, undecided = 0;
  const auto lam = cli::linspace(0.01, 0.99, 60);
  const auto vis = cli::linspace(0.01, 0.99, 60);
  auto flags = cli::parallel_map(3600, 4, [&](int idx) {
    try {
      auto v = classify_point(lam[idx % 60], cli::dephasing_from_visibility(vis[idx / 60]), cfg);
      return std::array<int, 4>{v.anti_degradable() && v.not_anti_degradable(), v.red && v.crossed_green, 0,
                                v.sdp == FeasibilityStatus::Undecided};
    } catch (const std::exception&) {
      return std::array<int, 4>{0, 0, 1, 0};
    }
  });
  for (const auto& f : flags) {
    both += f[0];
    crossed_green_red += f[1];
    errors += f[2];
    undecided += f[3];
  }
  Outcome o;
  o.pass = both == 0 && crossed_green_red == 0 && errors == 0;
  o.detail = "3600 points, " + std::to_string(both) + " both ways, " + std::to_string(crossed_green_red) +
             " CrossedGreen+Red, " + std::to_string(errors) + " inconsistency errors, " + std::to_string(undecided) +
             " SDP undecided";
  return o;
}

Outcome eta_stability() {
  double worst = 0.0, below_theta = 0.0;
  for (double vis : cli::linspace(0.05, 0.95, 20)) {
    const double g = -std::log(vis);
    const double e30 = hadamard_psd_threshold(g, 30);
    worst = std::max(worst, std::abs(e30 - hadamard_psd_threshold(g, 20)));
    below_theta = std::max(below_theta, theta_boundary(g) - e30);
  }
  Outcome o;
  o.pass = worst <= 2e-3 && below_theta <= 0.0;
  o.detail = "max |eta_30 - eta_20| = " + fmt("%.3g", worst) + ", max (theta boundary - eta_30) = " +
             fmt("%.3g", below_theta);
  return o;
}

Outcome ppt() {
  double worst = 0.0, largest = -INFINITY;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 20; ++k) {
        const double lam = 1e-3 + (1.0 - 1e-3) * i / 19.0;
        const double g = -std::log(0.01 + 0.98 * j / 19.0);
        const double ns = 0.05 + 0.9 * k / 19.0;
        const double closed = ppt_min_eigenvalue(lam, g, ns);
        worst = std::max(worst, std::abs(closed - ppt_min_eigenvalue_dense(lam, g, ns)));
        largest = std::max(largest, closed);
      }
  Outcome o;
  o.pass = worst <= 1e-12 && largest < -1e-9;
  o.detail = "8000 points, closed vs dense " + fmt("%.2g", worst) + ", largest min eig " + fmt("%.3g", largest);
  return o;
}

Outcome channel_algebra() {
  const auto t0 = Clock::now();
  auto rep = oracle::run_channel_algebra(20240611, 200);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = rep.within_tolerances() && secs < 30.0;
  o.detail = "200 trials, commutation " + fmt("%.2g", rep.commutation) + ", semigroups " +
             fmt("%.2g", std::max(rep.loss_semigroup, rep.dephasing_semigroup)) + ", trace " +
             fmt("%.2g", rep.trace) + ", choi min eig " + fmt("%.2g", rep.choi_min_eigenvalue) + ", " +
             fmt("%.1f s", secs);
  return o;
}

Outcome coherent_info() {
  const double full = coherent_info_two_level(1.0, 0.0, 0.5);
  double half = -INFINITY;
  for (int k = 1; k <= 9; ++k) half = std::max(half, coherent_info_two_level(0.5, 0.0, 0.1 * k));
  const double best = max_coherent_info(0.6, 0.01).value;
  Outcome o;
  o.pass = std::abs(full - 1.0) <= 1e-12 && half <= 1e-12 && best > 1e-3;
  o.detail = "I_c(1,0,1/2) - 1 = " + fmt("%.2g", full - 1.0) + ", max I_c(1/2,0,p) = " + fmt("%.2g", half) +
             ", max_p I_c(0.6,0.01) = " + fmt("%.4g", best);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"qubit-threshold-curve", qubit_curve},
      {"qutrit-threshold-curve", qutrit_curve},
      {"antidegrading-witnesses", witnesses},
      {"non-overlap", non_overlap},
      {"eta-stability", eta_stability},
      {"ppt-witness", ppt},
      {"channel-algebra", channel_algebra},
      {"coherent-info", coherent_info},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
