#include "lossdeph/capacity.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lossdeph/channels.hpp"

namespace lossdeph {

namespace {

void check_point(double lambda, double gamma) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::domain_error("transmissivity must lie in [0,1]");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::domain_error("dephasing must be finite and >= 0");
}

}  // namespace

double coherent_info_diagonal(double transmissivity, double dephasing,
                              std::span<const double> photon_probs) {
  check_point(transmissivity, dephasing);
  const int d = static_cast<int>(photon_probs.size());
  if (d == 0) throw std::invalid_argument("empty photon-number distribution");
  double total = 0.0;
  for (double p : photon_probs) {
    if (!(p >= 0.0)) throw std::domain_error("probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::domain_error("probabilities must sum to 1");

  std::vector<double> output(d, 0.0);
  std::vector<FrameLabel> labels;
  std::vector<double> weights;
  for (int n = 0; n < d; ++n)
    for (int kept = 0; kept <= n; ++kept) {
      // kept photons leave with the environment copy E1; n - kept reach B.
      double w = photon_probs[n] * binom_weight(n, kept, 1.0 - transmissivity);
      output[n - kept] += w;
      labels.push_back({kept, n});
      weights.push_back(w);
    }
  GramFrame frame(std::move(labels), dephasing);
  double s_out = entropy_of_spectrum(output);
  double s_env = entropy_of_spectrum(gram_spectrum(weights, frame).eigenvalues);
  return s_out - s_env;
}

double coherent_info_two_level(double transmissivity, double dephasing, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p must lie in [0,1]");
  const std::array<double, 2> probs{p, 1.0 - p};
  return coherent_info_diagonal(transmissivity, dephasing, probs);
}

CoherentInfoOptimum max_coherent_info(double transmissivity, double dephasing, double tol) {
  check_point(transmissivity, dephasing);
  auto f = [&](double p) { return coherent_info_two_level(transmissivity, dephasing, p); };
  constexpr int kGrid = 21;
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    double v = f(static_cast<double>(i) / (kGrid - 1));
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = std::max(0, best - 1) / static_cast<double>(kGrid - 1);
  double b = std::min(kGrid - 1, best + 1) / static_cast<double>(kGrid - 1);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), e = a + g * (b - a);
  double fc = f(c), fe = f(e);
  while (b - a > tol) {
    if (fc >= fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + g * (b - a);
      fe = f(e);
    }
  }
  CoherentInfoOptimum out{best / static_cast<double>(kGrid - 1), best_v};
  double pm = 0.5 * (a + b);
  double vm = f(pm);
  if (vm > out.value) out = {pm, vm};
  return out;
}

HermitianOperator ppt_probe_state(double transmissivity, double dephasing, double photon_number) {
  check_point(transmissivity, dephasing);
  if (!(photon_number > 0.0 && photon_number < 1.0)) throw std::domain_error("photon number must lie in (0,1)");
  const std::array<double, 2> amp{std::sqrt(1.0 - photon_number), std::sqrt(photon_number)};
  auto rho = HermitianOperator::zero({2, 2});
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      auto a = HermitianOperator::fock_unit(2, m, n);
      auto b = apply_loss_dephasing(a, transmissivity, dephasing);
      rho += (amp[m] * amp[n]) * tensor(a, b);
    }
  return rho;
}

double ppt_min_eigenvalue(double transmissivity, double dephasing, double photon_number) {
  check_point(transmissivity, dephasing);
  if (!(photon_number > 0.0 && photon_number < 1.0)) throw std::domain_error("photon number must lie in (0,1)");
  const double b = (1.0 - transmissivity) * photon_number;
  const double c2 = (1.0 - photon_number) * photon_number * std::exp(-dephasing) * transmissivity;
  return (b - std::sqrt(b * b + 4.0 * c2)) / 2.0;
}

double ppt_min_eigenvalue_dense(double transmissivity, double dephasing, double photon_number) {
  return hermitian_spectrum(partial_transpose(ppt_probe_state(transmissivity, dephasing, photon_number), 1)).min();
}

std::string_view to_string(RegionLabel l) {
  switch (l) {
    case RegionLabel::Red: return "Red";
    case RegionLabel::CrossedRed: return "CrossedRed";
    case RegionLabel::Green: return "Green";
    case RegionLabel::CrossedGreen: return "CrossedGreen";
    case RegionLabel::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

RegionLabel RegionVerdict::label() const {
  if (red) return RegionLabel::Red;
  if (crossed_red) return RegionLabel::CrossedRed;
  if (crossed_green) return RegionLabel::CrossedGreen;
  if (green) return RegionLabel::Green;
  return RegionLabel::Undetermined;
}

RegionVerdict classify_point(double transmissivity, double dephasing, const ClassifyConfig& config) {
  check_point(transmissivity, dephasing);
  RegionVerdict v;
  v.theta = theta_criterion(transmissivity, dephasing);
  v.simple = simple_sufficient_condition(transmissivity, dephasing);
  v.qubit = qubit_restriction_criterion(transmissivity, dephasing);
  v.multiplier = hadamard_criterion(transmissivity, dephasing, config.multiplier_size);
  v.coherent = max_coherent_info(transmissivity, dephasing);
  v.ppt_min_eigenvalue = ppt_min_eigenvalue(transmissivity, dephasing, config.ppt_photon_number);
  if (config.sdp_dimension >= 2)
    v.sdp = two_extendible(qudit_choi(transmissivity, dephasing, config.sdp_dimension), config.solver).status;

  v.red = v.theta.verdict == Verdict::AntiDegradable;
  v.crossed_red = v.multiplier.verdict == Verdict::AntiDegradable;
  v.green = v.qubit.verdict == Verdict::NotAntiDegradable ||
            (v.sdp && *v.sdp == FeasibilityStatus::Infeasible);
  v.crossed_green = v.coherent.value > kPositiveCoherentInfo;

  if (v.simple && !v.red)
    throw InconsistencyError("simple bound holds outside the theta region");
  if (v.anti_degradable() && v.not_anti_degradable())
    throw InconsistencyError("point classified both anti-degradable and not anti-degradable");
  return v;
}

}  // namespace lossdeph
