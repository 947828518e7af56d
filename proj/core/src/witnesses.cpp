#include "lossdeph/witnesses.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lossdeph/antideg_analytic.hpp"

namespace lossdeph {

namespace {

int frame_cutoff(const FrameOperator& env) {
  int top = -1;
  for (const auto& l : env.frame.labels()) top = std::max(top, l.coherent_index);
  if (top < 0) throw std::invalid_argument("empty frame");
  return top + 1;
}

double sqrt_weight_product(int n1, int n2, int k, double q) {
  return std::exp(0.5 * (log_binom_weight(n1, k, q) + log_binom_weight(n2, k, q)));
}

}  // namespace

HermitianOperator antidegrade_low_transmissivity(const FrameOperator& env, double transmissivity) {
  if (!(transmissivity >= 0.0 && transmissivity <= 0.5))
    throw std::domain_error("low-transmissivity map needs lambda in [0,1/2]");
  const int d = frame_cutoff(env);
  const auto& labels = env.frame.labels();
  const double gamma = env.frame.dephasing();
  ComplexMatrix e1 = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < env.frame.size(); ++j)
    for (int i = 0; i < env.frame.size(); ++i) {
      Complex c = env.coefficients(i, j);
      if (c == 0.0) continue;
      const auto& a = labels[i];
      const auto& b = labels[j];
      double dn = a.coherent_index - b.coherent_index;
      double parity = ((a.photons - b.photons) % 2 == 0) ? 1.0 : -1.0;
      e1(a.photons, b.photons) += parity * std::exp(-gamma * dn * dn / 2.0) * c;
    }
  return apply_pure_loss(HermitianOperator(std::move(e1)), transmissivity / (1.0 - transmissivity));
}

HermitianOperator antidegrade_hadamard(const FrameOperator& env, double transmissivity,
                                       double dephasing) {
  if (!(transmissivity > 0.5 && transmissivity < 1.0))
    throw std::domain_error("multiplier map needs lambda in (1/2,1)");
  const int d = frame_cutoff(env);
  const RealMatrix a = hadamard_multiplier(transmissivity, dephasing, d);
  const double q = (2.0 * transmissivity - 1.0) / transmissivity;
  const auto& labels = env.frame.labels();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < env.frame.size(); ++j)
    for (int i = 0; i < env.frame.size(); ++i) {
      Complex c = env.coefficients(i, j);
      if (c == 0.0) continue;
      const int l1 = labels[i].photons, l2 = labels[j].photons;
      const int r1 = labels[i].coherent_index - l1, r2 = labels[j].coherent_index - l2;
      double parity = ((l1 - l2) % 2 == 0) ? 1.0 : -1.0;
      Complex base = parity * a(r1, r2) * c;
      for (int k = 0; k <= std::min(r1, r2); ++k)
        out(k + l1, k + l2) += base * sqrt_weight_product(r1, r2, k, q) * a(k + l1, k + l2);
    }
  return HermitianOperator(std::move(out));
}

double verify_antidegrading(const ChannelParams& params) {
  params.validate();
  const double lam = params.transmissivity;
  const double gamma = params.dephasing;
  const bool low = lam <= 0.5;
  if (!low && theta_criterion(lam, gamma).verdict != Verdict::AntiDegradable)
    throw OutsideProvenRegion("outside proven anti-degradable region");
  const int d = params.cutoff;
  double worst = 0.0;
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      auto gen = HermitianOperator::fock_unit(d, m, n);
      auto env = apply_complementary(gen, lam, gamma);
      auto back = low ? antidegrade_low_transmissivity(env, lam) : antidegrade_hadamard(env, lam, gamma);
      worst = std::max(worst, back.max_abs_diff(apply_loss_dephasing(gen, lam, gamma)));
    }
  return worst;
}

HermitianOperator apply_hadamard(const HermitianOperator& rho, const RealMatrix& multiplier,
                                 int subsystem) {
  const auto& dims = rho.dims();
  if (subsystem < 0 || subsystem >= rho.num_subsystems()) throw std::out_of_range("bad subsystem");
  const int ds = dims[subsystem];
  if (multiplier.rows() != ds || multiplier.cols() != ds)
    throw std::invalid_argument("multiplier size must match the subsystem");
  int stride = 1;
  for (int k = subsystem + 1; k < rho.num_subsystems(); ++k) stride *= dims[k];
  const int n = rho.dim();
  ComplexMatrix out = rho.matrix();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (out(i, j) != 0.0) out(i, j) *= multiplier((i / stride) % ds, (j / stride) % ds);
  return HermitianOperator(std::move(out), dims);
}

ExtensionReport build_two_extension(const ChannelParams& params, double squeezing) {
  params.validate();
  const double lam = params.transmissivity;
  if (!(lam > 0.5 && lam < 1.0)) throw std::domain_error("extension needs lambda in (1/2,1)");
  if (!(params.dephasing > 0.0)) throw std::domain_error("extension needs gamma > 0");
  if (!(squeezing > 0.0) || !std::isfinite(squeezing)) throw std::domain_error("squeezing must be > 0");

  const int d = params.cutoff;
  const RealMatrix a = hadamard_multiplier(lam, params.dephasing, d);
  const double q = (2.0 * lam - 1.0) / lam;
  const double t = std::tanh(squeezing);
  const double norm = 1.0 / (std::cosh(squeezing) * std::cosh(squeezing));
  auto flat = [d](int x, int y, int z) { return (x * d + y) * d + z; };

  // log B_ell(m, 1-lambda) and log B_k(r, q) tables.
  RealMatrix loss_w(d, d), split_w(d, d);
  for (int m = 0; m < d; ++m)
    for (int l = 0; l <= m; ++l) {
      loss_w(m, l) = log_binom_weight(m, l, 1.0 - lam);
      split_w(m, l) = log_binom_weight(m, l, q);
    }

  ComplexMatrix rho = ComplexMatrix::Zero(d * d * d, d * d * d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) {
      double pre = norm * std::pow(t, m + n);
      for (int l1 = 0; l1 <= m; ++l1)
        for (int l2 = 0; l2 <= n; ++l2) {
          const int r1 = m - l1, r2 = n - l2;
          for (int k = 0; k <= std::min(r1, r2); ++k) {
            double w = std::exp(0.5 * (loss_w(m, l1) + loss_w(n, l2) + split_w(r1, k) + split_w(r2, k)));
            rho(flat(m, r1, l1 + k), flat(n, r2, l2 + k)) = pre * w * a(r1, r2) * a(l1 + k, l2 + k);
          }
        }
    }

  ExtensionReport rep;
  rep.state = HermitianOperator(std::move(rho), {d, d, d});
  const auto tau = generalized_choi(params, squeezing).state;
  const std::array<int, 2> keep_ab1{0, 1};
  const std::array<int, 2> keep_ab2{0, 2};
  rep.marginal_ab1_deviation = partial_trace(rep.state, keep_ab1).max_abs_diff(tau);
  rep.marginal_ab2_deviation = partial_trace(rep.state, keep_ab2).max_abs_diff(tau);
  rep.min_eigenvalue = blockwise_min_eigenvalue(rep.state);
  rep.trace_deviation = std::abs(1.0 - rep.state.trace().real());
  return rep;
}

RealMatrix qutrit_extension_block(double transmissivity) {
  const double lam = transmissivity;
  if (!(lam > 0.5 && lam <= 1.0)) throw std::domain_error("qutrit block needs lambda in (1/2,1]");
  const double a = 1.0 - lam;
  const double b = 2.0 * lam - 1.0;
  const double s2 = std::sqrt(2.0);
  RealMatrix m = RealMatrix::Zero(7, 7);
  auto put = [&m](int i, int j, double v) {
    m(i, j) = v;
    m(j, i) = v;
  };
  put(0, 0, 1.0);
  put(0, 1, std::sqrt(a));
  put(0, 3, s2 * a);
  put(0, 4, a * a / lam);
  put(1, 1, a);
  put(1, 3, std::sqrt(2.0 * a * a * a));
  put(1, 4, std::sqrt(std::pow(a, 5) / (lam * lam)));
  put(2, 2, b);
  put(2, 5, (b / lam) * std::sqrt(a));
  put(3, 3, 2.0 * a * a);
  put(3, 4, s2 * a * a * a / lam);
  put(4, 4, a * a);
  put(5, 5, 2.0 * a * b);
  put(6, 6, b * b);
  return m;
}

double qutrit_extension_min_eigenvalue(double transmissivity) {
  return min_eigenvalue(qutrit_extension_block(transmissivity));
}

}  // namespace lossdeph
