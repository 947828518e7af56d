#include "lossdeph/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace lossdeph {

namespace {

void check_transmissivity(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::domain_error("transmissivity must lie in [0,1]");
}

void check_dephasing(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::domain_error("dephasing must be finite and >= 0");
}

const ComplexMatrix& single_mode(const HermitianOperator& m) {
  if (m.num_subsystems() != 1) throw std::invalid_argument("expected a single-mode operator");
  return m.matrix();
}

// sqrt(B_ell(m,p) B_ell(n,p)).
double paired_weight(int m, int n, int ell, double p) {
  return std::exp(0.5 * (log_binom_weight(m, ell, p) + log_binom_weight(n, ell, p)));
}

double dephasing_factor(int m, int n, double gamma) {
  double d = m - n;
  return std::exp(-gamma * d * d / 2.0);
}

}  // namespace

void ChannelParams::validate() const {
  check_transmissivity(transmissivity);
  check_dephasing(dephasing);
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
}

Complex FrameOperator::trace() const {
  const auto& g = frame.gram();
  Complex t = 0.0;
  for (Eigen::Index i = 0; i < coefficients.rows(); ++i)
    for (Eigen::Index j = 0; j < coefficients.cols(); ++j)
      if (g(j, i) != 0.0) t += coefficients(i, j) * g(j, i);
  return t;
}

Complex FrameOperator::coefficient(FrameLabel row, FrameLabel col) const {
  int i = frame.index_of(row);
  int j = frame.index_of(col);
  if (i < 0 || j < 0) throw std::out_of_range("label not in frame");
  return coefficients(i, j);
}

HermitianOperator apply_pure_loss(const HermitianOperator& m, double transmissivity) {
  check_transmissivity(transmissivity);
  const auto& in = single_mode(m);
  const int d = m.dim();
  const double loss = 1.0 - transmissivity;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      if (in(r, c) == 0.0) continue;
      for (int ell = 0; ell <= std::min(r, c); ++ell)
        out(r - ell, c - ell) += paired_weight(r, c, ell, loss) * in(r, c);
    }
  return HermitianOperator(std::move(out), m.dims());
}

HermitianOperator apply_dephasing(const HermitianOperator& m, double dephasing) {
  check_dephasing(dephasing);
  const auto& in = single_mode(m);
  const int d = m.dim();
  ComplexMatrix out(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) out(r, c) = dephasing_factor(r, c, dephasing) * in(r, c);
  return HermitianOperator(std::move(out), m.dims());
}

HermitianOperator apply_loss_dephasing(const HermitianOperator& m, double transmissivity,
                                       double dephasing) {
  check_transmissivity(transmissivity);
  check_dephasing(dephasing);
  const auto& in = single_mode(m);
  const int d = m.dim();
  const double loss = 1.0 - transmissivity;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      if (in(r, c) == 0.0) continue;
      Complex x = dephasing_factor(r, c, dephasing) * in(r, c);
      for (int ell = 0; ell <= std::min(r, c); ++ell)
        out(r - ell, c - ell) += paired_weight(r, c, ell, loss) * x;
    }
  return HermitianOperator(std::move(out), m.dims());
}

FrameOperator apply_complementary(const HermitianOperator& m, double transmissivity,
                                  double dephasing) {
  check_transmissivity(transmissivity);
  check_dephasing(dephasing);
  const auto& in = single_mode(m);
  const int d = m.dim();
  FrameOperator out{GramFrame::complementary_output(d, dephasing), ComplexMatrix()};
  const int nf = out.frame.size();
  out.coefficients = ComplexMatrix::Zero(nf, nf);
  // Label (ell, n) sits at n(n+1)/2 + ell.
  auto slot = [](int ell, int n) { return n * (n + 1) / 2 + ell; };
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      if (in(r, c) == 0.0) continue;
      double sign = ((r - c) % 2 == 0) ? 1.0 : -1.0;
      for (int j = 0; j <= std::min(r, c); ++j)
        out.coefficients(slot(r - j, r), slot(c - j, c)) +=
            sign * paired_weight(r, c, j, transmissivity) * in(r, c);
    }
  return out;
}

std::vector<BeamSplitterAmplitude> beam_splitter_fock(int n, double transmissivity) {
  check_transmissivity(transmissivity);
  if (n < 0) throw std::domain_error("photon number must be >= 0");
  std::vector<BeamSplitterAmplitude> out;
  for (int ell = 0; ell <= n; ++ell) {
    double w = binom_weight(n, ell, 1.0 - transmissivity);
    if (w == 0.0) continue;
    double sign = (ell % 2 == 0) ? 1.0 : -1.0;
    out.push_back({n - ell, ell, sign * std::sqrt(w)});
  }
  return out;
}

std::vector<BeamSplitterAmplitude> beam_splitter_fock_from_environment(int n,
                                                                       double transmissivity) {
  check_transmissivity(transmissivity);
  if (n < 0) throw std::domain_error("photon number must be >= 0");
  std::vector<BeamSplitterAmplitude> out;
  for (int ell = 0; ell <= n; ++ell) {
    double w = binom_weight(n, ell, 1.0 - transmissivity);
    if (w == 0.0) continue;
    out.push_back({ell, n - ell, std::sqrt(w)});
  }
  return out;
}

HermitianOperator qudit_choi(double transmissivity, double dephasing, int d) {
  check_transmissivity(transmissivity);
  check_dephasing(dephasing);
  if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2");
  const double loss = 1.0 - transmissivity;
  ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) {
      double deph = dephasing_factor(m, n, dephasing) / d;
      for (int ell = 0; ell <= std::min(m, n); ++ell)
        out(m * d + (m - ell), n * d + (n - ell)) = deph * paired_weight(m, n, ell, loss);
    }
  return HermitianOperator(std::move(out), {d, d});
}

HermitianOperator qubit_choi(double transmissivity, double dephasing) {
  check_transmissivity(transmissivity);
  check_dephasing(dephasing);
  const double lam = transmissivity;
  const double coh = std::sqrt(std::exp(-dephasing) * lam);
  ComplexMatrix c = ComplexMatrix::Zero(4, 4);
  c(0, 0) = 1.0;
  c(0, 3) = coh;
  c(3, 0) = coh;
  c(2, 2) = 1.0 - lam;
  c(3, 3) = lam;
  return HermitianOperator(0.5 * c, {2, 2});
}

TruncatedState generalized_choi(const ChannelParams& params, double squeezing) {
  params.validate();
  if (!(squeezing > 0.0) || !std::isfinite(squeezing)) throw std::domain_error("squeezing must be > 0");
  const int d = params.cutoff;
  const double t = std::tanh(squeezing);
  const double norm = 1.0 / (std::cosh(squeezing) * std::cosh(squeezing));
  const double loss = 1.0 - params.transmissivity;
  ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) {
      double pre = norm * std::pow(t, m + n) * dephasing_factor(m, n, params.dephasing);
      for (int ell = 0; ell <= std::min(m, n); ++ell)
        out(m * d + (m - ell), n * d + (n - ell)) = pre * paired_weight(m, n, ell, loss);
    }
  HermitianOperator state(std::move(out), {d, d});
  double dev = std::abs(1.0 - state.trace().real());
  return {std::move(state), dev};
}

}  // namespace lossdeph
