#pragma once

#include <stdexcept>

#include "lossdeph/channels.hpp"

namespace lossdeph {

class OutsideProvenRegion : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Anti-degrading map for lambda <= 1/2: trace out E2, apply the parity
// flip, then pure loss with transmissivity lambda/(1-lambda). The output
// cutoff is one past the largest coherent index in the frame.
HermitianOperator antidegrade_low_transmissivity(const FrameOperator& env, double transmissivity);

// Multiplier-weighted map used above lambda = 1/2, extended linearly over
// frame coefficients.
HermitianOperator antidegrade_hadamard(const FrameOperator& env, double transmissivity,
                                       double dephasing);

// max over generators |m><n|, m,n < cutoff, of |A(N^c(|m><n|)) - N(|m><n|)|.
// Throws OutsideProvenRegion where neither map is known to apply.
double verify_antidegrading(const ChannelParams& params);

// Entry |i><j| of the given subsystem is multiplied by multiplier(i, j).
HermitianOperator apply_hadamard(const HermitianOperator& rho, const RealMatrix& multiplier,
                                 int subsystem);

struct ExtensionReport {
  HermitianOperator state;  // dims {cutoff, cutoff, cutoff}, order A B1 B2
  double marginal_ab1_deviation = 0.0;  // |Tr_B2 rho - tau|_max
  double marginal_ab2_deviation = 0.0;  // |Tr_B1 rho - tau|_max
  double min_eigenvalue = 0.0;
  double trace_deviation = 0.0;

  bool physical() const { return min_eigenvalue >= -kTolPsd; }
};

// Two-extension of the generalized Choi state built in closed form.
ExtensionReport build_two_extension(const ChannelParams& params, double squeezing);

// 7 x 7 block of the qutrit extension in basis 000,110,111,211,220,221,222.
RealMatrix qutrit_extension_block(double transmissivity);
double qutrit_extension_min_eigenvalue(double transmissivity);

}  // namespace lossdeph
