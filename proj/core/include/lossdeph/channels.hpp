#pragma once

#include <vector>

#include "lossdeph/fock_core.hpp"

namespace lossdeph {

struct ChannelParams {
  double transmissivity = 0.0;  // in [0,1]
  double dephasing = 0.0;       // >= 0
  int cutoff = 1;

  void validate() const;
};

// Operator on E1 (x) E2 written in the frame |ell>|sqrt(gamma) n>.
// coefficients(i, j) multiplies |v_i><v_j|.
struct FrameOperator {
  GramFrame frame;
  ComplexMatrix coefficients;

  Complex trace() const;
  Complex coefficient(FrameLabel row, FrameLabel col) const;
};

struct BeamSplitterAmplitude {
  int system_photons;
  int environment_photons;
  double amplitude;
};

// Single-mode channels act on the operator's only subsystem; the cutoff is its
// dimension.
HermitianOperator apply_pure_loss(const HermitianOperator& m, double transmissivity);
HermitianOperator apply_dephasing(const HermitianOperator& m, double dephasing);
HermitianOperator apply_loss_dephasing(const HermitianOperator& m, double transmissivity,
                                       double dephasing);

FrameOperator apply_complementary(const HermitianOperator& m, double transmissivity,
                                  double dephasing);

// U|n>_S|0>_E, carrying the (-1)^ell phase.
std::vector<BeamSplitterAmplitude> beam_splitter_fock(int n, double transmissivity);
// U|0>_S|n>_E.
std::vector<BeamSplitterAmplitude> beam_splitter_fock_from_environment(int n,
                                                                       double transmissivity);

// (1/d) sum |m><n| (x) N(|m><n|), dims {d, d}.
HermitianOperator qudit_choi(double transmissivity, double dephasing, int d);
HermitianOperator qubit_choi(double transmissivity, double dephasing);

struct TruncatedState {
  HermitianOperator state;
  double trace_deviation;  // |1 - Tr|
};

// Two-mode squeezed vacuum through the channel on B, dims {cutoff, cutoff}.
TruncatedState generalized_choi(const ChannelParams& params, double squeezing);

}  // namespace lossdeph
