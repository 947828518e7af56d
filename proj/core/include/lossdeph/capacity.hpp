#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "lossdeph/antideg_analytic.hpp"
#include "lossdeph/extendibility_sdp.hpp"
#include "lossdeph/fock_core.hpp"

namespace lossdeph {

// Positive coherent information counts above this.
inline constexpr double kPositiveCoherentInfo = 1e-6;

// I_c for a Fock-diagonal input with the given photon-number distribution.
double coherent_info_diagonal(double transmissivity, double dephasing,
                              std::span<const double> photon_probs);
// Input p|0><0| + (1-p)|1><1|.
double coherent_info_two_level(double transmissivity, double dephasing, double p);

struct CoherentInfoOptimum {
  double p = 0.0;
  double value = 0.0;
};

// Grid seed then golden-section refinement over p in [0,1].
CoherentInfoOptimum max_coherent_info(double transmissivity, double dephasing, double tol = 1e-10);

// Ns in (0,1). Channel applied to B of sqrt(1-Ns)|00> + sqrt(Ns)|11>.
HermitianOperator ppt_probe_state(double transmissivity, double dephasing, double photon_number);
// Closed-form minimum eigenvalue of the partial transpose on B.
double ppt_min_eigenvalue(double transmissivity, double dephasing, double photon_number);
// Same quantity from a dense eigensolve.
double ppt_min_eigenvalue_dense(double transmissivity, double dephasing, double photon_number);

enum class RegionLabel { Red, CrossedRed, Green, CrossedGreen, Undetermined };
std::string_view to_string(RegionLabel l);

struct ClassifyConfig {
  int multiplier_size = 30;
  double ppt_photon_number = 0.5;
  // 0 disables the SDP overlay.
  int sdp_dimension = 0;
  SolverOptions solver;
};

struct RegionVerdict {
  CriterionOutcome theta;
  bool simple = false;
  CriterionOutcome qubit;
  CriterionOutcome multiplier;  // margin is the min eigenvalue, NaN when undefined
  CoherentInfoOptimum coherent;
  double ppt_min_eigenvalue = 0.0;
  std::optional<FeasibilityStatus> sdp;

  bool red = false;            // theta criterion
  bool crossed_red = false;    // finite multiplier PSD
  bool green = false;          // qubit restriction fails or SDP infeasible
  bool crossed_green = false;  // positive coherent information

  bool anti_degradable() const { return red || crossed_red; }
  bool not_anti_degradable() const { return green || crossed_green; }
  RegionLabel label() const;
};

// Throws InconsistencyError if analytic inclusions contradict exclusions.
RegionVerdict classify_point(double transmissivity, double dephasing, const ClassifyConfig& config = {});

}  // namespace lossdeph
