#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "lossdeph/fock_core.hpp"

namespace lossdeph {

enum class FeasibilityStatus { Feasible, Infeasible, Undecided };
enum class SdpAlgorithm { DouglasRachford, Dykstra };

std::string_view to_string(FeasibilityStatus s);

struct SolverOptions {
  double feasibility_tol = 1e-7;
  int max_iterations = 50'000;
  // Iterations between infeasibility-certificate checks.
  int certificate_interval = 10;
  SdpAlgorithm algorithm = SdpAlgorithm::DouglasRachford;
  // Step multiplier of the Douglas-Rachford update, in (0,2).
  double relaxation = 1.6;
};

struct FeasibilityReport {
  FeasibilityStatus status = FeasibilityStatus::Undecided;
  double residual = 0.0;  // max constraint deviation of the best iterate
  int iterations = 0;
  int face_dimension = 0;
  std::optional<HermitianOperator> witness;  // dims {d,d,d}
};

using ExtendibilityOracle =
    std::function<FeasibilityReport(const HermitianOperator& choi, const SolverOptions& options)>;

// Searches X >= 0 on A B1 B2 with Tr_B2 X = Tr_B1 X = choi. Iterates are kept
// on the face of the PSD cone allowed by the support of choi. Infeasible is
// reported only with a separating certificate; Undecided at max_iterations.
FeasibilityReport two_extendible(const HermitianOperator& choi, const SolverOptions& options = {});

struct ExtensionCheck {
  double min_eigenvalue = 0.0;
  double marginal_ab1_deviation = 0.0;
  double marginal_ab2_deviation = 0.0;
  double trace_deviation = 0.0;

  bool valid(double feasibility_tol) const;
};

ExtensionCheck check_extension(const HermitianOperator& candidate, const HermitianOperator& choi);

class SolverUndecided : public std::runtime_error {
 public:
  SolverUndecided(const std::string& what, double transmissivity, double residual)
      : std::runtime_error(what), transmissivity(transmissivity), residual(residual) {}
  double transmissivity;
  double residual;
};

struct ThresholdResult {
  double threshold = 0.0;
  int oracle_calls = 0;
  int widened_points = 0;  // bisection points retried with a looser tolerance
  double max_residual = 0.0;  // over Feasible verdicts
};

// Largest lambda whose qudit restriction is two-extendible, by bisection over
// [1/2, 1/(1+e^{-gamma})]. Throws SolverUndecided when a point stays undecided
// after one widening of the feasibility tolerance.
ThresholdResult qudit_extendibility_threshold(double dephasing, int d, double tol = 1e-3,
                                              const SolverOptions& options = {},
                                              const ExtendibilityOracle& oracle = two_extendible);

}  // namespace lossdeph
