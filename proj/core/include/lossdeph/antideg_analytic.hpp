#pragma once

#include <string_view>

#include "lossdeph/fock_core.hpp"

namespace lossdeph {

enum class Verdict { AntiDegradable, NotAntiDegradable, Inconclusive };

enum class Criterion {
  LowTransmissivity,   // lambda <= 1/2
  ThetaSeries,         // theta(e^{-gamma/2}, sqrt(lambda/(1-lambda))) <= 3/2
  SimpleBound,
  QubitRestriction,
  HadamardMultiplier,  // finite section of the multiplier matrix is PSD
  None,
};

struct CriterionOutcome {
  Verdict verdict = Verdict::Inconclusive;
  Criterion criterion = Criterion::None;
  // Distance to the criterion's threshold; >= 0 on the satisfied side.
  double margin = 0.0;
};

std::string_view to_string(Verdict v);
std::string_view to_string(Criterion c);

// sum_{n>=0} x^{n^2} y^n for x in [0,1), y >= 0.
double theta(double x, double y, double tol = 1e-15);

// Low-transmissivity region or the theta-series bound.
CriterionOutcome theta_criterion(double transmissivity, double dephasing);
// Largest lambda satisfying theta_criterion; 1/2 when only the low region applies.
double theta_boundary(double dephasing);

bool simple_sufficient_condition(double transmissivity, double dephasing);

// Tr[N(I/2)^2] - Tr[C^2] + 4 sqrt(det C) on the qubit restriction.
double qubit_inequality_gap(double transmissivity, double dephasing);
// 1/(1+e^{-gamma}).
double qubit_threshold(double dephasing);
// NotAntiDegradable when the qubit restriction fails; the closed form and the
// inequality are cross-checked.
CriterionOutcome qubit_restriction_criterion(double transmissivity, double dephasing);
int qubit_choi_rank(double transmissivity, double dephasing);

// d x d multiplier matrix for lambda in (1/2,1), gamma > 0. Entries that
// overflow are +inf.
RealMatrix hadamard_multiplier(double transmissivity, double dephasing, int d);
// -inf when an entry is infinite.
double hadamard_multiplier_min_eigenvalue(double transmissivity, double dephasing, int d);
bool is_diagonally_dominant(const RealMatrix& a, double slack = 1e-12);
CriterionOutcome hadamard_criterion(double transmissivity, double dephasing, int d);

// Largest lambda in (1/2,1) where the d x d multiplier matrix is PSD.
double hadamard_psd_threshold(double dephasing, int d, double tol = 1e-10);

}  // namespace lossdeph
