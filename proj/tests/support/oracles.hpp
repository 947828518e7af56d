#pragma once

// Reference constructions built from first principles (explicit unitaries,
// Stinespring dilations, brute-force index loops). They share no code with the
// library beyond its container types.

#include <random>
#include <vector>

#include "lossdeph/channels.hpp"
#include "lossdeph/fock_core.hpp"

namespace oracle {

using lossdeph::ComplexMatrix;
using lossdeph::RealMatrix;

// Pascal's triangle, exact in double up to n = 60.
double binomial(int n, int k);
double binom_weight(int n, int ell, double q);

// exp(theta (a_S^dag a_E - a_S a_E^dag)) with cos(theta) = sqrt(transmissivity),
// on S (x) E truncated at dim per mode; S is the slow index. With
// positive_phase = false the generator sign flips, giving |1,0> -> sqrt(l)|1,0> - sqrt(1-l)|0,1>.
ComplexMatrix beam_splitter_unitary(int dim, double transmissivity, bool positive_phase);

// Real-amplitude coherent state |alpha> in a Fock space of dimension dim.
lossdeph::RealVector coherent_state(double alpha, int dim);
// Fock dimension holding |alpha> up to tail mass below 1e-30.
int coherent_dim(double alpha);

// Isometry S -> S (x) E1 (x) E2: dephasing writes |sqrt(gamma) m> into E2, then
// loss mixes S with the vacuum of E1 through the minus-phase beam splitter.
struct Dilation {
  ComplexMatrix isometry;  // (cutoff * cutoff * e2_dim) x cutoff
  int cutoff;
  int e2_dim;
};
Dilation loss_dephasing_dilation(double transmissivity, double dephasing, int cutoff);

// Tr_{E1 E2} V M V^dag and Tr_S V M V^dag.
ComplexMatrix channel_output(const Dilation& v, const ComplexMatrix& m);
ComplexMatrix complementary_output(const Dilation& v, const ComplexMatrix& m);

// Frame operator written out on E1 (x) E2 with explicit coherent states.
ComplexMatrix embed_frame(const lossdeph::FrameOperator& op, int e1_dim, int e2_dim);

// Dephasing as a Gaussian phase average, integrated by Gauss-Hermite quadrature.
ComplexMatrix dephase_by_quadrature(const ComplexMatrix& m, double dephasing, int nodes = 80);

// (1/d) sum |m><n| (x) N(|m><n|) through the dilation.
ComplexMatrix choi_by_dilation(double transmissivity, double dephasing, int d);

long double theta(long double x, long double y, int terms = 400);

// Hadamard multiplier entries summed directly in long double.
long double multiplier_entry(double transmissivity, double dephasing, int m, int n);

// Beam splitters, controlled-add-add isometry, trace over C, then the Hadamard
// maps on B1 and B2. Every mode truncated at dim; order A B1 B2.
ComplexMatrix circuit_two_extension(double transmissivity, double dephasing, double squeezing,
                                    int dim);

// Two-mode squeezed vacuum through the dilation, same truncation as above.
ComplexMatrix generalized_choi_by_dilation(double transmissivity, double dephasing,
                                           double squeezing, int dim);

// 27 x 27 qutrit extension spread out from a 7 x 7 block by the B1 <-> B2
// symmetry and zero pattern, divided by 3.
ComplexMatrix qutrit_extension_full(const RealMatrix& block);

// Index-loop partial trace and transpose over subsystems of equal dimension.
ComplexMatrix naive_partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                                  const std::vector<int>& keep);
ComplexMatrix naive_partial_transpose(const ComplexMatrix& rho, const std::vector<int>& dims,
                                      int sub);

ComplexMatrix random_density(int dim, std::mt19937_64& rng, bool real = false);
// Density operator supported on the first `support` levels of a dim-level mode.
ComplexMatrix random_supported_density(int dim, int support, std::mt19937_64& rng);

double max_abs(const ComplexMatrix& m);

}  // namespace oracle
