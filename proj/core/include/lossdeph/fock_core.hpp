#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace lossdeph {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Eigenvalues above -kTolPsd count as nonnegative.
inline constexpr double kTolPsd = 1e-9;

class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Dense operator on a tensor product of truncated modes. The leftmost
// subsystem is the slowest-varying index. Hermiticity is checked on demand,
// so Fock generators |m><n| are representable too.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  HermitianOperator(ComplexMatrix data, std::vector<int> dims);
  explicit HermitianOperator(ComplexMatrix data);

  static HermitianOperator zero(std::vector<int> dims);
  // |row><col| on a single mode of dimension dim.
  static HermitianOperator fock_unit(int dim, int row, int col);

  const ComplexMatrix& matrix() const { return data_; }
  ComplexMatrix& matrix() { return data_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(data_.rows()); }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }

  Complex trace() const { return data_.trace(); }
  double hermiticity_deviation() const;
  // Largest entrywise modulus of (this - other); dims must agree.
  double max_abs_diff(const HermitianOperator& other) const;
  bool is_real(double tol = 0.0) const;

  HermitianOperator& operator+=(const HermitianOperator& other);
  HermitianOperator& operator-=(const HermitianOperator& other);
  HermitianOperator& operator*=(Complex s);

 private:
  ComplexMatrix data_;
  std::vector<int> dims_;
};

HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b);
HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b);
HermitianOperator operator*(Complex s, HermitianOperator a);

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending

  double min() const;
  double max() const;
  double sum() const;
};

struct Eigendecomposition {
  RealVector eigenvalues;  // ascending
  ComplexMatrix eigenvectors;
};

// C(n, ell) q^ell (1-q)^(n-ell) in log space; 0^0 = 1.
double binom_weight(int n, int ell, double q);
// log of the same weight, -inf where it vanishes.
double log_binom_weight(int n, int ell, double q);
double log_binomial(int n, int k);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

// Keeps the listed subsystems (ascending, distinct) and traces out the rest.
HermitianOperator partial_trace(const HermitianOperator& rho, std::span<const int> keep);
HermitianOperator partial_transpose(const HermitianOperator& rho, int subsystem);
// New subsystem j is old subsystem perm[j].
HermitianOperator permute_subsystems(const HermitianOperator& rho, std::span<const int> perm);

// Both throw std::invalid_argument when |M - M^dag| exceeds 1e-10 of the largest entry.
Spectrum hermitian_spectrum(const HermitianOperator& rho);
Eigendecomposition hermitian_eigen(const HermitianOperator& rho);
double min_eigenvalue(const RealMatrix& symmetric);

// Minimum eigenvalue found by splitting the operator into the connected
// components of its nonzero pattern and diagonalising each one.
double blockwise_min_eigenvalue(const HermitianOperator& rho, double zero_tol = 0.0);

// Entropy in bits; eigenvalues below tol are dropped, below -tol rejected.
double entropy_of_spectrum(std::span<const double> eigenvalues, double tol = kTolPsd);
double von_neumann_entropy(const HermitianOperator& rho, double tol = kTolPsd);

// Frame vector |ell>_E1 (x) |sqrt(gamma) n>_E2.
struct FrameLabel {
  int photons = 0;
  int coherent_index = 0;

  friend bool operator==(const FrameLabel&, const FrameLabel&) = default;
};

class GramFrame {
 public:
  GramFrame(std::vector<FrameLabel> labels, double dephasing);

  // All labels (ell, n) with ell <= n < cutoff, ordered by n then ell.
  static GramFrame complementary_output(int cutoff, double dephasing);

  const std::vector<FrameLabel>& labels() const { return labels_; }
  const RealMatrix& gram() const { return gram_; }
  double dephasing() const { return dephasing_; }
  int size() const { return static_cast<int>(labels_.size()); }
  // Index of a label, or -1.
  int index_of(FrameLabel label) const;

 private:
  std::vector<FrameLabel> labels_;
  double dephasing_;
  RealMatrix gram_;
};

// Nonzero spectrum of sum_i w_i |v_i><v_i| for frame vectors v_i.
Spectrum gram_spectrum(std::span<const double> weights, const GramFrame& frame);

}  // namespace lossdeph
