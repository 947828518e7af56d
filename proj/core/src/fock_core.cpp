#include "lossdeph/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace lossdeph {

namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

void check_dims(const ComplexMatrix& data, const std::vector<int>& dims) {
  if (data.rows() != data.cols())
    throw std::invalid_argument("operator matrix must be square");
  for (int d : dims)
    if (d <= 0) throw std::invalid_argument("subsystem dimensions must be positive");
  if (product(dims) != data.rows())
    throw std::invalid_argument("subsystem dimensions do not match matrix size");
}

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    strides[k] = strides[k + 1] * dims[k + 1];
  return strides;
}

// digits[k] of flat index i.
std::vector<int> digits_of(int i, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[k] = i % dims[k];
    i /= dims[k];
  }
  return out;
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix data, std::vector<int> dims)
    : data_(std::move(data)), dims_(std::move(dims)) {
  check_dims(data_, dims_);
}

HermitianOperator::HermitianOperator(ComplexMatrix data) : data_(std::move(data)) {
  dims_ = {static_cast<int>(data_.rows())};
  check_dims(data_, dims_);
}

HermitianOperator HermitianOperator::zero(std::vector<int> dims) {
  int n = product(dims);
  return HermitianOperator(ComplexMatrix::Zero(n, n), std::move(dims));
}

HermitianOperator HermitianOperator::fock_unit(int dim, int row, int col) {
  if (row < 0 || col < 0 || row >= dim || col >= dim)
    throw std::out_of_range("Fock index outside cutoff");
  auto op = zero({dim});
  op.data_(row, col) = 1.0;
  return op;
}

double HermitianOperator::hermiticity_deviation() const {
  if (data_.size() == 0) return 0.0;
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

double HermitianOperator::max_abs_diff(const HermitianOperator& other) const {
  if (dims_ != other.dims_) throw std::invalid_argument("dimension mismatch");
  if (data_.size() == 0) return 0.0;
  return (data_ - other.data_).cwiseAbs().maxCoeff();
}

bool HermitianOperator::is_real(double tol) const {
  return data_.size() == 0 || data_.imag().cwiseAbs().maxCoeff() <= tol;
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& other) {
  if (dims_ != other.dims_) throw std::invalid_argument("dimension mismatch");
  data_ += other.data_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& other) {
  if (dims_ != other.dims_) throw std::invalid_argument("dimension mismatch");
  data_ -= other.data_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(Complex s) {
  data_ *= s;
  return *this;
}

HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
HermitianOperator operator*(Complex s, HermitianOperator a) { return a *= s; }

double Spectrum::min() const {
  if (eigenvalues.empty()) throw std::logic_error("empty spectrum");
  return eigenvalues.front();
}

double Spectrum::max() const {
  if (eigenvalues.empty()) throw std::logic_error("empty spectrum");
  return eigenvalues.back();
}

double Spectrum::sum() const {
  return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  k = std::min(k, n - k);
  if (n <= 1000) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return std::log(c);
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_binom_weight(int n, int ell, double q) {
  if (n < 0 || ell < 0 || ell > n)
    throw std::domain_error("binomial weight needs 0 <= ell <= n");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("binomial weight needs q in [0,1]");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double out = log_binomial(n, ell);
  if (ell > 0) {
    if (q == 0.0) return kNegInf;
    out += ell * std::log(q);
  }
  if (n - ell > 0) {
    if (q == 1.0) return kNegInf;
    out += (n - ell) * std::log1p(-q);
  }
  return out;
}

double binom_weight(int n, int ell, double q) { return std::exp(log_binom_weight(n, ell, q)); }

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  const auto& ma = a.matrix();
  const auto& mb = b.matrix();
  ComplexMatrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index i = 0; i < ma.rows(); ++i)
    for (Eigen::Index j = 0; j < ma.cols(); ++j)
      out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
  auto dims = a.dims();
  const auto& db = b.dims();
  dims.insert(dims.end(), db.begin(), db.end());
  return HermitianOperator(std::move(out), std::move(dims));
}

HermitianOperator partial_trace(const HermitianOperator& rho, std::span<const int> keep) {
  const auto& dims = rho.dims();
  const int nsub = rho.num_subsystems();
  std::vector<bool> kept(nsub, false);
  int prev = -1;
  for (int k : keep) {
    if (k <= prev || k >= nsub) throw std::invalid_argument("keep list must be ascending and in range");
    kept[k] = true;
    prev = k;
  }
  std::vector<int> kept_dims;
  for (int k = 0; k < nsub; ++k)
    if (kept[k]) kept_dims.push_back(dims[k]);

  const int n = rho.dim();
  std::vector<int> kept_index(n), traced_index(n);
  for (int i = 0; i < n; ++i) {
    auto dig = digits_of(i, dims);
    int ki = 0, ti = 0;
    for (int k = 0; k < nsub; ++k) {
      if (kept[k]) ki = ki * dims[k] + dig[k];
      else ti = ti * dims[k] + dig[k];
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }
  int nk = product(kept_dims);
  ComplexMatrix out = ComplexMatrix::Zero(nk, nk);
  const auto& m = rho.matrix();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
  return HermitianOperator(std::move(out), std::move(kept_dims));
}

HermitianOperator partial_transpose(const HermitianOperator& rho, int subsystem) {
  const auto& dims = rho.dims();
  if (subsystem < 0 || subsystem >= rho.num_subsystems())
    throw std::out_of_range("subsystem index out of range");
  const int stride = strides_of(dims)[subsystem];
  const int d = dims[subsystem];
  const int n = rho.dim();
  std::vector<int> digit(n);
  for (int i = 0; i < n; ++i) digit[i] = (i / stride) % d;
  ComplexMatrix out(n, n);
  const auto& m = rho.matrix();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int shift = (digit[j] - digit[i]) * stride;
      out(i + shift, j - shift) = m(i, j);
    }
  return HermitianOperator(std::move(out), dims);
}

HermitianOperator permute_subsystems(const HermitianOperator& rho, std::span<const int> perm) {
  const auto& dims = rho.dims();
  const int nsub = rho.num_subsystems();
  if (static_cast<int>(perm.size()) != nsub) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> new_dims(nsub);
  std::vector<bool> seen(nsub, false);
  for (int j = 0; j < nsub; ++j) {
    if (perm[j] < 0 || perm[j] >= nsub || seen[perm[j]]) throw std::invalid_argument("not a permutation");
    seen[perm[j]] = true;
    new_dims[j] = dims[perm[j]];
  }
  const int n = rho.dim();
  std::vector<int> target(n);
  for (int i = 0; i < n; ++i) {
    auto dig = digits_of(i, dims);
    int t = 0;
    for (int j = 0; j < nsub; ++j) t = t * new_dims[j] + dig[perm[j]];
    target[i] = t;
  }
  ComplexMatrix out(n, n);
  const auto& m = rho.matrix();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out(target[i], target[j]) = m(i, j);
  return HermitianOperator(std::move(out), std::move(new_dims));
}

namespace {

void require_hermitian(const HermitianOperator& rho) {
  const double scale = rho.dim() == 0 ? 0.0 : rho.matrix().cwiseAbs().maxCoeff();
  if (rho.hermiticity_deviation() > 1e-10 * std::max(scale, 1e-300))
    throw std::invalid_argument("operator is not Hermitian within tolerance");
}

}  // namespace

Eigendecomposition hermitian_eigen(const HermitianOperator& rho) {
  require_hermitian(rho);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum hermitian_spectrum(const HermitianOperator& rho) {
  require_hermitian(rho);
  RealVector values;
  if (rho.is_real()) {
    RealMatrix re = rho.matrix().real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(re, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    values = solver.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    values = solver.eigenvalues();
  }
  return {std::vector<double>(values.data(), values.data() + values.size())};
}

double min_eigenvalue(const RealMatrix& symmetric) {
  if (!symmetric.allFinite()) return -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return solver.eigenvalues()(0);
}

double blockwise_min_eigenvalue(const HermitianOperator& rho, double zero_tol) {
  const auto& m = rho.matrix();
  const int n = rho.dim();
  DisjointSets sets(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (std::abs(m(i, j)) > zero_tol || std::abs(m(j, i)) > zero_tol) sets.unite(i, j);
  std::vector<std::vector<int>> blocks(n);
  for (int i = 0; i < n; ++i) blocks[sets.find(i)].push_back(i);

  double best = std::numeric_limits<double>::infinity();
  for (const auto& idx : blocks) {
    if (idx.empty()) continue;
    const int k = static_cast<int>(idx.size());
    ComplexMatrix sub(k, k);
    for (int b = 0; b < k; ++b)
      for (int a = 0; a < k; ++a) sub(a, b) = m(idx[a], idx[b]);
    best = std::min(best, hermitian_spectrum(HermitianOperator(std::move(sub))).min());
  }
  return best;
}

double entropy_of_spectrum(std::span<const double> eigenvalues, double tol) {
  double s = 0.0;
  for (double p : eigenvalues) {
    if (p < -tol) throw std::domain_error("negative eigenvalue in entropy");
    p = std::min(p, 1.0);
    if (p > tol) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const HermitianOperator& rho, double tol) {
  auto spec = hermitian_spectrum(rho);
  return entropy_of_spectrum(spec.eigenvalues, tol);
}

GramFrame::GramFrame(std::vector<FrameLabel> labels, double dephasing)
    : labels_(std::move(labels)), dephasing_(dephasing) {
  if (!(dephasing >= 0.0)) throw std::domain_error("dephasing must be nonnegative");
  const int n = size();
  gram_ = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (labels_[i].photons == labels_[j].photons) {
        double dn = labels_[i].coherent_index - labels_[j].coherent_index;
        gram_(i, j) = std::exp(-dephasing * dn * dn / 2.0);
      }
}

GramFrame GramFrame::complementary_output(int cutoff, double dephasing) {
  if (cutoff <= 0) throw std::invalid_argument("cutoff must be positive");
  std::vector<FrameLabel> labels;
  for (int n = 0; n < cutoff; ++n)
    for (int ell = 0; ell <= n; ++ell) labels.push_back({ell, n});
  return GramFrame(std::move(labels), dephasing);
}

int GramFrame::index_of(FrameLabel label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

Spectrum gram_spectrum(std::span<const double> weights, const GramFrame& frame) {
  if (static_cast<int>(weights.size()) != frame.size())
    throw std::invalid_argument("one weight per frame vector required");
  RealVector root(frame.size());
  for (int i = 0; i < frame.size(); ++i) {
    if (weights[i] < 0.0) throw std::domain_error("frame weights must be nonnegative");
    root(i) = std::sqrt(weights[i]);
  }
  RealMatrix m = root.asDiagonal() * frame.gram() * root.asDiagonal();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m, Eigen::EigenvaluesOnly);
  const auto& v = solver.eigenvalues();
  return {std::vector<double>(v.data(), v.data() + v.size())};
}

}  // namespace lossdeph
