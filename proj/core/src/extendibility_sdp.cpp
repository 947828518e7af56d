#include "lossdeph/extendibility_sdp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "lossdeph/antideg_analytic.hpp"
#include "lossdeph/channels.hpp"

namespace lossdeph {

namespace {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Problem data for one Choi state; d is the qudit dimension, n = d^3.
template <typename Scalar>
class ExtensionProblem {
 public:
  ExtensionProblem(Mat<Scalar> tau, int d) : tau_(std::move(tau)), d_(d), n_(d * d * d) {
    build_face();
  }

  int face_dimension() const { return static_cast<int>(face_.cols()); }

  Mat<Scalar> initial_point() const {
    Mat<Scalar> x = Mat<Scalar>::Zero(n_, n_);
    embed_b2_identity(tau_ / static_cast<double>(d_), x);
    return x;
  }

  // X -> tau on both marginals; closed-form orthogonal projection.
  Mat<Scalar> project_affine(const Mat<Scalar>& x) const {
    Mat<Scalar> d1 = tau_ - trace_b2(x);
    Mat<Scalar> d2 = tau_ - trace_b1(x);
    Mat<Scalar> e = trace_b(d1);
    Mat<Scalar> y = e / (2.0 * d_);
    Mat<Scalar> out = x;
    embed_b2_identity((d1 - tensor_identity(y)) / static_cast<double>(d_), out);
    embed_b1_identity((d2 - tensor_identity(y)) / static_cast<double>(d_), out);
    return out;
  }

  Mat<Scalar> project_b2_constraint(const Mat<Scalar>& x) const {
    Mat<Scalar> out = x;
    embed_b2_identity((tau_ - trace_b2(x)) / static_cast<double>(d_), out);
    return out;
  }

  Mat<Scalar> project_b1_constraint(const Mat<Scalar>& x) const {
    Mat<Scalar> out = x;
    embed_b1_identity((tau_ - trace_b1(x)) / static_cast<double>(d_), out);
    return out;
  }

  // PSD matrices supported on the face.
  Mat<Scalar> project_cone(const Mat<Scalar>& z) const {
    Mat<Scalar> h = 0.5 * (z + z.adjoint());
    Mat<Scalar> small = face_.adjoint() * h * face_;
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(small);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    Mat<Scalar> v = es.eigenvectors();
    Mat<Scalar> clipped = v * ev.asDiagonal() * v.adjoint();
    return face_ * clipped * face_.adjoint();
  }

  // v = x - P_L(x) is a combination Y1 (x) I + I (x) Y2 of the constraint
  // normals. If <v, P_L(x)> + max(0, -lambda_min(W^* v W)) < 0, every
  // trace-one X >= 0 on the face has <v, X> > <v, l> for all l in L, so the
  // affine set misses the cone. Returns that margin (negative certifies).
  double infeasibility_margin(const Mat<Scalar>& x) const {
    Mat<Scalar> l = project_affine(x);
    Mat<Scalar> v = x - l;
    Mat<Scalar> small = face_.adjoint() * (0.5 * (v + v.adjoint())) * face_;
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(small, Eigen::EigenvaluesOnly);
    double shift = std::max(0.0, -es.eigenvalues()(0));
    double inner = std::real((v.adjoint() * l).trace());
    return inner + shift + 1e-13 * v.norm();
  }

  double violation(const Mat<Scalar>& x) const {
    double v1 = (trace_b2(x) - tau_).cwiseAbs().maxCoeff();
    double v2 = (trace_b1(x) - tau_).cwiseAbs().maxCoeff();
    double vt = std::abs(x.trace() - tau_.trace());
    return std::max({v1, v2, vt});
  }

 private:
  Mat<Scalar> trace_b2(const Mat<Scalar>& x) const {
    const int m = d_ * d_;
    Mat<Scalar> out = Mat<Scalar>::Zero(m, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        for (int t = 0; t < d_; ++t) out(i, j) += x(i * d_ + t, j * d_ + t);
    return out;
  }

  Mat<Scalar> trace_b1(const Mat<Scalar>& x) const {
    const int m = d_ * d_;
    Mat<Scalar> out = Mat<Scalar>::Zero(m, m);
    for (int a2 = 0; a2 < d_; ++a2)
      for (int b2 = 0; b2 < d_; ++b2)
        for (int a1 = 0; a1 < d_; ++a1)
          for (int b1 = 0; b1 < d_; ++b1) {
            Scalar s = 0.0;
            for (int t = 0; t < d_; ++t) s += x((a1 * d_ + t) * d_ + b1, (a2 * d_ + t) * d_ + b2);
            out(a1 * d_ + b1, a2 * d_ + b2) = s;
          }
    return out;
  }

  // Tr_B of an operator on A B.
  Mat<Scalar> trace_b(const Mat<Scalar>& y) const {
    Mat<Scalar> out = Mat<Scalar>::Zero(d_, d_);
    for (int a2 = 0; a2 < d_; ++a2)
      for (int a1 = 0; a1 < d_; ++a1)
        for (int t = 0; t < d_; ++t) out(a1, a2) += y(a1 * d_ + t, a2 * d_ + t);
    return out;
  }

  Mat<Scalar> tensor_identity(const Mat<Scalar>& ya) const {
    const int m = d_ * d_;
    Mat<Scalar> out = Mat<Scalar>::Zero(m, m);
    for (int a2 = 0; a2 < d_; ++a2)
      for (int a1 = 0; a1 < d_; ++a1)
        for (int t = 0; t < d_; ++t) out(a1 * d_ + t, a2 * d_ + t) = ya(a1, a2);
    return out;
  }

  // x += y_{AB1} (x) I_B2
  void embed_b2_identity(const Mat<Scalar>& y, Mat<Scalar>& x) const {
    const int m = d_ * d_;
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        for (int t = 0; t < d_; ++t) x(i * d_ + t, j * d_ + t) += y(i, j);
  }

  // x += y_{AB2} (x) I_B1
  void embed_b1_identity(const Mat<Scalar>& y, Mat<Scalar>& x) const {
    for (int a2 = 0; a2 < d_; ++a2)
      for (int b2 = 0; b2 < d_; ++b2)
        for (int a1 = 0; a1 < d_; ++a1)
          for (int b1 = 0; b1 < d_; ++b1) {
            Scalar v = y(a1 * d_ + b1, a2 * d_ + b2);
            for (int t = 0; t < d_; ++t) x((a1 * d_ + t) * d_ + b1, (a2 * d_ + t) * d_ + b2) += v;
          }
  }

  // Any extension lives in range(P_tau (x) I_B2) intersected with the same
  // range on A B2.
  void build_face() {
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(tau_);
    const auto& ev = es.eigenvalues();
    const double cut = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > cut) ++rank;
    Mat<Scalar> range = es.eigenvectors().rightCols(rank);
    Mat<Scalar> p = range * range.adjoint();
    Mat<Scalar> both = Mat<Scalar>::Zero(n_, n_);
    embed_b2_identity(p, both);
    embed_b1_identity(p, both);
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> fs(both);
    int k = 0;
    for (Eigen::Index i = 0; i < fs.eigenvalues().size(); ++i)
      if (fs.eigenvalues()(i) > 2.0 - 1e-8) ++k;
    face_ = fs.eigenvectors().rightCols(k);
  }

  Mat<Scalar> tau_;
  int d_;
  int n_;
  Mat<Scalar> face_;
};

template <typename Scalar>
HermitianOperator to_operator(const Mat<Scalar>& x, int d) {
  ComplexMatrix c = x.template cast<Complex>();
  return HermitianOperator(std::move(c), {d, d, d});
}

template <typename Scalar>
FeasibilityReport solve(const Mat<Scalar>& tau, int d, const SolverOptions& opt) {
  ExtensionProblem<Scalar> prob(tau, d);
  FeasibilityReport rep;
  rep.face_dimension = prob.face_dimension();
  double best = std::numeric_limits<double>::infinity();
  const int interval = std::max(opt.certificate_interval, 1);

  auto finish = [&](FeasibilityStatus s, int it) {
    rep.status = s;
    rep.iterations = it;
    rep.residual = best;
    return rep;
  };

  // only X = 0 lives on an empty face
  if (prob.face_dimension() == 0) {
    best = prob.violation(Mat<Scalar>::Zero(d * d * d, d * d * d));
    return finish(FeasibilityStatus::Infeasible, 0);
  }

  if (opt.algorithm == SdpAlgorithm::DouglasRachford) {
    Mat<Scalar> z = prob.initial_point();
    for (int it = 1; it <= opt.max_iterations; ++it) {
      Mat<Scalar> x = prob.project_cone(z);
      double v = prob.violation(x);
      best = std::min(best, v);
      if (v <= opt.feasibility_tol) {
        rep.witness = to_operator(x, d);
        return finish(FeasibilityStatus::Feasible, it);
      }
      if (it % interval == 0 && prob.infeasibility_margin(x) < 0.0)
        return finish(FeasibilityStatus::Infeasible, it);
      z += opt.relaxation * (prob.project_affine(2.0 * x - z) - x);
    }
  } else {
    Mat<Scalar> x = prob.initial_point();
    Mat<Scalar> p = Mat<Scalar>::Zero(x.rows(), x.cols());
    for (int it = 1; it <= opt.max_iterations; ++it) {
      Mat<Scalar> y = prob.project_cone(x + p);
      p = x + p - y;
      double v = prob.violation(y);
      best = std::min(best, v);
      if (v <= opt.feasibility_tol) {
        rep.witness = to_operator(y, d);
        return finish(FeasibilityStatus::Feasible, it);
      }
      if (it % interval == 0 && prob.infeasibility_margin(y) < 0.0)
        return finish(FeasibilityStatus::Infeasible, it);
      x = prob.project_b1_constraint(prob.project_b2_constraint(y));
    }
  }
  return finish(FeasibilityStatus::Undecided, opt.max_iterations);
}

}  // namespace

std::string_view to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible: return "Feasible";
    case FeasibilityStatus::Infeasible: return "Infeasible";
    case FeasibilityStatus::Undecided: return "Undecided";
  }
  return "Undecided";
}

bool ExtensionCheck::valid(double feasibility_tol) const {
  return min_eigenvalue >= -kTolPsd && marginal_ab1_deviation <= feasibility_tol &&
         marginal_ab2_deviation <= feasibility_tol && trace_deviation <= feasibility_tol;
}

ExtensionCheck check_extension(const HermitianOperator& candidate, const HermitianOperator& choi) {
  if (candidate.num_subsystems() != 3) throw std::invalid_argument("extension must be tripartite");
  const std::array<int, 2> keep_ab1{0, 1};
  const std::array<int, 2> keep_ab2{0, 2};
  ExtensionCheck c;
  c.min_eigenvalue = hermitian_spectrum(candidate).min();
  c.marginal_ab1_deviation = partial_trace(candidate, keep_ab1).max_abs_diff(choi);
  c.marginal_ab2_deviation = partial_trace(candidate, keep_ab2).max_abs_diff(choi);
  c.trace_deviation = std::abs(candidate.trace() - choi.trace());
  return c;
}

FeasibilityReport two_extendible(const HermitianOperator& choi, const SolverOptions& options) {
  if (choi.num_subsystems() != 2 || choi.dims()[0] != choi.dims()[1])
    throw std::invalid_argument("two-extendibility needs a Choi state on dims {d,d}");
  if (!(options.feasibility_tol > 0.0) || options.max_iterations < 1)
    throw std::invalid_argument("solver tolerance and iteration budget must be positive");
  if (choi.hermiticity_deviation() > 1e-12) throw std::invalid_argument("Choi state must be Hermitian");
  const int d = choi.dims()[0];

  FeasibilityReport rep = choi.is_real()
                              ? solve<double>(choi.matrix().real(), d, options)
                              : solve<Complex>(choi.matrix(), d, options);
  if (rep.status == FeasibilityStatus::Feasible &&
      !check_extension(*rep.witness, choi).valid(options.feasibility_tol)) {
    rep.status = FeasibilityStatus::Undecided;
    rep.witness.reset();
  }
  return rep;
}

ThresholdResult qudit_extendibility_threshold(double dephasing, int d, double tol,
                                              const SolverOptions& options,
                                              const ExtendibilityOracle& oracle) {
  if (!(dephasing >= 0.0) || !std::isfinite(dephasing)) throw std::domain_error("dephasing must be >= 0");
  if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");

  ThresholdResult res;
  double lo = 0.5;
  double hi = qubit_threshold(dephasing);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    auto choi = qudit_choi(mid, dephasing, d);
    auto rep = oracle(choi, options);
    ++res.oracle_calls;
    if (rep.status == FeasibilityStatus::Undecided) {
      SolverOptions wider = options;
      wider.feasibility_tol *= 10.0;
      rep = oracle(choi, wider);
      ++res.oracle_calls;
      ++res.widened_points;
      if (rep.status == FeasibilityStatus::Undecided)
        throw SolverUndecided("two-extendibility undecided at lambda=" + std::to_string(mid) +
                                  " after widening; residual=" + std::to_string(rep.residual),
                              mid, rep.residual);
    }
    if (rep.status == FeasibilityStatus::Feasible) {
      res.max_residual = std::max(res.max_residual, rep.residual);
      lo = mid;
    } else {
      hi = mid;
    }
  }
  res.threshold = 0.5 * (lo + hi);
  return res;
}

}  // namespace lossdeph
