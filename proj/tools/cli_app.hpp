#pragma once

#include <atomic>
#include <exception>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lossdeph/capacity.hpp"

namespace lossdeph::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailure = 2, kSolverUndecided = 3 };

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// 12 significant digits; nan and +-inf spelled out.
std::string format_number(double x);
void write_csv(const Table& table, std::ostream& out);
std::vector<double> linspace(double lo, double hi, int steps);
double dephasing_from_visibility(double e_minus_gamma);

// key = value lines; '#' starts a comment.
std::map<std::string, std::string> read_flat_config(const std::string& path);

// Results ordered by index regardless of worker count. The first exception by
// index is rethrown.
template <typename F>
auto parallel_map(int count, int workers, F&& fn) -> std::vector<decltype(fn(0))> {
  using T = decltype(fn(0));
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < std::min(std::max(workers, 1), count); ++t) pool.emplace_back(work);
    work();
  }
  std::vector<T> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

struct GridSpec {
  double lambda_min = 0.01;
  double lambda_max = 0.99;
  int lambda_steps = 60;
  double visibility_min = 0.01;  // e^{-gamma}
  double visibility_max = 0.99;
  int gamma_steps = 60;

  void validate() const;
};

struct ScanRegionOptions {
  GridSpec grid;
  ClassifyConfig classify;
  int workers = 1;
};

struct CurveOptions {
  double visibility_min = 0.05;
  double visibility_max = 0.95;
  int gamma_steps = 15;
  std::vector<int> dims;
  double bisection_tol = 1e-3;
  SolverOptions solver;
  int workers = 1;

  void validate() const;
};

struct CurveResult {
  Table table;
  int undecided = 0;
};

Table scan_region(const ScanRegionOptions& options);
Table eta_curve(const CurveOptions& options);
CurveResult lambda_curve(const CurveOptions& options);

struct VerifyResult {
  std::string json;
  bool passed = false;
};

VerifyResult verify_point(double transmissivity, double dephasing, int cutoff, double squeezing);

// Whole command line without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lossdeph::cli
