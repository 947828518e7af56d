#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lossdeph/witnesses.hpp"

namespace lossdeph::cli {

namespace {

using nlohmann::json;

constexpr double kVerifyTol = 1e-6;
constexpr const char* kVersion = "0.1.0";

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void emit_table(const Table& table, const std::string& output, const json& meta, std::ostream& out) {
  if (output.empty()) {
    write_csv(table, out);
    return;
  }
  std::ofstream f(output, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + output);
  write_csv(table, f);
  json m = meta;
  m["rows"] = table.rows.size();
  m["columns"] = table.header;
  m["version"] = kVersion;
  std::ofstream side(output + ".meta.json", std::ios::binary);
  side << m.dump(2) << '\n';
}

void emit_json(const json& j, const std::string& output, std::ostream& out) {
  if (!output.empty()) {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + output);
    f << j.dump(2) << '\n';
  }
  out << j.dump() << '\n';
}

SdpAlgorithm parse_algorithm(const std::string& name) {
  if (name == "dr") return SdpAlgorithm::DouglasRachford;
  if (name == "dykstra") return SdpAlgorithm::Dykstra;
  throw std::invalid_argument("unknown solver algorithm " + name);
}

bool mentions_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Removes --config from args and returns its path.
std::string take_config_path(std::vector<std::string>& args) {
  std::string path;
  for (auto it = args.begin(); it != args.end();) {
    if (*it == "--config") {
      if (std::next(it) == args.end()) throw CLI::ArgumentMismatch("--config needs a path");
      path = *std::next(it);
      it = args.erase(it, it + 2);
    } else if (it->rfind("--config=", 0) == 0) {
      path = it->substr(9);
      it = args.erase(it);
    } else {
      ++it;
    }
  }
  return path;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_csv(const Table& table, std::ostream& out) {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 2) throw std::invalid_argument("grids need at least 2 steps");
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i) v[i] = lo + (hi - lo) * i / (steps - 1);
  v.back() = hi;
  return v;
}

double dephasing_from_visibility(double e_minus_gamma) {
  if (!(e_minus_gamma > 0.0 && e_minus_gamma <= 1.0)) throw std::domain_error("e^{-gamma} must lie in (0,1]");
  return std::max(0.0, -std::log(e_minus_gamma));
}

std::map<std::string, std::string> read_flat_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file " + path);
  std::map<std::string, std::string> out;
  std::string raw;
  int lineno = 0;
  while (std::getline(f, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(s.substr(eq + 1));
  }
  return out;
}

void GridSpec::validate() const {
  if (lambda_steps < 2 || gamma_steps < 2) throw std::invalid_argument("grid steps must be >= 2");
  if (!(0.0 <= lambda_min && lambda_min <= lambda_max && lambda_max <= 1.0))
    throw std::domain_error("lambda range must lie within [0,1]");
  if (!(0.0 < visibility_min && visibility_min <= visibility_max && visibility_max <= 1.0))
    throw std::domain_error("e^{-gamma} range must lie within (0,1]");
}

void CurveOptions::validate() const {
  if (gamma_steps < 2) throw std::invalid_argument("grid steps must be >= 2");
  if (!(0.0 < visibility_min && visibility_min <= visibility_max && visibility_max <= 1.0))
    throw std::domain_error("e^{-gamma} range must lie within (0,1]");
  if (dims.empty()) throw std::invalid_argument("at least one dimension is required");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("dimensions must be >= 2");
  if (!(bisection_tol > 0.0) || !(solver.feasibility_tol > 0.0) || solver.max_iterations < 1)
    throw std::invalid_argument("tolerances must be positive");
}

Table scan_region(const ScanRegionOptions& options) {
  options.grid.validate();
  const auto vis = linspace(options.grid.visibility_min, options.grid.visibility_max, options.grid.gamma_steps);
  const auto lam = linspace(options.grid.lambda_min, options.grid.lambda_max, options.grid.lambda_steps);
  const int nl = static_cast<int>(lam.size());
  const bool with_sdp = options.classify.sdp_dimension >= 2;

  auto rows = parallel_map(static_cast<int>(vis.size()) * nl, options.workers, [&](int idx) {
    const double v = vis[idx / nl];
    const double l = lam[idx % nl];
    const auto r = classify_point(l, dephasing_from_visibility(v), options.classify);
    std::vector<std::string> row{format_number(v),
                                 format_number(l),
                                 std::string(to_string(r.theta.verdict)),
                                 r.simple ? "true" : "false",
                                 std::string(to_string(r.qubit.verdict)),
                                 format_number(r.multiplier.margin),
                                 format_number(r.coherent.value),
                                 format_number(r.coherent.p),
                                 format_number(r.ppt_min_eigenvalue),
                                 std::string(to_string(r.label()))};
    if (with_sdp) row.emplace_back(to_string(*r.sdp));
    return row;
  });

  Table t{{"e_minus_gamma", "lambda", "thm1_verdict", "simple_cond", "qubit_verdict", "A_d_min_eig", "Ic_star",
           "p_star", "ppt_min_eig", "composite_label"},
          std::move(rows)};
  if (with_sdp) t.header.push_back("sdp_status");
  return t;
}

Table eta_curve(const CurveOptions& options) {
  options.validate();
  const auto vis = linspace(options.visibility_min, options.visibility_max, options.gamma_steps);
  const int nd = static_cast<int>(options.dims.size());
  auto rows = parallel_map(static_cast<int>(vis.size()) * nd, options.workers, [&](int idx) {
    const double v = vis[idx / nd];
    const int d = options.dims[idx % nd];
    const double g = dephasing_from_visibility(v);
    const double eta = g > 0.0 ? hadamard_psd_threshold(g, d, options.bisection_tol)
                               : std::numeric_limits<double>::quiet_NaN();
    return std::vector<std::string>{format_number(v), std::to_string(d), format_number(eta),
                                    format_number(theta_boundary(g)), format_number(qubit_threshold(g))};
  });
  return {{"e_minus_gamma", "d", "eta_d", "theta_boundary", "conjecture"}, std::move(rows)};
}

CurveResult lambda_curve(const CurveOptions& options) {
  options.validate();
  const auto vis = linspace(options.visibility_min, options.visibility_max, options.gamma_steps);
  const int nd = static_cast<int>(options.dims.size());
  auto rows = parallel_map(static_cast<int>(vis.size()) * nd, options.workers, [&](int idx) {
    const double v = vis[idx / nd];
    const int d = options.dims[idx % nd];
    const double g = dephasing_from_visibility(v);
    std::vector<std::string> row{format_number(v), std::to_string(d)};
    try {
      auto r = qudit_extendibility_threshold(g, d, options.bisection_tol, options.solver);
      row.insert(row.end(), {format_number(r.threshold), std::to_string(r.oracle_calls),
                             std::to_string(r.widened_points), format_number(r.max_residual),
                             format_number(qubit_threshold(g)), "ok"});
    } catch (const SolverUndecided& e) {
      row.insert(row.end(), {"nan", "", "", format_number(e.residual), format_number(qubit_threshold(g)),
                             "undecided"});
    }
    return row;
  });
  CurveResult res;
  res.table = {{"e_minus_gamma", "d", "lambda_d", "oracle_calls", "widened_points", "max_residual",
                "qubit_boundary", "status"},
               std::move(rows)};
  for (const auto& r : res.table.rows)
    if (r.back() == "undecided") ++res.undecided;
  return res;
}

VerifyResult verify_point(double transmissivity, double dephasing, int cutoff, double squeezing) {
  ChannelParams params{transmissivity, dephasing, cutoff};
  params.validate();
  json j{{"lambda", transmissivity},
         {"gamma", dephasing},
         {"cutoff", cutoff},
         {"squeezing", squeezing},
         {"antideg_map_deviation", nullptr},
         {"extension_pt_deviation_B1", nullptr},
         {"extension_pt_deviation_B2", nullptr},
         {"extension_min_eig", nullptr}};
  VerifyResult res;
  const auto crit = theta_criterion(transmissivity, dephasing);
  if (crit.verdict != Verdict::AntiDegradable) {
    j["region"] = "outside";
    j["passed"] = false;
    j["reason"] = "outside proven anti-degradable region";
    res.json = j.dump();
    return res;
  }
  const bool low = crit.criterion == Criterion::LowTransmissivity;
  j["region"] = low ? "low-transmissivity" : "theta-series";
  const double map_dev = verify_antidegrading(params);
  j["antideg_map_deviation"] = number_or_null(map_dev);
  bool ok = map_dev <= kVerifyTol;
  if (!low) {
    const auto ext = build_two_extension(params, squeezing);
    // B1 and B2 name the traced-out copy.
    j["extension_pt_deviation_B1"] = number_or_null(ext.marginal_ab2_deviation);
    j["extension_pt_deviation_B2"] = number_or_null(ext.marginal_ab1_deviation);
    j["extension_min_eig"] = number_or_null(ext.min_eigenvalue);
    ok = ok && ext.marginal_ab1_deviation <= kVerifyTol && ext.marginal_ab2_deviation <= kVerifyTol &&
         ext.min_eigenvalue >= -kVerifyTol;
  }
  j["passed"] = ok;
  if (!ok) j["reason"] = "deviation above tolerance";
  res.json = j.dump();
  res.passed = ok;
  return res;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  const bool workers_flag = mentions_flag(raw_args, "--workers");

  CLI::App app{"Loss-dephasing channel anti-degradability toolkit", "lossdeph"};
  app.require_subcommand(1);
  std::string config_hint;
  app.add_option("--config", config_hint, "Flat key = value file; flags take precedence");

  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string output;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output", output, "Output path (stdout when omitted)");
  };

  ScanRegionOptions scan;
  auto* scan_cmd = app.add_subcommand("scan-region", "Classify a (lambda, e^-gamma) grid");
  scan_cmd->add_option("--lambda-min", scan.grid.lambda_min);
  scan_cmd->add_option("--lambda-max", scan.grid.lambda_max);
  scan_cmd->add_option("--lambda-steps", scan.grid.lambda_steps);
  scan_cmd->add_option("--emg-min", scan.grid.visibility_min, "Smallest e^-gamma");
  scan_cmd->add_option("--emg-max", scan.grid.visibility_max, "Largest e^-gamma");
  scan_cmd->add_option("--gamma-steps", scan.grid.gamma_steps);
  scan_cmd->add_option("--multiplier-size", scan.classify.multiplier_size, "Size of the multiplier matrix");
  scan_cmd->add_option("--sdp-dim", scan.classify.sdp_dimension, "Qudit dimension of the SDP overlay (0 = off)");
  scan_cmd->add_option("--ppt-ns", scan.classify.ppt_photon_number, "Photon number of the PPT probe");
  scan_cmd->add_option("--eps-feas", scan.classify.solver.feasibility_tol);
  scan_cmd->add_option("--max-iter", scan.classify.solver.max_iterations);
  add_common(scan_cmd);

  CurveOptions eta;
  eta.visibility_min = 0.05;
  eta.visibility_max = 0.95;
  eta.gamma_steps = 20;
  eta.dims = {2, 3, 5, 10, 20, 30};
  eta.bisection_tol = 1e-10;
  auto* eta_cmd = app.add_subcommand("eta-curve", "Multiplier PSD thresholds per dimension");
  eta_cmd->add_option("--emg-min", eta.visibility_min);
  eta_cmd->add_option("--emg-max", eta.visibility_max);
  eta_cmd->add_option("--gamma-steps", eta.gamma_steps);
  eta_cmd->add_option("--dims", eta.dims)->delimiter(',');
  eta_cmd->add_option("--tol", eta.bisection_tol);
  add_common(eta_cmd);

  CurveOptions lam;
  lam.dims = {2, 3};
  std::string algorithm = "dr";
  auto* lam_cmd = app.add_subcommand("lambda-curve", "Two-extendibility thresholds of qudit restrictions");
  lam_cmd->add_option("--emg-min", lam.visibility_min);
  lam_cmd->add_option("--emg-max", lam.visibility_max);
  lam_cmd->add_option("--gamma-steps", lam.gamma_steps);
  lam_cmd->add_option("--dims", lam.dims)->delimiter(',');
  lam_cmd->add_option("--tol", lam.bisection_tol);
  lam_cmd->add_option("--eps-feas", lam.solver.feasibility_tol);
  lam_cmd->add_option("--max-iter", lam.solver.max_iterations);
  lam_cmd->add_option("--algorithm", algorithm, "dr or dykstra");
  add_common(lam_cmd);

  double lambda = 0.0, gamma = 0.0, squeezing = 0.5, ns = 0.5, x = 0.0, y = 0.0;
  int cutoff = 12;
  std::optional<double> p;
  auto* verify_cmd = app.add_subcommand("verify", "Check the anti-degrading map and the two-extension");
  verify_cmd->add_option("--lambda", lambda)->required();
  verify_cmd->add_option("--gamma", gamma)->required();
  verify_cmd->add_option("--cutoff", cutoff);
  verify_cmd->add_option("--squeezing", squeezing);
  verify_cmd->add_option("--output", output);

  auto* ic_cmd = app.add_subcommand("coherent-info", "Two-level coherent information");
  ic_cmd->add_option("--lambda", lambda)->required();
  ic_cmd->add_option("--gamma", gamma)->required();
  ic_cmd->add_option("--p", p, "Weight of |0>; maximised over when omitted");

  auto* ppt_cmd = app.add_subcommand("ppt", "Minimum eigenvalue of the partial transpose");
  ppt_cmd->add_option("--lambda", lambda)->required();
  ppt_cmd->add_option("--gamma", gamma)->required();
  ppt_cmd->add_option("--ns", ns);

  auto* theta_cmd = app.add_subcommand("theta", "Evaluate sum_n x^(n^2) y^n");
  theta_cmd->add_option("--x", x)->required();
  theta_cmd->add_option("--y", y)->required();

  try {
    const std::string config_path = take_config_path(args);
    if (!config_path.empty())
      for (const auto& [key, value] : read_flat_config(config_path))
        if (!mentions_flag(args, "--" + key)) args.push_back("--" + key + "=" + value);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!workers_flag)
    if (const char* env = std::getenv("LDA_WORKERS")) {
      try {
        workers = std::stoi(env);
      } catch (const std::exception&) {
        err << "error: LDA_WORKERS must be an integer\n";
        return kUsage;
      }
      if (workers < 1) {
        err << "error: LDA_WORKERS must be positive\n";
        return kUsage;
      }
    }

  try {
    if (scan_cmd->parsed()) {
      scan.workers = workers;
      auto t = scan_region(scan);
      json meta{{"command", "scan-region"},
                {"lambda", {scan.grid.lambda_min, scan.grid.lambda_max, scan.grid.lambda_steps}},
                {"e_minus_gamma", {scan.grid.visibility_min, scan.grid.visibility_max, scan.grid.gamma_steps}},
                {"multiplier_size", scan.classify.multiplier_size},
                {"sdp_dimension", scan.classify.sdp_dimension},
                {"ppt_photon_number", scan.classify.ppt_photon_number},
                {"workers", workers}};
      emit_table(t, output, meta, out);
      return kOk;
    }
    if (eta_cmd->parsed()) {
      eta.workers = workers;
      auto t = eta_curve(eta);
      json meta{{"command", "eta-curve"},
                {"e_minus_gamma", {eta.visibility_min, eta.visibility_max, eta.gamma_steps}},
                {"dims", eta.dims},
                {"tol", eta.bisection_tol},
                {"workers", workers}};
      emit_table(t, output, meta, out);
      return kOk;
    }
    if (lam_cmd->parsed()) {
      lam.workers = workers;
      lam.solver.algorithm = parse_algorithm(algorithm);
      auto r = lambda_curve(lam);
      json meta{{"command", "lambda-curve"},
                {"e_minus_gamma", {lam.visibility_min, lam.visibility_max, lam.gamma_steps}},
                {"dims", lam.dims},
                {"tol", lam.bisection_tol},
                {"eps_feas", lam.solver.feasibility_tol},
                {"max_iter", lam.solver.max_iterations},
                {"algorithm", algorithm},
                {"undecided", r.undecided},
                {"workers", workers}};
      emit_table(r.table, output, meta, out);
      if (r.undecided > 0) {
        err << "warning: " << r.undecided << " curve point(s) undecided\n";
        return kSolverUndecided;
      }
      return kOk;
    }
    if (verify_cmd->parsed()) {
      auto r = verify_point(lambda, gamma, cutoff, squeezing);
      emit_json(json::parse(r.json), output, out);
      return r.passed ? kOk : kVerificationFailure;
    }
    if (ic_cmd->parsed()) {
      json j{{"lambda", lambda}, {"gamma", gamma}};
      if (p) {
        j["p"] = *p;
        j["coherent_info"] = coherent_info_two_level(lambda, gamma, *p);
      } else {
        auto o = max_coherent_info(lambda, gamma);
        j["p_star"] = o.p;
        j["coherent_info"] = o.value;
      }
      out << j.dump() << '\n';
      return kOk;
    }
    if (ppt_cmd->parsed()) {
      double v = ppt_min_eigenvalue(lambda, gamma, ns);
      json j{{"lambda", lambda}, {"gamma", gamma}, {"ns", ns}, {"ppt_min_eig", v}, {"npt", v < -kTolPsd}};
      out << j.dump() << '\n';
      return kOk;
    }
    if (theta_cmd->parsed()) {
      out << json{{"x", x}, {"y", y}, {"theta", theta(x, y)}}.dump() << '\n';
      return kOk;
    }
  } catch (const InconsistencyError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const SolverUndecided& e) {
    err << "solver undecided: " << e.what() << '\n';
    return kSolverUndecided;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kUsage;
}

}  // namespace lossdeph::cli
