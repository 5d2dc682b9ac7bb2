#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "rains/errors.hpp"
#include "rains/formulas.hpp"
#include "rains/state_io.hpp"
#include "rains/states.hpp"

namespace rains::cli {

namespace {

struct Options {
  std::string state;
  std::string rho;
  std::string sigma;
  std::string out_path;
  std::string experiment;
  std::optional<double> tol;
  std::optional<int> max_iters;
  int precision = 9;
  bool tensor_square = false;
};

std::string num(double v, int precision) { return fmt::format("{:.{}g}", v, precision); }

DensityMatrix load_state(const std::string& path, bool tensor_square) {
  DensityMatrix rho = to_density(read_state_spec(path));
  return tensor_square ? tensor(rho, rho) : rho;
}

OptimizerConfig optimizer_config(const Options& opt) {
  OptimizerConfig cfg;
  if (opt.max_iters) cfg.max_iters = *opt.max_iters;
  if (opt.tol) cfg.grad_map_tol = *opt.tol;
  cfg.validate();
  return cfg;
}

// CSV writer; the header is written only when the file is new or empty.
class CsvFile {
 public:
  CsvFile(const std::string& path, const std::string& header, bool append) {
    const bool fresh = !append || !std::filesystem::exists(path) ||
                       std::filesystem::file_size(path) == 0;
    file_.open(path, append ? std::ios::app : std::ios::trunc);
    if (!file_) throw FormatError(path + ": cannot open for writing");
    if (fresh) file_ << header << '\n';
  }
  void row(const std::string& line) { file_ << line << '\n'; }
  void close() {
    file_.close();
    if (file_.fail()) throw FormatError("failed to write CSV output");
  }

 private:
  std::ofstream file_;
};

int cmd_bound(const Options& opt, std::ostream& out) {
  const DensityMatrix rho = load_state(opt.state, opt.tensor_square);
  const OptimizerConfig cfg = optimizer_config(opt);
  const OptimizerResult res = minimize_rel_entropy(rho, cfg);
  const int p = opt.precision;

  std::vector<std::string> eigs;
  for (double w : eigenvalues_hermitian(res.sigma_opt.matrix())) eigs.push_back(num(w, p));
  out << "state: " << opt.state << (opt.tensor_square ? " (tensor square)" : "") << '\n';
  out << "dims: " << rho.dims().a << "x" << rho.dims().b << '\n';
  out << "bound_bits: " << num(res.bound.value, p) << '\n';
  out << "converged: " << (res.converged ? "true" : "false") << '\n';
  out << "iterations: " << res.iterations << '\n';
  out << "grad_map_norm: " << num(res.final_grad_map_norm, p) << '\n';
  out << "sigma_eigenvalues: " << fmt::format("{}", fmt::join(eigs, " ")) << '\n';
  if (rho.dims().a == rho.dims().b) {
    out << "sigma_fidelity: " << num(fidelity(res.sigma_opt), p) << '\n';
  }

  if (!opt.out_path.empty()) {
    CsvFile csv(opt.out_path, "state,dim_a,dim_b,bound_bits,converged,iterations,grad_map_norm",
                true);
    csv.row(fmt::format("{},{},{},{},{},{},{}", opt.state, rho.dims().a, rho.dims().b,
                        num(res.bound.value, p), res.converged ? 1 : 0, res.iterations,
                        num(res.final_grad_map_norm, p)));
    csv.close();
  }
  return res.converged ? kOk : kNotConverged;
}

int cmd_kkt(const Options& opt, std::ostream& out) {
  const DensityMatrix rho = load_state(opt.rho, opt.tensor_square);
  const DensityMatrix sigma = load_state(opt.sigma, opt.tensor_square);
  if (!(rho.dims() == sigma.dims())) {
    throw DimensionError(fmt::format("rho is {}x{} but sigma is {}x{}", rho.dims().a,
                                     rho.dims().b, sigma.dims().a, sigma.dims().b));
  }
  const double tol = opt.tol.value_or(kCertificateTol);
  const KktReport rep = kkt_check(rho, sigma, tol);
  const int p = opt.precision;
  out << "complementarity_residual: " << num(rep.complementarity_residual, p) << '\n';
  out << "k_gamma_min_eig: " << num(rep.k_gamma_min_eig, p) << '\n';
  if (rep.semidefinite) {
    const SemidefiniteTerms& t = *rep.semidefinite;
    out << "l_min_eig: " << num(t.l_min_eig, p) << '\n';
    out << "sigma_l_residual: " << num(t.sigma_l_residual, p) << '\n';
    out << "decomposition_residual: " << num(t.decomposition_residual, p) << '\n';
    out << "max_pair_ratio: " << num(t.max_pair_ratio, p) << '\n';
  }
  out << "tolerance: " << num(tol, p) << '\n';
  out << "result: " << (rep.passed ? "PASS" : "FAIL") << '\n';
  return rep.passed ? kOk : kCertificateFailed;
}

int experiment_nonadditivity(const Options& opt, std::ostream& out) {
  const NonadditivityReport rep = nonadditivity_experiment(optimizer_config(opt));
  const int p = opt.precision;
  CsvFile csv(opt.out_path,
              "b1_bits,b2_bits,b2_lower_bits,gap_bits,eval_slack_bits,kkt_single_passed,"
              "kkt_double_passed,optimizer_converged,strict_gap",
              false);
  csv.row(fmt::format("{},{},{},{},{},{},{},{},{}", num(rep.b1.value, p), num(rep.b2.value, p),
                      num(rep.b2_lower.value, p), num(rep.gap, p), num(rep.eval_slack, p),
                      rep.kkt_single.passed ? 1 : 0, rep.kkt_double.passed ? 1 : 0,
                      rep.two_copy.converged ? 1 : 0, rep.strict_gap ? 1 : 0));
  csv.close();
  out << "B(rho): " << num(rep.b1.value, p) << '\n';
  out << "B(rho x rho): " << num(rep.b2.value, p) << '\n';
  out << "B(rho x rho) lower bound: " << num(rep.b2_lower.value, p) << '\n';
  out << "2 B(rho) - B(rho x rho): " << num(rep.gap, p) << '\n';
  out << "single-copy certificate: " << (rep.kkt_single.passed ? "PASS" : "FAIL") << '\n';
  out << "two-copy certificate: " << (rep.kkt_double.passed ? "PASS" : "FAIL") << '\n';
  out << "strict gap: " << (rep.strict_gap ? "yes" : "no") << '\n';
  return rep.two_copy.converged ? kOk : kNotConverged;
}

int experiment_isotropic_scan(const Options& opt, std::ostream& out) {
  const OptimizerConfig cfg = optimizer_config(opt);
  const int p = opt.precision;
  CsvFile csv(opt.out_path, "K,F,closed_form_bits,optimizer_bits,abs_diff", false);
  bool all_converged = true;
  double worst = 0.0;
  for (int k : {2, 3}) {
    for (int step = 0; step <= 20; ++step) {
      const double f = step / 20.0;
      const double closed = isotropic_bound(k, f).bound.value;
      const OptimizerResult res = minimize_rel_entropy(isotropic(k, f), cfg);
      all_converged = all_converged && res.converged;
      const double diff = std::abs(closed - res.bound.value);
      worst = std::max(worst, diff);
      csv.row(fmt::format("{},{},{},{},{}", k, num(f, p), num(closed, p), num(res.bound.value, p),
                          num(diff, p)));
    }
  }
  csv.close();
  out << "isotropic_scan: max |closed form - optimizer| = " << num(worst, p) << '\n';
  return all_converged ? kOk : kNotConverged;
}

int experiment_bell_scan(const Options& opt, std::ostream& out) {
  const OptimizerConfig cfg = optimizer_config(opt);
  const int p = opt.precision;
  constexpr int kSteps = 10;
  CsvFile csv(opt.out_path, "a,b,c,d,closed_form_bits,optimizer_bits,abs_diff", false);
  bool all_converged = true;
  double worst = 0.0;
  for (int i = 0; i <= kSteps; ++i) {
    for (int j = 0; i + j <= kSteps; ++j) {
      for (int k = 0; i + j + k <= kSteps; ++k) {
        const int l = kSteps - i - j - k;
        const std::array<double, 4> w{static_cast<double>(i) / kSteps,
                                      static_cast<double>(j) / kSteps,
                                      static_cast<double>(k) / kSteps,
                                      static_cast<double>(l) / kSteps};
        const double closed = bell_z2_bound(w).bound.value;
        const OptimizerResult res = minimize_rel_entropy(bell_diagonal(w), cfg);
        all_converged = all_converged && res.converged;
        const double diff = std::abs(closed - res.bound.value);
        worst = std::max(worst, diff);
        csv.row(fmt::format("{},{},{},{},{},{},{}", num(w[0], p), num(w[1], p), num(w[2], p),
                            num(w[3], p), num(closed, p), num(res.bound.value, p), num(diff, p)));
      }
    }
  }
  csv.close();
  out << "bell_scan: max |closed form - optimizer| = " << num(worst, p) << '\n';
  return all_converged ? kOk : kNotConverged;
}

int cmd_experiment(const Options& opt, std::ostream& out) {
  if (opt.experiment == "nonadditivity") return experiment_nonadditivity(opt, out);
  if (opt.experiment == "isotropic_scan") return experiment_isotropic_scan(opt, out);
  if (opt.experiment == "bell_scan") return experiment_bell_scan(opt, out);
  throw FormatError("unknown experiment \"" + opt.experiment +
                    "\" (expected nonadditivity, isotropic_scan or bell_scan)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Bounds on distillable entanglement from the PPT relative entropy"};
  app.name("pptbound");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--precision", opt.precision, "Significant digits in output")
        ->check(CLI::Range(1, 17));
  };
  auto add_optimizer = [&](CLI::App* sub) {
    sub->add_option("--max-iters", opt.max_iters, "Optimizer iteration cap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", opt.tol, "Gradient-mapping tolerance")->check(CLI::PositiveNumber);
  };

  CLI::App* bound = app.add_subcommand("bound", "Compute the bound for one state");
  bound->add_option("--state", opt.state, "State file")->required();
  bound->add_option("--out", opt.out_path, "Append a CSV row to this file");
  bound->add_flag("--tensor-square", opt.tensor_square, "Use rho (x) rho");
  add_optimizer(bound);
  add_common(bound);

  CLI::App* kkt = app.add_subcommand("kkt", "Check the optimality certificate of sigma for rho");
  kkt->add_option("--rho", opt.rho, "State file for rho")->required();
  kkt->add_option("--sigma", opt.sigma, "State file for sigma")->required();
  kkt->add_option("--tol", opt.tol, "Certificate tolerance")->check(CLI::PositiveNumber);
  kkt->add_flag("--tensor-square", opt.tensor_square, "Check (rho (x) rho, sigma (x) sigma)");
  add_common(kkt);

  CLI::App* experiment = app.add_subcommand("experiment", "Run a named experiment to CSV");
  experiment->add_option("name", opt.experiment, "nonadditivity | isotropic_scan | bell_scan")
      ->required();
  experiment->add_option("--out", opt.out_path, "CSV output path")->required();
  add_optimizer(experiment);
  add_common(experiment);

  std::vector<std::string> argv_store{"pptbound"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*bound) return cmd_bound(opt, out);
    if (*kkt) return cmd_kkt(opt, out);
    return cmd_experiment(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace rains::cli
