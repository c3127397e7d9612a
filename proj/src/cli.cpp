#include "hpoly/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hpoly/errors.hpp"
#include "hpoly/ksz.hpp"
#include "hpoly/polynomial_io.hpp"
#include "hpoly/records.hpp"
#include "hpoly/scaling.hpp"
#include "hpoly/supnorm.hpp"

namespace hpoly::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kWorkersEnv = "HPOLY_WORKERS";
constexpr const char* kOutDirEnv = "HPOLY_OUT_DIR";

// Options shared by every subcommand that estimates sup norms.
struct BudgetFlags {
  SupNormBudget budget;
  CLI::Option* workers = nullptr;

  void attach(CLI::App* cmd, bool with_gridless) {
    cmd->add_option("--grid", budget.grid, "grid cells per coordinate")->capture_default_str();
    cmd->add_option("--restarts", budget.restarts, "multi-start ascent runs")->capture_default_str();
    cmd->add_option("--max-iterations", budget.max_iterations, "ascent iteration cap")->capture_default_str();
    cmd->add_option("--initial-step", budget.initial_step, "ascent initial step")->capture_default_str();
    cmd->add_option("--armijo", budget.armijo, "sufficient-increase parameter")->capture_default_str();
    cmd->add_option("--backtrack", budget.backtrack, "step shrink factor")->capture_default_str();
    cmd->add_option("--max-backtracks", budget.max_backtracks, "line-search trials per step")->capture_default_str();
    cmd->add_option("--grid-cap", budget.grid_cap, "maximum grid cells")->capture_default_str();
    cmd->add_option("--refine-cap", budget.refine_cap, "maximum refined cells")->capture_default_str();
    cmd->add_option("--vertex-cap", budget.vertex_cap, "maximum cube vertices")->capture_default_str();
    cmd->add_option("--target-gap", budget.target_gap, "relative gap that stops refinement")->capture_default_str();
    if (with_gridless) {
      cmd->add_flag("--allow-gridless", budget.allow_gridless, "certify without the grid when it is over the cap");
    }
    workers = cmd->add_option("--workers", budget.workers, "worker threads (0 = all cores)");
  }

  // Environment sits below config file and flags.
  void apply_env() {
    if (workers->count() == 0) {
      if (const char* env = std::getenv(kWorkersEnv)) budget.workers = static_cast<unsigned>(std::stoul(env));
    }
  }
};

struct OutputFlags {
  std::string out;
  std::string out_dir;
  std::string format = "summary";
  CLI::Option* out_dir_opt = nullptr;

  void attach(CLI::App* cmd, const std::string& default_format) {
    format = default_format;
    cmd->add_option("--out", out, "write the primary output to this file instead of stdout");
    out_dir_opt = cmd->add_option("--out-dir", out_dir, "directory for relative output paths");
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"rows", "summary"}))->capture_default_str();
  }

  void apply_env() {
    if (out_dir_opt->count() == 0) {
      if (const char* env = std::getenv(kOutDirEnv)) out_dir = env;
    }
  }

  fs::path resolve(const std::string& path) const {
    fs::path p(path);
    if (p.is_relative() && !out_dir.empty()) p = fs::path(out_dir) / p;
    return p;
  }

  void emit(const std::string& text, std::ostream& stdout_stream) const {
    if (out.empty()) {
      stdout_stream << text;
      return;
    }
    write_file(resolve(out), text);
  }

  static void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
  }
};

double parse_r(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    return parse_double(text.substr(0, slash)) / parse_double(text.substr(slash + 1));
  }
  return parse_double(text);
}

std::string witness_text(const std::vector<Scalar>& w, bool exact) {
  std::string s;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j) s += ' ';
    if (exact) {
      s += format_17g(w[j].real()) + ':' + format_17g(w[j].imag());
    } else {
      std::ostringstream o;
      o.precision(6);
      o << w[j].real() << ':' << w[j].imag();
      s += o.str();
    }
  }
  return s;
}

std::string supnorm_text(const SupNormEstimate& e, const std::string& format) {
  std::ostringstream o;
  if (format == "rows") {
    o << "lower,upper,gap,upper_source,grid_skipped,witness\n"
      << format_17g(e.lower) << ',' << format_17g(e.upper) << ',' << format_17g(e.gap()) << ','
      << e.method.upper_source << ',' << (e.method.grid_skipped ? 1 : 0) << ',' << witness_text(e.witness, true) << '\n';
    return o.str();
  }
  o.precision(6);
  o << "lower = " << e.lower << '\n'
    << "upper = " << e.upper << '\n'
    << "gap = " << e.gap() << '\n'
    << "witness = " << witness_text(e.witness, false) << '\n'
    << "upper_source = " << e.method.upper_source << '\n'
    << "grid = " << e.method.grid << '\n'
    << "grid_cells = " << e.method.grid_cells << '\n'
    << "grid_skipped = " << (e.method.grid_skipped ? 1 : 0) << '\n'
    << "refined_cells = " << e.method.refined_cells << '\n'
    << "vertices = " << e.method.vertices << '\n'
    << "restarts = " << e.method.restarts << '\n'
    << "seed = " << e.method.seed << '\n';
  return o.str();
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw DomainError("invalid n in --n-list: '" + item + "'");
    }
    if (used != item.size()) throw DomainError("invalid n in --n-list: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hpoly: coefficient norms, certified sup norms and scaling experiments for homogeneous polynomials"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; keys are <subcommand>.<flag>");
  std::string save_config;
  app.add_option("--save-config", save_config, "also write the effective configuration to this file")
      ->configurable(false);

  // norms
  auto* norms = app.add_subcommand("norms", "coefficient l_r norms of a polynomial file");
  std::string norms_file;
  std::vector<std::string> norms_r{"1"};
  norms->add_option("polynomial", norms_file, "polynomial file")->required();
  norms->add_option("--r", norms_r, "norm exponents (decimal, a/b, or inf)")->capture_default_str();
  OutputFlags norms_out;
  norms_out.attach(norms, "rows");

  // supnorm
  auto* sup = app.add_subcommand("supnorm", "certified sup-norm bracket of a polynomial file");
  std::string sup_file;
  sup->add_option("polynomial", sup_file, "polynomial file")->required();
  BudgetFlags sup_budget;
  sup_budget.attach(sup, true);
  sup->add_option("--seed", sup_budget.budget.seed, "search seed")->capture_default_str();
  OutputFlags sup_out;
  sup_out.attach(sup, "summary");

  // ksz
  auto* kszc = app.add_subcommand("ksz", "sup-norm statistics of random Bernoulli polynomials");
  int ksz_m = 2;
  int ksz_n = 4;
  int ksz_samples = 10;
  std::uint64_t ksz_seed = 0;
  std::string ksz_field = "complex";
  std::string ksz_export;
  kszc->add_option("--m", ksz_m, "degree")->capture_default_str();
  kszc->add_option("--n", ksz_n, "variables")->capture_default_str();
  kszc->add_option("--samples", ksz_samples, "number of samples")->capture_default_str();
  kszc->add_option("--seed", ksz_seed, "master seed")->required();
  kszc->add_option("--field", ksz_field, "scalar field")->check(CLI::IsMember({"real", "complex"}))->capture_default_str();
  kszc->add_option("--export-dir", ksz_export, "write every sample as a polynomial file here");
  BudgetFlags ksz_budget;
  ksz_budget.attach(kszc, false);
  OutputFlags ksz_out;
  ksz_out.attach(kszc, "rows");

  // scaling
  auto* scal = app.add_subcommand("scaling", "log-log scaling experiment of coefficient/sup-norm ratios");
  ScalingOptions sc;
  std::string sc_r = "1";
  std::string sc_n_list = "2,4,8,16";
  std::string sc_field = "complex";
  std::string sc_summary_out;
  scal->add_option("--m", sc.m, "degree")->capture_default_str();
  scal->add_option("--r", sc_r, "coefficient norm exponent in [1, 2m/(m+1)] (decimal or a/b)")->capture_default_str();
  scal->add_option("--n-list", sc_n_list, "comma-separated increasing n values")->capture_default_str();
  scal->add_option("--samples", sc.samples_per_n, "Bernoulli samples per n")->capture_default_str();
  scal->add_option("--seed", sc.seed, "master seed")->required();
  scal->add_option("--field", sc_field, "scalar field")->check(CLI::IsMember({"real", "complex"}))->capture_default_str();
  scal->add_option("--summary-out", sc_summary_out, "also write the fit summary to this file");
  BudgetFlags sc_budget;
  sc_budget.attach(scal, false);
  OutputFlags sc_out;
  sc_out.attach(scal, "summary");

  // visser
  auto* vis = app.add_subcommand("visser", "check ||P_C||_inf <= 2^(m-1) ||P||_inf for a real polynomial file");
  std::string vis_file;
  vis->add_option("polynomial", vis_file, "real polynomial file")->required();
  BudgetFlags vis_budget;
  vis_budget.attach(vis, false);
  vis->add_option("--seed", vis_budget.budget.seed, "search seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "hpoly: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (!save_config.empty()) OutputFlags::write_file(save_config, app.config_to_str(true, false));

    if (norms->parsed()) {
      norms_out.apply_env();
      const auto p = read_polynomial(norms_file);
      std::ostringstream o;
      if (norms_out.format == "rows") {
        o << "r,coeff_norm\n";
        for (const auto& r : norms_r) o << format_17g(parse_r(r)) << ',' << format_17g(coeff_norm(p, parse_r(r))) << '\n';
      } else {
        o.precision(6);
        for (const auto& r : norms_r) o << "norm_" << r << " = " << coeff_norm(p, parse_r(r)) << '\n';
      }
      norms_out.emit(o.str(), out);
    } else if (sup->parsed()) {
      sup_budget.apply_env();
      sup_out.apply_env();
      const auto p = read_polynomial(sup_file);
      sup_out.emit(supnorm_text(supnorm(p, sup_budget.budget), sup_out.format), out);
    } else if (kszc->parsed()) {
      ksz_budget.apply_env();
      ksz_out.apply_env();
      const ScalarField field = parse_field(ksz_field);
      const auto stat = ksz::supnorm_statistic(ksz_m, ksz_n, ksz_samples, ksz_seed, field, ksz_budget.budget);
      if (!ksz_export.empty()) {
        const fs::path dir = ksz_out.resolve(ksz_export);
        fs::create_directories(dir);
        for (const auto& row : stat.samples) {
          const auto draw = ksz::sample(ksz_m, ksz_n, row.seed, field);
          write_polynomial(dir / ("sample_" + std::to_string(row.index) + ".poly"), draw.polynomial);
        }
      }
      ksz_out.emit(ksz_out.format == "rows" ? format_ksz_rows(stat) : format_ksz_summary(ksz_m, ksz_n, field, stat), out);
    } else if (scal->parsed()) {
      sc_budget.apply_env();
      sc_out.apply_env();
      sc.r = parse_r(sc_r);
      sc.n_list = parse_n_list(sc_n_list);
      sc.field = parse_field(sc_field);
      sc.budget = sc_budget.budget;
      const ScalingResult result = run_scaling_experiment(sc);

      std::string summary;
      if (result.fit) {
        summary = format_fit_summary(*result.fit);
      } else {
        summary = "fit = unavailable\n";
      }
      summary += "grid_skipped_records = " + std::to_string(result.grid_skipped) + '\n';
      summary += "failed_records = " + std::to_string(result.failed) + '\n';

      const std::string rows = format_records(result.records);
      if (sc_out.format == "rows") {
        sc_out.emit(rows, out);
      } else {
        if (!sc_out.out.empty()) OutputFlags::write_file(sc_out.resolve(sc_out.out), rows);
        out << summary;
      }
      if (!sc_summary_out.empty()) OutputFlags::write_file(sc_out.resolve(sc_summary_out), summary);
      if (!result.fit) {
        err << "hpoly: fewer than 3 n values produced usable records\n";
        return kBudgetError;
      }
    } else if (vis->parsed()) {
      vis_budget.apply_env();
      const auto p = read_polynomial(vis_file);
      const auto v = visser_check(p, vis_budget.budget);
      std::ostringstream o;
      o.precision(10);
      o << "lhs = " << v.lhs << '\n' << "rhs = " << v.rhs << '\n' << "ok = " << (v.ok ? "true" : "false") << '\n';
      out << o.str();
      if (!v.ok) return kFailure;
    }
  } catch (const ParseError& e) {
    err << "hpoly: parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const BudgetExceeded& e) {
    err << "hpoly: budget exceeded: " << e.what() << '\n';
    return kBudgetError;
  } catch (const OverflowError& e) {
    err << "hpoly: overflow: " << e.what() << '\n';
    return kOverflowError;
  } catch (const DomainError& e) {
    err << "hpoly: domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const DimensionMismatch& e) {
    err << "hpoly: domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "hpoly: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace hpoly::cli
