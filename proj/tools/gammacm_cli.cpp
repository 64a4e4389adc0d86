#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "gammacm/classical.hpp"
#include "gammacm/corpus.hpp"
#include "gammacm/report.hpp"
#include "gammacm/specfun.hpp"

using namespace gammacm;

namespace {

struct Flags {
  std::string spec_file;
  std::optional<std::int64_t> kmax;
  std::int64_t nmax = 256;
  std::optional<double> umax;
  int grid_points = 2000;
  std::optional<double> rel_tol;
  int max_order = 8;
  bool oracle = false;
  std::string format = "text";
  bool no_timing = false;
  std::string dump;
};

report::CheckOptions options_from(const Flags& f) {
  report::CheckOptions opt;
  opt.mass.k_max = f.kmax;
  opt.n_max = f.nmax;
  opt.grid.u_max = f.umax;
  opt.grid.points = f.grid_points;
  opt.oracle.max_order = f.max_order;
  if (f.rel_tol) opt.oracle.viol_tol = *f.rel_tol;
  opt.run_oracle = f.oracle;
  opt.timing = !f.no_timing;
  opt.grid.validate();
  opt.oracle.validate();
  return opt;
}

void print_verdict(const Verdict& v, const std::string& format) {
  if (format == "json") {
    std::cout << nlohmann::ordered_json(v).dump(2) << "\n";
  } else {
    std::cout << to_string(v.status) << " [" << v.reason << "] " << v.detail << "\n";
    if (!v.evidence.empty()) std::cout << v.evidence.dump() << "\n";
  }
}

int cmd_check(const Flags& f) {
  const RatioSpec spec = report::load_spec(f.spec_file);
  const auto opt = options_from(f);
  const auto r = report::run_check(spec, opt);
  if (f.format == "json") {
    std::cout << report::to_json(r).dump(2) << "\n";
  } else {
    std::cout << report::to_text(r);
  }
  if (!f.dump.empty()) {
    std::ofstream out(f.dump);
    if (!out) throw InputError("cannot write '" + f.dump + "'");
    out << report::dump_csv(spec, opt);
  }
  return report::exit_code(r.overall.status);
}

int cmd_oracle(const Flags& f) {
  const RatioSpec spec = report::load_spec(f.spec_file);
  const auto opt = options_from(f);
  const Verdict v = report::run_oracle(spec, opt.oracle);
  print_verdict(v, f.format);
  return report::exit_code(v.status);
}

int cmd_corpus(const Flags& f) {
  auto opt = options_from(f);
  opt.timing = false;
  int failures = 0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& c : corpus::golden()) {
    const auto r = report::run_check(report::parse_spec(c.json), opt);
    const bool ok = r.overall.status == c.expected && (c.expected_reason.empty() || r.overall.reason == c.expected_reason);
    failures += ok ? 0 : 1;
    if (f.format == "json") {
      rows.push_back({{"name", c.name}, {"expected", to_string(c.expected)}, {"overall", r.overall}, {"pass", ok}});
    } else {
      std::cout << std::left << std::setw(18) << c.name << " expected " << std::setw(14) << to_string(c.expected)
                << " got " << std::setw(14) << to_string(r.overall.status) << (ok ? " PASS" : " FAIL") << "\n";
    }
  }
  if (f.format == "json") std::cout << rows.dump(2) << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_eval(const std::string& fn, const std::vector<double>& args, std::optional<double> q, const std::string& spec_file,
             std::optional<double> u) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw InputError(fn + " expects " + std::to_string(n) + " argument(s)");
  };
  auto need_q = [&] {
    if (!q) throw InputError(fn + " needs --q");
    return QParam(*q);
  };
  auto order = [&](double k) {
    if (k != std::floor(k) || k < 1) throw InputError("derivative order must be a positive integer");
    return static_cast<int>(k);
  };
  double v = 0.0;
  if (fn == "gamma_q") {
    need(1);
    v = gamma_q(args[0], need_q());
  } else if (fn == "digamma_q") {
    need(1);
    v = digamma_q(args[0], need_q());
  } else if (fn == "polygamma_q") {
    need(2);
    v = polygamma_q(order(args[0]), args[1], need_q());
  } else if (fn == "digamma") {
    need(1);
    v = digamma(args[0]);
  } else if (fn == "polygamma") {
    need(2);
    v = polygamma(order(args[0]), args[1]);
  } else if (fn == "phi") {
    need(3);
    v = phi(args[0], args[1], args[2]);
  } else if (fn == "Q") {
    if (spec_file.empty() || !u) throw InputError("Q needs --spec and --u");
    v = classical::q_kernel(report::load_spec(spec_file), *u);
  } else {
    throw InputError("unknown function '" + fn + "'");
  }
  std::cout << std::setprecision(17) << v << "\n";
  return 0;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--kmax", f.kmax, "finite lattice horizon (default 64*period)");
  cmd->add_option("--nmax", f.nmax, "finite horizon for unit-scale q checks");
  cmd->add_option("--umax", f.umax, "upper end of the kernel grid");
  cmd->add_option("--grid-points", f.grid_points, "kernel grid size");
  cmd->add_option("--rel-tol", f.rel_tol, "oracle violation tolerance, relative to local magnitude");
  cmd->add_option("--max-order", f.max_order, "highest finite-difference order");
  cmd->add_option("--report", f.format, "output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--no-timing", f.no_timing, "omit stage timings");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logarithmic complete monotonicity checks for gamma and q-gamma ratios"};
  app.require_subcommand(1);
  Flags f;

  auto* check = app.add_subcommand("check", "run every applicable checker on a spec");
  check->add_option("spec", f.spec_file, "spec JSON file")->required();
  add_common(check, f);
  check->add_flag("--oracle", f.oracle, "cross-check with finite differences");
  check->add_option("--dump", f.dump, "write Q(u) or tau masses as CSV");

  auto* orc = app.add_subcommand("oracle", "finite-difference oracle only");
  orc->add_option("spec", f.spec_file, "spec JSON file")->required();
  add_common(orc, f);

  auto* corp = app.add_subcommand("corpus", "run the built-in worked examples");
  add_common(corp, f);

  std::string fn;
  std::vector<double> args;
  std::optional<double> q, u;
  std::string eval_spec;
  auto* ev = app.add_subcommand("eval", "evaluate one special function");
  ev->add_option("function", fn, "gamma_q | digamma_q | polygamma_q | digamma | polygamma | phi | Q")->required();
  ev->add_option("args", args, "numeric arguments");
  ev->add_option("--q", q, "q in (0,1)");
  ev->add_option("--spec", eval_spec, "spec file for Q");
  ev->add_option("--u", u, "argument of Q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return report::kInputErrorExit;
  }

  try {
    if (*check) return cmd_check(f);
    if (*orc) return cmd_oracle(f);
    if (*corp) return cmd_corpus(f);
    if (*ev) return cmd_eval(fn, args, q, eval_spec, u);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return report::kInputErrorExit;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return report::kInputErrorExit;
  }
  return report::kInputErrorExit;
}
