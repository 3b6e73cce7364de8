#include "bikoeff/cli.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bikoeff/series.hpp"

namespace bikoeff {

std::vector<GridJob> soundness_grid() {
  std::vector<GridJob> jobs;
  const Rational lambdas[] = {0, make_rational(1, 2), 1};
  const Rational rhos[] = {0, make_rational(1, 4), make_rational(1, 2)};
  for (OperatorKind op : {OperatorKind::ST, OperatorKind::M}) {
    for (const Rational& l : lambdas) {
      for (const Rational& rho : rhos) {
        for (Target t : {Target::a2, Target::a3, Target::a4}) jobs.push_back({make_spec(op, l, order_coeffs(rho)), t});
      }
    }
  }
  return jobs;
}

std::vector<GridJob> a5_grid() {
  std::vector<GridJob> jobs;
  for (const Rational& rho : {Rational(0), make_rational(1, 4), make_rational(1, 2)}) {
    jobs.push_back({make_spec(OperatorKind::ST, 0, order_coeffs(rho)), Target::a5});
  }
  for (const Rational& beta : {make_rational(1, 2), make_rational(3, 4), Rational(1)}) {
    jobs.push_back({make_spec(OperatorKind::ST, 0, strong_coeffs(beta)), Target::a5});
  }
  return jobs;
}

std::vector<OracleReport> run_jobs(const std::vector<GridJob>& jobs, const SearchConfig& cfg, int threads) {
  std::vector<std::optional<OracleReport>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = max_coeff(jobs[i].spec, jobs[i].target, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<OracleReport> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

int verify_exit_code(const OracleReport& r, std::ostream& err) {
  if (!r.violated) return kExitOk;
  err << fmt::format("violation: {} for {} reaches {:.15g} above the bound {:.15g}\n", to_string(r.target),
                     to_text(r.spec), r.best_value, r.bound_value);
  err << "witness: " << witness_json(r) << "\n";
  return kExitViolation;
}

namespace {

std::vector<Target> parse_targets(const std::string& text) {
  std::vector<Target> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_target(item));
  }
  if (out.empty()) throw ParseError("no coefficients given");
  return out;
}

std::vector<Target> default_targets(const ClassSpec& spec) {
  std::vector<Target> out{Target::a2, Target::a3, Target::a4};
  const GeneratorFamily fam = spec.generator.family;
  if (spec.op == OperatorKind::ST && spec.lambda == 0 &&
      (fam == GeneratorFamily::Order || fam == GeneratorFamily::Strong)) {
    out.push_back(Target::a5);
  }
  return out;
}

/// Accepts a bare generator such as "strong:beta=1/3" where only the generator matters.
ClassSpec parse_spec_or_generator(const std::string& text) {
  for (const char* family : {"janowski:", "order:", "strong:", "custom:"}) {
    if (text.rfind(family, 0) == 0) return parse_class_spec("st:lambda=0:" + text);
  }
  return parse_class_spec(text);
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
  if (!f) throw DomainError("cannot write '" + path + "'");
}

std::string render(const std::vector<ReportDocument>& docs, const std::string& format, bool bundle) {
  if (format == "json") return (bundle ? to_json(docs) : to_json(docs.front())) + "\n";
  if (format == "csv") return to_csv(docs);
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) out += (i ? "\n" : "") + to_table(docs[i]);
  return out;
}

struct SearchFlags {
  std::uint64_t seed = 0;
  int samples = 10000;
  int refine_steps = 12;
  double tol_feasible = 1e-7;
  double tol_violation = 1e-8;
  bool real_only = false;
  int max_atoms = 5;

  void add_to(CLI::App& app) {
    app.add_option("--seed", seed, "Base seed")->envname("BIKOEFF_SEED");
    app.add_option("--samples", samples, "Sample indices per search")->check(CLI::PositiveNumber);
    app.add_option("--refine-steps", refine_steps, "Coordinate sweeps per local refinement")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--tol-feasible", tol_feasible, "Admissibility tolerance for the implied q")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--tol-violation", tol_violation, "Margin before a bound counts as violated")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--real-only", real_only, "Search real tuples only");
    app.add_option("--max-atoms", max_atoms, "Atoms per sampled measure")->check(CLI::PositiveNumber);
  }

  SearchConfig config() const {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.local_refine_steps = refine_steps;
    cfg.tol_feasible = tol_feasible;
    cfg.tol_violation = tol_violation;
    cfg.restrict_real = real_only;
    cfg.max_atoms = max_atoms;
    return cfg;
  }
};


std::string expand(const ClassSpec& spec, const std::string& input, int order) {
  std::string out;
  if (input == "generator") {
    RationalSeries phi = spec.generator.series();
    return to_string(phi.truncate(order)) + "\n";
  }
  std::vector<Polynomial> c{Polynomial(0), Polynomial(1)};
  for (int n = 2; n <= 5; ++n) c.push_back(Polynomial::variable("a" + std::to_string(n)));
  const SymbolicSeries f(std::move(c));
  if (input == "operator_lhs") {
    const SymbolicSeries lhs = apply_operator(spec.op, Polynomial(spec.lambda), f);
    out += fmt::format("{} operator, lambda = {}\n", to_string(spec.op), format_rational(spec.lambda));
    for (int n = 0; n <= lhs.order(); ++n) out += fmt::format("z^{}: {}\n", n, lhs[n].to_string());
    return out;
  }
  const SymbolicSeries g = revert(f);
  for (int n = 2; n <= g.order(); ++n) out += fmt::format("w^{}: {}\n", n, g[n].to_string());
  return out;
}

std::string sweep(const std::string& tmpl, const std::string& param, const std::string& range,
                  const std::vector<Target>& targets) {
  // Placeholder is "{}" or "{<param>}".
  std::string placeholder = "{}";
  std::size_t pos = tmpl.find(placeholder);
  if (pos == std::string::npos && !param.empty()) {
    placeholder = "{" + param + "}";
    pos = tmpl.find(placeholder);
  }
  if (pos == std::string::npos) throw ParseError("sweep template needs one placeholder such as {}");
  if (tmpl.find(placeholder, pos + 1) != std::string::npos || tmpl.find('{', pos + 1) != std::string::npos ||
      tmpl.substr(0, pos).find('{') != std::string::npos) {
    throw ParseError("sweep template must contain exactly one placeholder");
  }
  std::vector<std::string> parts;
  std::stringstream ss(range);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw ParseError("range must be lo,hi,steps");
  const Rational lo = parse_rational(parts[0]), hi = parse_rational(parts[1]);
  int steps = 0;
  try {
    std::size_t used = 0;
    steps = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw ParseError("bad step count");
  } catch (const std::logic_error&) {
    throw ParseError("bad step count '" + parts[2] + "'");
  }
  if (steps < 2) throw DomainError("sweep needs at least 2 steps");
  if (!(lo < hi)) throw DomainError("sweep range needs lo < hi");

  std::string out = "param,coeff,bound,branch,variant\r\n";
  for (int i = 0; i < steps; ++i) {
    const Rational x = lo + (hi - lo) * make_rational(i, steps - 1);
    std::string text = tmpl;
    text.replace(pos, placeholder.size(), format_rational(x));
    const ReportDocument doc = bounds_document(parse_class_spec(text), targets);
    for (const ReportRow& r : doc.rows) {
      out += fmt::format("{:.15g},{},{:.15g},{},{}\r\n", x.get_d(), r.coefficient, r.bound, r.branch.value_or(""),
                         r.variant.value_or(""));
    }
  }
  return out;
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Splices `key = value` lines of a --config file into the arguments of the
// chosen subcommand. Keys may sit at top level or under a [subcommand] section;
// anything given on the command line wins.
std::vector<std::string> with_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  std::string sub;
  for (const auto& a : rest) {
    if (!a.empty() && a[0] != '-') {
      sub = a;
      break;
    }
  }
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::FileError&) {
    throw ParseError("cannot read config file '" + path + "'");
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && item.parents.front() != sub && item.parents.front() != "default") continue;
    const std::string flag = "--" + item.name;
    if (given(rest, flag)) continue;
    if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
      if (item.inputs[0] == "true") rest.push_back(flag);
      continue;
    }
    rest.push_back(flag);
    for (const auto& v : item.inputs) rest.push_back(v);
  }
  return rest;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coefficient bounds for bi-univalent function classes", "bikoeff"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "File of key = value lines; flags override it");

  std::string spec_text, format = "table", out_path, coeffs;
  const std::vector<std::string> formats = {"table", "json", "csv"};

  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds for a class");
  bounds->add_option("spec", spec_text, "Class, e.g. st:lambda=1/2:order:rho=1/4")->required();
  bounds->add_option("--coeffs", coeffs, "Comma-separated coefficients (a2..a5)");
  bounds->add_option("--format", format)->check(CLI::IsMember(formats));
  bounds->add_option("--out", out_path, "Output file (default stdout)");

  SearchFlags search;
  std::string target_text;
  auto* verify = app.add_subcommand("verify", "Search for a counterexample to a bound");
  verify->add_option("spec", spec_text, "Class")->required();
  verify->add_option("--target", target_text, "a2, a3, a4 or a5")->required();
  verify->add_option("--format", format)->check(CLI::IsMember(formats));
  verify->add_option("--out", out_path, "Output file (default stdout)");
  search.add_to(*verify);

  std::string input = "generator";
  int order = 3;
  auto* exp = app.add_subcommand("expand", "Print exact series expansions");
  exp->add_option("spec", spec_text, "Class or bare generator")->required();
  exp->add_option("--input", input)->check(CLI::IsMember({"generator", "operator_lhs", "inverse"}));
  exp->add_option("--order", order, "Generator truncation order")->check(CLI::Range(1, kDefaultOrder));

  std::string param, range;
  auto* sw = app.add_subcommand("sweep", "Bounds on a parameter grid, as CSV");
  sw->add_option("template", spec_text, "Class text with one {} placeholder")->required();
  sw->add_option("--param", param, "Name of the swept parameter");
  sw->add_option("--range", range, "lo,hi,steps")->required();
  sw->add_option("--coeffs", coeffs, "Comma-separated coefficients (default a2,a3,a4)");
  sw->add_option("--out", out_path, "Output file (default stdout)");

  SearchFlags grid;
  int a5_samples = 20000;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string report_format = "json";
  auto* rep = app.add_subcommand("report", "Run the verification grid and emit one document");
  grid.add_to(*rep);
  rep->add_option("--a5-samples", a5_samples, "Samples for the a5 systems")->check(CLI::PositiveNumber);
  rep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  rep->add_option("--format", report_format)->check(CLI::IsMember(formats));
  rep->add_option("--out", out_path, "Output file (default stdout)");

  try {
    std::vector<std::string> all = with_config(args);
    std::vector<std::string> reversed(all.rbegin(), all.rend());
    app.parse(reversed);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    if (auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) {
      err << "run '" << sub->get_name() << " --help' for usage\n";
    }
    return kExitUsage;
  }

  try {
    if (*bounds) {
      const ClassSpec spec = parse_class_spec(spec_text);
      const auto targets = coeffs.empty() ? default_targets(spec) : parse_targets(coeffs);
      write_output(render({bounds_document(spec, targets)}, format, false), out_path, out);
      return kExitOk;
    }
    if (*verify) {
      const ClassSpec spec = parse_class_spec(spec_text);
      const OracleReport r = max_coeff(spec, parse_target(target_text), search.config());
      write_output(render({verify_document(r)}, format, false), out_path, out);
      return verify_exit_code(r, err);
    }
    if (*exp) {
      out << expand(parse_spec_or_generator(spec_text), input, order);
      return kExitOk;
    }
    if (*sw) {
      const auto targets = coeffs.empty() ? std::vector{Target::a2, Target::a3, Target::a4} : parse_targets(coeffs);
      write_output(sweep(spec_text, param, range, targets), out_path, out);
      return kExitOk;
    }
    if (*rep) {
      SearchConfig cfg = grid.config();
      std::vector<OracleReport> reports = run_jobs(soundness_grid(), cfg, threads);
      cfg.samples = a5_samples;
      for (auto& r : run_jobs(a5_grid(), cfg, threads)) reports.push_back(std::move(r));
      std::vector<ReportDocument> docs;
      bool violated = false;
      for (const auto& r : reports) {
        docs.push_back(verify_document(r));
        if (verify_exit_code(r, err) != kExitOk) violated = true;
      }
      write_output(render(docs, report_format, true), out_path, out);
      return violated ? kExitViolation : kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bikoeff
