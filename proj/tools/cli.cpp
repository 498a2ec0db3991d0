#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "infogeo/directional.hpp"
#include "infogeo/dynamics.hpp"
#include "infogeo/errors.hpp"
#include "infogeo/expfam.hpp"
#include "infogeo/harness.hpp"
#include "infogeo/regime.hpp"
#include "infogeo/spectral.hpp"

namespace infogeo::cli {

namespace {

using json = nlohmann::ordered_json;

json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
  return rows;
}

std::string join(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out += fmt::format("{}{:.6f}", i ? " " : "", v(i));
  return out;
}

HessianMode parse_hessian(const std::string& s) {
  if (s == "isotropic") return HessianMode::Isotropic;
  if (s == "fisher") return HessianMode::Fisher;
  throw DomainError(fmt::format("unknown hessian mode '{}' (isotropic|fisher)", s));
}

std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
  } catch (const std::exception&) {
    throw DomainError(fmt::format("malformed alpha grid '{}'", text));
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw DomainError(fmt::format("alpha grid '{}' must be start:stop:step with step > 0", text));
  const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  std::vector<double> grid;
  for (std::size_t i = 0; i < count; ++i) grid.push_back(parts[0] + parts[2] * static_cast<double>(i));
  return grid;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError(fmt::format("cannot open '{}' for writing", path));
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError(fmt::format("cannot read '{}'", path));
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct ObserverArgs {
  std::string topology;
  double coupling = 0.5;
  bool json = false;
};

void add_observer_flags(CLI::App* cmd, ObserverArgs& a) {
  cmd->add_option("--topology", a.topology, "catalog topology (P3..P6, S4..S6, C4..C6, K3..K5)")->required();
  cmd->add_option("--J", a.coupling, "uniform coupling strength")->required();
  cmd->add_flag("--json", a.json, "machine-readable output");
}

int cmd_fisher(const ObserverArgs& a, std::ostream& out) {
  const auto id = TopologyId::parse(a.topology);
  const Matrix f = fisher(ExpFamilyModel::uniform(catalog_graph(id), a.coupling));
  const Spectrum s = eig_sym(f);
  if (a.json) {
    json doc{{"topology", id.name()},           {"J", a.coupling},
             {"fisher", to_json(f)},            {"eigenvalues", to_json(s.eigenvalues)},
             {"eigenvectors", to_json(s.eigenvectors)}, {"cond_F", cond(s)}};
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << fmt::format("topology {}  J {}\n", id.name(), a.coupling);
  out << fmt::format("fisher matrix ({0}x{0})\n", f.rows());
  for (Eigen::Index i = 0; i < f.rows(); ++i) out << "  " << join(f.row(i).transpose()) << '\n';
  out << "eigenvalues  " << join(s.eigenvalues) << '\n';
  out << fmt::format("cond_F  {:.6f}\n", cond(s));
  return kOk;
}

json regime_json(const RegimeAnalysis& r, const ConvergenceModel& m) {
  return {{"topology", r.topology.name()}, {"J", r.coupling},
          {"model", m.name()},             {"hessian", m.hessian == HessianMode::Fisher ? "fisher" : "isotropic"},
          {"lambda_min", r.lambda_min},    {"lambda_max", r.lambda_max},
          {"cond_F", r.cond_f},            {"gap", r.gap},
          {"c_star", r.c_star},            {"alpha_pred", r.alpha_pred},
          {"alpha_num", r.alpha_num},      {"abs_err", r.abs_err},
          {"speedup", r.speedup},          {"boundary_flag", r.boundary_flag}};
}

int cmd_regime(const ObserverArgs& a, const std::string& model_name, double w, const std::string& hessian,
               std::ostream& out) {
  const auto id = TopologyId::parse(a.topology);
  const auto model = ConvergenceModel::parse(model_name, w, parse_hessian(hessian));
  const auto r = analyze_regime(id, a.coupling, fisher_spectrum(id, a.coupling), model);
  const auto doc = regime_json(r, model);
  if (a.json) {
    out << doc.dump(2) << '\n';
    return kOk;
  }
  for (const auto& [key, value] : doc.items()) {
    if (value.is_number_float())
      out << fmt::format("{:<13} = {:.6f}\n", key, value.get<double>());
    else if (value.is_string())
      out << fmt::format("{:<13} = {}\n", key, value.get<std::string>());
    else
      out << fmt::format("{:<13} = {}\n", key, value.dump());
  }
  return kOk;
}

int cmd_directional(const ObserverArgs& a, std::optional<double> beta_flag, std::ostream& out) {
  const auto id = TopologyId::parse(a.topology);
  const Matrix f = fisher(ExpFamilyModel::uniform(catalog_graph(id), a.coupling));
  const Spectrum s = eig_sym(f);
  double beta = beta_flag ? *beta_flag : beta_of_alpha(predicted_alpha(s, ConvergenceModel::a()));
  if (!(beta > 0.0))
    throw DomainError(fmt::format(
        "{} at J={} is classical (alpha_pred = 0, beta = 0); pass --beta to inspect directions", id.name(),
        a.coupling));
  const auto dev = deviation_tensor(f, beta);
  const auto& r = dev.report;
  if (a.json) {
    json dirs = json::array();
    for (Eigen::Index k = 0; k < r.lambda.size(); ++k)
      dirs.push_back({{"lambda", r.lambda(k)},
                      {"alpha_dir", r.alpha_dir(k)},
                      {"deviation", r.deviation_eigs(k)},
                      {"class", std::string(to_string(r.classification[static_cast<std::size_t>(k)]))}});
    json doc{{"topology", id.name()},          {"J", a.coupling},
             {"beta", beta},                   {"alpha_mean", r.alpha_mean},
             {"alpha_spread", r.alpha_spread}, {"trace_ratio", r.trace_ratio},
             {"deviation_fraction", r.deviation_fraction}, {"directions", dirs}};
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << fmt::format("topology {}  J {}  beta {:.6f}\n", id.name(), a.coupling, beta);
  out << fmt::format("alpha_mean          = {:.6f}\n", r.alpha_mean);
  out << fmt::format("alpha_spread        = {:.6f}\n", r.alpha_spread);
  out << fmt::format("trace_ratio         = {:.6f}\n", r.trace_ratio);
  out << fmt::format("deviation_fraction  = {:.6f}\n", r.deviation_fraction);
  out << "multiplicity  lambda      alpha_dir   deviation    class\n";
  for (const auto& m : r.multiplets) {
    const auto k = static_cast<Eigen::Index>(m.first);
    out << fmt::format("{:>12}  {:<10.6f}  {:<10.6f}  {:<+11.6f}  {}\n", m.size, r.lambda(k), r.alpha_dir(k),
                       r.deviation_eigs(k), to_string(r.classification[m.first]));
  }
  return kOk;
}

int cmd_dynamics(const ObserverArgs& a, const std::string& grid_text, const std::string& policy_text, double tol,
                 std::size_t max_iter, const std::string& out_path, const std::string& svg_path,
                 std::ostream& out) {
  const auto id = TopologyId::parse(a.topology);
  EtaPolicy policy;
  if (policy_text == "normalized")
    policy = EtaPolicy::Normalized;
  else if (policy_text == "fixed")
    policy = EtaPolicy::Fixed;
  else
    throw DomainError(fmt::format("unknown eta policy '{}' (fixed|normalized)", policy_text));
  const Spectrum s = fisher_spectrum(id, a.coupling);
  FlowOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  const auto result = empirical_alpha(s, policy, parse_alpha_grid(grid_text), options);
  const double alpha_pred = predicted_alpha(s, ConvergenceModel::a());
  if (!out_path.empty()) write_file(out_path, emit_curve(result, ReportFormat::Csv));
  if (!svg_path.empty()) write_file(svg_path, emit_curve(result, ReportFormat::Svg));
  if (a.json) {
    auto doc = json::parse(emit_curve(result, ReportFormat::Json));
    doc["topology"] = id.name();
    doc["J"] = a.coupling;
    doc["eta_policy"] = policy_text;
    doc["alpha_pred"] = alpha_pred;
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << emit_curve(result, ReportFormat::Csv);
  out << fmt::format("# argmin alpha {:.4f} ({} iterations); model A alpha_pred {:.4f}\n", result.alpha_at_min,
                     result.iterations_at_min, alpha_pred);
  return kOk;
}

int cmd_models(const ObserverArgs& a, double w, std::ostream& out) {
  const auto id = TopologyId::parse(a.topology);
  const Spectrum s = fisher_spectrum(id, a.coupling);
  const auto rows = model_table(s, w);
  if (a.json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"model", r.model.name()},
                     {"hessian", r.model.hessian == HessianMode::Fisher ? "fisher" : "isotropic"},
                     {"alpha_pred", r.alpha_pred},
                     {"alpha_num", r.alpha_num},
                     {"T_min", r.t_min},
                     {"boundary", r.at_boundary}});
    out << json{{"topology", id.name()}, {"J", a.coupling}, {"cond_F", cond(s)}, {"models", arr}}.dump(2) << '\n';
    return kOk;
  }
  out << fmt::format("topology {}  J {}  cond_F {:.4f}\n", id.name(), a.coupling, cond(s));
  out << "model   hessian    alpha_pred  alpha_num   T_min         boundary\n";
  for (const auto& r : rows)
    out << fmt::format("{:<7} {:<10} {:<11.6f} {:<11.6f} {:<13.6g} {}\n", r.model.name(),
                       r.model.hessian == HessianMode::Fisher ? "fisher" : "isotropic", r.alpha_pred, r.alpha_num,
                       r.t_min, r.at_boundary ? "yes" : "no");
  return kOk;
}

struct SweepArgs {
  std::string out_path;
  std::string format = "csv";
  bool json = false;
  std::string golden;
  std::vector<std::string> tolerances;
  unsigned threads = 0;
  std::string topologies;
  std::string couplings;
  std::string model = "A";
  double w = 1.0;
  std::string hessian = "isotropic";
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepConfig config;
  config.threads = a.threads;
  config.model = ConvergenceModel::parse(a.model, a.w, parse_hessian(a.hessian));
  if (!a.topologies.empty()) {
    config.topologies.clear();
    for (const auto& t : split(a.topologies, ',')) config.topologies.push_back(TopologyId::parse(t));
  }
  if (!a.couplings.empty()) {
    config.couplings.clear();
    for (const auto& j : split(a.couplings, ',')) {
      try {
        config.couplings.push_back(std::stod(j));
      } catch (const std::exception&) {
        throw DomainError(fmt::format("malformed coupling '{}'", j));
      }
    }
  }
  std::map<std::string, Tolerance> tolerances;
  for (const auto& t : a.tolerances) tolerances.insert(parse_tolerance(t));
  const auto format = a.json ? ReportFormat::Json : parse_format(a.format);

  const auto result = run_sweep(config);
  const auto report = emit_report(result.records, format, config.model);
  if (a.out_path.empty())
    out << report;
  else
    write_file(a.out_path, report);

  const auto& s = result.summary;
  err << fmt::format("runs {}  mean |err| {:.6f}  max |err| {:.6f}  classical {}  mixed {}  boundary {}\n", s.runs,
                     s.mean_abs_err, s.max_abs_err, s.classical, s.mixed, s.boundary);

  if (!a.golden.empty()) {
    const auto cmp = compare_golden(result.records, read_file(a.golden), tolerances);
    for (const auto& d : cmp.diffs) err << "golden: " << d << '\n';
    err << fmt::format("golden {}: {} cells, {} violations\n", cmp.pass ? "PASS" : "FAIL", cmp.cells,
                       cmp.diffs.size());
    if (!cmp.pass) return kGoldenMismatch;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fisher information geometry and regime analysis of Ising observers", "infogeo"};
  app.require_subcommand(1);

  ObserverArgs fisher_args, regime_args, directional_args, dynamics_args, models_args;
  std::string model_name = "A", hessian = "isotropic";
  double w = 1.0, models_w = 1.0;
  std::optional<double> beta;
  std::string grid = "0:0.99:0.01", policy = "normalized", curve_out, curve_svg;
  double tol = 1e-6;
  std::size_t max_iter = 1'000'000;
  SweepArgs sweep;

  auto* fisher_cmd = app.add_subcommand("fisher", "Fisher matrix and spectrum of an observer");
  add_observer_flags(fisher_cmd, fisher_args);

  auto* regime_cmd = app.add_subcommand("regime", "closed-form and numeric regime parameter");
  add_observer_flags(regime_cmd, regime_args);
  regime_cmd->add_option("--model", model_name, "convergence model A|B|C|D|W");
  regime_cmd->add_option("--w", w, "exponent of model W");
  regime_cmd->add_option("--hessian", hessian, "loss Hessian isotropic|fisher");

  auto* directional_cmd = app.add_subcommand("directional", "directional alpha and deviation tensor");
  add_observer_flags(directional_cmd, directional_args);
  directional_cmd->add_option("--beta", beta, "metric shift (default: beta of model-A alpha_pred)");

  auto* dynamics_cmd = app.add_subcommand("dynamics", "simulated gradient flow under g(c)");
  add_observer_flags(dynamics_cmd, dynamics_args);
  dynamics_cmd->add_option("--alpha-grid", grid, "start:stop:step");
  dynamics_cmd->add_option("--eta-policy", policy, "fixed|normalized");
  dynamics_cmd->add_option("--tol", tol, "relative convergence tolerance");
  dynamics_cmd->add_option("--max-iter", max_iter, "iteration cap per run");
  dynamics_cmd->add_option("--out", curve_out, "write the curve as CSV");
  dynamics_cmd->add_option("--svg", curve_svg, "write the curve as SVG");

  auto* sweep_cmd = app.add_subcommand("sweep", "13 topologies x 7 couplings");
  sweep_cmd->add_option("--out", sweep.out_path, "write the report here instead of stdout");
  sweep_cmd->add_option("--format", sweep.format, "csv|json|svg");
  sweep_cmd->add_flag("--json", sweep.json, "shorthand for --format json");
  sweep_cmd->add_option("--golden", sweep.golden, "golden CSV to compare against");
  sweep_cmd->add_option("--tol", sweep.tolerances, "column=abs[:rel], repeatable");
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads (0 = all cores)");
  sweep_cmd->add_option("--topologies", sweep.topologies, "comma-separated subset of the catalog");
  sweep_cmd->add_option("--couplings", sweep.couplings, "comma-separated couplings in [0.1, 1.5]");
  sweep_cmd->add_option("--model", sweep.model, "convergence model A|B|C|D|W");
  sweep_cmd->add_option("--w", sweep.w, "exponent of model W");
  sweep_cmd->add_option("--hessian", sweep.hessian, "loss Hessian isotropic|fisher");

  auto* models_cmd = app.add_subcommand("models", "minimisers of every convergence model");
  add_observer_flags(models_cmd, models_args);
  models_cmd->add_option("--w", models_w, "exponent of model W");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kDomainError;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == fisher_cmd) return cmd_fisher(fisher_args, out);
    if (active == regime_cmd) return cmd_regime(regime_args, model_name, w, hessian, out);
    if (active == directional_cmd) return cmd_directional(directional_args, beta, out);
    if (active == dynamics_cmd)
      return cmd_dynamics(dynamics_args, grid, policy, tol, max_iter, curve_out, curve_svg, out);
    if (active == sweep_cmd) return cmd_sweep(sweep, out, err);
    if (active == models_cmd) return cmd_models(models_args, models_w, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n' << active->help();
    return kDomainError;
  }
  return kDomainError;
}

}  // namespace infogeo::cli
