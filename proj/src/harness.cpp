#include "infogeo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "infogeo/directional.hpp"
#include "infogeo/errors.hpp"
#include "infogeo/expfam.hpp"

namespace infogeo {

const std::vector<double>& default_couplings() {
  static const std::vector<double> grid{0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
  return grid;
}

SweepRecord analyze_observer(const TopologyId& topology, double coupling, const ConvergenceModel& model) {
  const auto graph = catalog_graph(topology);
  const Matrix f = fisher(ExpFamilyModel::uniform(graph, coupling));
  const Spectrum spectrum = eig_sym(f);

  SweepRecord rec;
  rec.regime = analyze_regime(topology, coupling, spectrum, model);
  rec.n_nodes = graph.node_count();
  rec.n_edges = graph.edge_count();

  const double beta = beta_of_alpha(rec.regime.alpha_pred);
  rec.alpha_spread = beta > 0.0 ? alpha_spread(spectrum, beta) : 0.0;
  // beta only enters the alpha fields of the report, not these two.
  const auto dev = deviation_tensor(f, beta > 0.0 ? beta : 1.0).report;
  rec.trace_ratio = dev.trace_ratio;
  rec.deviation_fraction = dev.deviation_fraction;
  return rec;
}

SweepSummary summarize(const std::vector<SweepRecord>& records) {
  SweepSummary s;
  s.runs = records.size();
  double total = 0.0;
  for (const auto& r : records) {
    total += r.regime.abs_err;
    s.max_abs_err = std::max(s.max_abs_err, r.regime.abs_err);
    (r.regime.c_star > 0.0 ? s.mixed : s.classical) += 1;
    if (r.regime.boundary_flag) ++s.boundary;
  }
  s.mean_abs_err = records.empty() ? 0.0 : total / static_cast<double>(records.size());
  return s;
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.topologies.empty() || config.couplings.empty())
    throw DomainError("sweep needs at least one topology and one coupling");
  for (const auto& t : config.topologies)
    if (!t.in_catalog()) throw DomainError(fmt::format("topology {} not in catalog", t.name()));
  for (double j : config.couplings)
    if (!(j >= 0.1 && j <= 1.5)) throw DomainError(fmt::format("coupling {} outside [0.1, 1.5]", j));

  std::vector<double> couplings = config.couplings;
  std::sort(couplings.begin(), couplings.end());

  struct Job {
    TopologyId topology;
    double coupling;
  };
  std::vector<Job> jobs;
  for (const auto& t : config.topologies)
    for (double j : couplings) jobs.push_back({t, j});

  std::vector<std::optional<SweepRecord>> slots(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        slots[i] = analyze_observer(jobs[i].topology, jobs[i].coupling, config.model);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SweepResult result;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) {
      std::string what = "unknown error";
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      throw SweepError(fmt::format("sweep aborted at {} J={}: {}", jobs[i].topology.name(),
                                   jobs[i].coupling, what));
    }
    result.records.push_back(std::move(*slots[i]));
  }
  result.summary = summarize(result.records);
  return result;
}

ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "svg") return ReportFormat::Svg;
  throw DomainError(fmt::format("unknown report format '{}'", name));
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns{
      "topology",  "n_nodes",   "n_edges",      "J",           "lambda_min",         "lambda_max",
      "cond_F",    "gap",       "c_star",       "alpha_pred",  "alpha_num",          "abs_err",
      "speedup",   "alpha_spread", "trace_ratio", "deviation_fraction", "boundary_flag"};
  return columns;
}

namespace {

using nlohmann::json;

// Numeric value of a report column; nullopt for the topology column.
std::optional<double> column_value(const SweepRecord& r, std::string_view col) {
  const auto& g = r.regime;
  if (col == "n_nodes") return static_cast<double>(r.n_nodes);
  if (col == "n_edges") return static_cast<double>(r.n_edges);
  if (col == "J") return g.coupling;
  if (col == "lambda_min") return g.lambda_min;
  if (col == "lambda_max") return g.lambda_max;
  if (col == "cond_F") return g.cond_f;
  if (col == "gap") return g.gap;
  if (col == "c_star") return g.c_star;
  if (col == "alpha_pred") return g.alpha_pred;
  if (col == "alpha_num") return g.alpha_num;
  if (col == "abs_err") return g.abs_err;
  if (col == "speedup") return g.speedup;
  if (col == "alpha_spread") return r.alpha_spread;
  if (col == "trace_ratio") return r.trace_ratio;
  if (col == "deviation_fraction") return r.deviation_fraction;
  if (col == "boundary_flag") return g.boundary_flag ? 1.0 : 0.0;
  return std::nullopt;
}

bool is_exact_column(std::string_view col) {
  return col == "n_nodes" || col == "n_edges" || col == "boundary_flag";
}

std::string emit_csv(const std::vector<SweepRecord>& records) {
  std::string out;
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : records) {
    out += r.regime.topology.name();
    for (std::size_t i = 1; i < cols.size(); ++i) {
      const double v = *column_value(r, cols[i]);
      out += is_exact_column(cols[i]) ? fmt::format(",{}", static_cast<long long>(v))
                                      : fmt::format(",{:.10g}", v);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const std::vector<SweepRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    json obj;
    obj["topology"] = r.regime.topology.name();
    obj["n_nodes"] = r.n_nodes;
    obj["n_edges"] = r.n_edges;
    for (const auto& col : report_columns()) {
      if (col == "topology" || is_exact_column(col)) continue;
      obj[col] = *column_value(r, col);
    }
    obj["boundary_flag"] = r.regime.boundary_flag;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string emit_svg(const std::vector<SweepRecord>& records, const ConvergenceModel& model) {
  constexpr double width = 640, height = 400, margin = 50;
  constexpr int samples = 200;
  std::vector<std::vector<std::pair<double, double>>> curves;
  double y_lo = 0.0, y_hi = 0.0;
  for (const auto& r : records) {
    const auto span = diagonal_spectrum({r.regime.lambda_min, r.regime.lambda_max});
    const double t0 = convergence_time(span, 0.0, model);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < samples; ++i) {
      const double alpha = kAlphaMax * i / (samples - 1);
      const double y = std::log10(convergence_time(span, beta_of_alpha(alpha), model) / t0);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
      pts.emplace_back(alpha, y);
    }
    curves.push_back(std::move(pts));
  }
  if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;
  auto sx = [&](double a) { return margin + (width - 2 * margin) * a / kAlphaMax; };
  auto sy = [&](double y) { return height - margin - (height - 2 * margin) * (y - y_lo) / (y_hi - y_lo); };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      width, height, width, height);
  out += fmt::format(
      "<text x=\"{}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">log10 T(c)/T(0), model {}"
      "</text>\n",
      margin, model.name());
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", margin,
                     height - margin, width - margin);
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", margin,
                     margin, height - margin);
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">alpha</text>\n",
                     width / 2, height - 15);
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto hue = static_cast<int>(360.0 * static_cast<double>(k) / static_cast<double>(curves.size()));
    out += fmt::format("<polyline fill=\"none\" stroke=\"hsl({},70%,45%)\" stroke-width=\"1.2\" points=\"", hue);
    for (const auto& [a, y] : curves[k]) out += fmt::format("{:.2f},{:.2f} ", sx(a), sy(y));
    out += fmt::format("\"><title>{} J={}</title></polyline>\n", records[k].regime.topology.name(),
                       records[k].regime.coupling);
  }
  out += "</svg>\n";
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    auto cell = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.remove_suffix(1);
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    cells.emplace_back(cell);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

double parse_number(const std::string& text, std::string_view what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw SchemaError(fmt::format("golden file: cannot parse '{}' as a number ({})", text, what));
  }
}

}  // namespace

std::string emit_report(const std::vector<SweepRecord>& records, ReportFormat format,
                        const ConvergenceModel& model) {
  if (records.empty()) throw DomainError("cannot emit a report with no records");
  switch (format) {
    case ReportFormat::Csv: return emit_csv(records);
    case ReportFormat::Json: return emit_json(records);
    case ReportFormat::Svg: return emit_svg(records, model);
  }
  throw DomainError("unknown report format");
}

std::string emit_curve(const EmpiricalAlpha& result, ReportFormat format) {
  if (result.curve.empty()) throw DomainError("cannot emit an empty curve");
  switch (format) {
    case ReportFormat::Csv: {
      std::string out = "alpha,c,eta,iterations,converged\n";
      for (const auto& p : result.curve)
        out += fmt::format("{:.10g},{:.10g},{:.10g},{},{}\n", p.alpha, p.c, p.eta, p.iterations,
                           p.converged ? 1 : 0);
      return out;
    }
    case ReportFormat::Json: {
      json doc;
      doc["alpha_at_min"] = result.alpha_at_min;
      doc["iterations_at_min"] = result.iterations_at_min;
      doc["curve"] = json::array();
      for (const auto& p : result.curve)
        doc["curve"].push_back(
            {{"alpha", p.alpha}, {"c", p.c}, {"eta", p.eta}, {"iterations", p.iterations}, {"converged", p.converged}});
      return doc.dump(2) + "\n";
    }
    case ReportFormat::Svg: {
      constexpr double width = 640, height = 400, margin = 50;
      double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
      for (const auto& p : result.curve) {
        const double y = std::log10(static_cast<double>(std::max<std::size_t>(p.iterations, 1)));
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
      }
      if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;
      auto sx = [&](double a) { return margin + (width - 2 * margin) * a / kAlphaMax; };
      auto sy = [&](double y) { return height - margin - (height - 2 * margin) * (y - y_lo) / (y_hi - y_lo); };
      std::string out = fmt::format(
          "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
          width, height, width, height);
      out += fmt::format(
          "<text x=\"{}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">log10 iterations vs alpha"
          " (argmin {:.3f})</text>\n",
          margin, result.alpha_at_min);
      out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
      for (const auto& p : result.curve)
        out += fmt::format("{:.2f},{:.2f} ", sx(p.alpha),
                           sy(std::log10(static_cast<double>(std::max<std::size_t>(p.iterations, 1)))));
      out += "\"/>\n</svg>\n";
      return out;
    }
  }
  throw DomainError("unknown report format");
}

std::vector<SweepRecord> parse_json_report(std::string_view text) {
  std::vector<SweepRecord> out;
  try {
    const auto arr = json::parse(text);
    for (const auto& obj : arr) {
      SweepRecord r;
      auto& g = r.regime;
      g.topology = TopologyId::parse(obj.at("topology").get<std::string>());
      r.n_nodes = obj.at("n_nodes").get<std::size_t>();
      r.n_edges = obj.at("n_edges").get<std::size_t>();
      g.coupling = obj.at("J").get<double>();
      g.lambda_min = obj.at("lambda_min").get<double>();
      g.lambda_max = obj.at("lambda_max").get<double>();
      g.cond_f = obj.at("cond_F").get<double>();
      g.gap = obj.at("gap").get<double>();
      g.c_star = obj.at("c_star").get<double>();
      g.alpha_pred = obj.at("alpha_pred").get<double>();
      g.alpha_num = obj.at("alpha_num").get<double>();
      g.abs_err = obj.at("abs_err").get<double>();
      g.speedup = obj.at("speedup").get<double>();
      g.boundary_flag = obj.at("boundary_flag").get<bool>();
      r.alpha_spread = obj.at("alpha_spread").get<double>();
      r.trace_ratio = obj.at("trace_ratio").get<double>();
      r.deviation_fraction = obj.at("deviation_fraction").get<double>();
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw SchemaError(fmt::format("malformed JSON report: {}", e.what()));
  }
  return out;
}

std::pair<std::string, Tolerance> parse_tolerance(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw DomainError(fmt::format("tolerance '{}' is not of the form column=abs[:rel]", text));
  std::string col(text.substr(0, eq));
  if (std::find(report_columns().begin(), report_columns().end(), col) == report_columns().end())
    throw DomainError(fmt::format("tolerance for unknown column '{}'", col));
  const auto rest = std::string(text.substr(eq + 1));
  const auto colon = rest.find(':');
  Tolerance tol;
  try {
    tol.abs = std::stod(rest.substr(0, colon));
    if (colon != std::string::npos) tol.rel = std::stod(rest.substr(colon + 1));
  } catch (const std::exception&) {
    throw DomainError(fmt::format("tolerance '{}' has a malformed value", text));
  }
  if (!(tol.abs >= 0.0 && tol.rel >= 0.0)) throw DomainError("tolerances must be non-negative");
  return {col, tol};
}

GoldenComparison compare_golden(const std::vector<SweepRecord>& records, std::string_view golden_csv,
                                const std::map<std::string, Tolerance>& tolerances) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start < golden_csv.size();) {
    auto end = golden_csv.find('\n', start);
    if (end == std::string_view::npos) end = golden_csv.size();
    auto line = golden_csv.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw SchemaError("golden file is empty");

  const auto header = split_csv_line(lines.front());
  const auto& known = report_columns();
  for (const auto& col : header)
    if (std::find(known.begin(), known.end(), col) == known.end())
      throw SchemaError(fmt::format("golden file has unknown column '{}'", col));
  const auto topo_col = std::find(header.begin(), header.end(), "topology");
  const auto j_col = std::find(header.begin(), header.end(), "J");
  if (topo_col == header.end() || j_col == header.end())
    throw SchemaError("golden file needs 'topology' and 'J' columns");
  const auto topo_idx = static_cast<std::size_t>(topo_col - header.begin());
  const auto j_idx = static_cast<std::size_t>(j_col - header.begin());

  GoldenComparison out;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split_csv_line(lines[li]);
    if (cells.size() != header.size())
      throw SchemaError(fmt::format("golden row {} has {} cells, header has {}", li, cells.size(),
                                    header.size()));
    const auto& topo = cells[topo_idx];
    const double j = parse_number(cells[j_idx], "J");
    const auto match = std::find_if(records.begin(), records.end(), [&](const SweepRecord& r) {
      return r.regime.topology.name() == topo && std::abs(r.regime.coupling - j) <= 1e-12;
    });
    if (match == records.end()) {
      out.diffs.push_back(fmt::format("{} J={}: no matching record", topo, cells[j_idx]));
      continue;
    }
    for (std::size_t ci = 0; ci < header.size(); ++ci) {
      const auto& col = header[ci];
      if (ci == topo_idx || ci == j_idx || cells[ci].empty()) continue;
      ++out.cells;
      const double expected = parse_number(cells[ci], col);
      const double actual = *column_value(*match, col);
      Tolerance tol = kDefaultTolerance;
      if (is_exact_column(col)) tol = {0.0, 0.0};
      if (auto it = tolerances.find(col); it != tolerances.end()) tol = it->second;
      const double diff = std::abs(actual - expected);
      if (!(diff <= tol.abs + tol.rel * std::abs(expected)))
        out.diffs.push_back(fmt::format("{} J={} {}: expected {}, actual {:.10g} (|diff| {:.3g})", topo,
                                        cells[j_idx], col, cells[ci], actual, diff));
    }
  }
  out.pass = out.diffs.empty();
  return out;
}

std::vector<ModelRow> model_table(const Spectrum& spectrum, double w) {
  std::vector<ModelRow> rows;
  for (auto mode : {HessianMode::Isotropic, HessianMode::Fisher}) {
    for (const auto& model : {ConvergenceModel::a(mode), ConvergenceModel::b(mode), ConvergenceModel::c(mode),
                              ConvergenceModel::d(mode), ConvergenceModel::weighted(w, mode)}) {
      const auto opt = minimize_alpha_numeric(spectrum, model);
      rows.push_back({model, predicted_alpha(spectrum, model), opt.alpha, opt.t_min, opt.at_boundary});
    }
  }
  return rows;
}

}  // namespace infogeo
