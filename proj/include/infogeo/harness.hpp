#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "infogeo/dynamics.hpp"
#include "infogeo/hypergraph.hpp"
#include "infogeo/regime.hpp"

namespace infogeo {

/// Default coupling grid: seven strengths in [0.1, 1.5].
const std::vector<double>& default_couplings();

struct SweepConfig {
  std::vector<TopologyId> topologies = catalog();
  std::vector<double> couplings = default_couplings();
  ConvergenceModel model = ConvergenceModel::a();
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct SweepRecord {
  RegimeAnalysis regime;
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  double alpha_spread = 0.0;
  double trace_ratio = 0.0;
  double deviation_fraction = 0.0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct SweepSummary {
  std::size_t runs = 0;
  double mean_abs_err = 0.0;
  double max_abs_err = 0.0;
  std::size_t classical = 0;  // c* = 0
  std::size_t mixed = 0;      // c* > 0
  std::size_t boundary = 0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  SweepSummary summary;
};

/// One record for a (topology, coupling) pair. The directional fields use
/// beta = beta_of_alpha(alpha_pred); alpha_spread is 0 when that beta is 0.
SweepRecord analyze_observer(const TopologyId& topology, double coupling,
                             const ConvergenceModel& model = ConvergenceModel::a());

/// Records in catalog order, then ascending coupling; independent of the
/// thread count. Throws DomainError for an invalid config and SweepError
/// (naming the configuration) if any record fails.
SweepResult run_sweep(const SweepConfig& config);

SweepSummary summarize(const std::vector<SweepRecord>& records);

enum class ReportFormat { Csv, Json, Svg };

ReportFormat parse_format(std::string_view name);

/// CSV column order of emit_report / compare_golden.
const std::vector<std::string>& report_columns();

/// CSV (10 significant digits), JSON (round-trip precision) or an SVG of the
/// T(c) curves of `model` over alpha. Throws DomainError on empty input.
std::string emit_report(const std::vector<SweepRecord>& records, ReportFormat format,
                        const ConvergenceModel& model = ConvergenceModel::a());

/// Iteration curve of empirical_alpha as CSV (alpha,c,eta,iterations,converged),
/// JSON or an SVG line chart.
std::string emit_curve(const EmpiricalAlpha& result, ReportFormat format);

/// Inverse of the JSON report. Throws SchemaError on missing fields.
std::vector<SweepRecord> parse_json_report(std::string_view json);

/// |actual - expected| <= abs + rel |expected|.
struct Tolerance {
  double abs = 0.0;
  double rel = 0.0;
};

/// Tolerance used for columns without an explicit entry.
inline constexpr Tolerance kDefaultTolerance{1e-12, 1e-9};

/// Parses "column=abs" or "column=abs:rel".
std::pair<std::string, Tolerance> parse_tolerance(std::string_view text);

struct GoldenComparison {
  bool pass = true;
  std::size_t cells = 0;
  std::vector<std::string> diffs;
};

/// Checks every cell of a golden CSV against the matching record.
///
/// The golden file must carry `topology` and `J`; any other subset of the
/// report columns may be present, and empty cells are skipped. Golden rows
/// with no matching record are reported as diffs. Throws SchemaError for an
/// unknown column or malformed row.
GoldenComparison compare_golden(const std::vector<SweepRecord>& records, std::string_view golden_csv,
                                const std::map<std::string, Tolerance>& tolerances = {});

/// Numeric minimiser of each convergence model next to its closed form.
struct ModelRow {
  ConvergenceModel model;
  double alpha_pred = 0.0;
  double alpha_num = 0.0;
  double t_min = 0.0;
  bool at_boundary = false;
};

/// Models A, B, C, D and W(w) under both Hessian modes.
std::vector<ModelRow> model_table(const Spectrum& spectrum, double w = 1.0);

}  // namespace infogeo
