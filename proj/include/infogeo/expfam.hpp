#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "infogeo/hypergraph.hpp"
#include "infogeo/spectral.hpp"

namespace infogeo {

/// Largest node count handled by exact enumeration (2^20 states).
inline constexpr std::size_t kMaxEnumerationNodes = 20;

/// Boltzmann model p(s) ∝ exp(sum_e J_e prod_{i in e} s_i + sum_i h_i s_i)
/// over spins s_i in {-1,+1}.
///
/// The natural parameters are the edge couplings. Node fields h_i join the
/// parameter vector (appended after the couplings) only when
/// `fields_as_parameters` is set; otherwise they are held fixed.
class ExpFamilyModel {
 public:
  ExpFamilyModel(Hypergraph host, std::vector<double> couplings, std::vector<double> fields,
                 bool fields_as_parameters = false);

  /// Uniform coupling J on every edge, zero fields.
  static ExpFamilyModel uniform(Hypergraph host, double coupling);

  const Hypergraph& host() const noexcept { return host_; }
  const std::vector<double>& couplings() const noexcept { return couplings_; }
  const std::vector<double>& fields() const noexcept { return fields_; }
  bool fields_as_parameters() const noexcept { return fields_as_parameters_; }

  /// Length of the sufficient-statistic / parameter vector.
  std::size_t parameter_count() const noexcept;
  /// Parameter vector in statistic order (couplings, then fields if enabled).
  std::vector<double> parameters() const;
  /// Copy with the parameter vector replaced.
  ExpFamilyModel with_parameters(std::span<const double> theta) const;

 private:
  Hypergraph host_;
  std::vector<double> couplings_;
  std::vector<double> fields_;
  bool fields_as_parameters_;
};

/// Edge products (then node spins, if fields are parameters) for one state.
/// Throws DomainError for a wrong-length state or entries other than ±1.
std::vector<double> sufficient_statistics(const ExpFamilyModel& model, std::span<const int> state);

/// ln Z by enumeration with a max-shift. Throws ResourceError above 20 nodes.
double log_partition(const ExpFamilyModel& model);

/// Mean of the sufficient statistics under the model.
Vector mean_statistics(const ExpFamilyModel& model);

/// Exact covariance of the sufficient statistics, i.e. the Fisher information
/// in natural parameters.
Matrix fisher(const ExpFamilyModel& model);

}  // namespace infogeo
