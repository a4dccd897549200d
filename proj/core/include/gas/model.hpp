// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gas/distribution.hpp"
#include "gas/links.hpp"

namespace gas {

enum class Scaling {
  unit,
  fisher_inv,
  fisher_inv_sqrt,
  full_fisher_inv,
  full_fisher_inv_sqrt,
  diag_fisher_inv,
  diag_fisher_inv_sqrt,
};

enum class Regress { joint, sep };

std::string_view to_string(Scaling scaling);
std::string_view to_string(Regress regress);
std::optional<Scaling> parse_scaling(std::string_view text);
std::optional<Regress> parse_regress(std::string_view text);

// Everything that defines a model short of coefficient values. Vectors are
// indexed by distribution parameter. Orders and regressor counts of static
// parameters are ignored.
struct ModelSpec {
  const DistributionDescriptor* distr = nullptr;
  Scaling scaling = Scaling::unit;
  Regress regress = Regress::joint;
  std::vector<int> p;
  std::vector<int> q;
  std::vector<int> m;
  std::vector<bool> par_static;
  std::vector<bool> par_link;
  // Initial time-varying values in link space; entries of static parameters are unused.
  std::optional<std::vector<double>> par_init;

  // Defaults: first parameter time-varying with p = q = 1, the rest static,
  // log/logistic links on time-varying parameters with bounded support.
  static ModelSpec make(std::string_view distr, std::string_view param = {});

  int param_count() const { return distr ? distr->param_count() : 0; }
  bool time_varying(int i) const { return !par_static[static_cast<std::size_t>(i)]; }
  int score_order(int i) const { return time_varying(i) ? p[static_cast<std::size_t>(i)] : 0; }
  int ar_order(int i) const { return time_varying(i) ? q[static_cast<std::size_t>(i)] : 0; }
  int regressor_count(int i) const { return time_varying(i) ? m[static_cast<std::size_t>(i)] : 0; }
  std::vector<int> tv_params() const;
  // Rows initialized rather than computed: max over time-varying parameters of max(P, Q).
  int init_rows() const;
  LinkSet links() const;

  // Re-derives par_link from the descriptor defaults for the current par_static.
  void reset_links();

  // Throws SpecError describing the first inconsistency found.
  void validate() const;
};

// "Poisson Distribution / Mean Parametrization / Unit Scaling"
std::string describe(const ModelSpec& spec);

// Position of one parameter's coefficients inside the full coefficient vector.
struct ParamBlock {
  int param = 0;
  bool time_varying = false;
  int omega = -1;
  int beta = -1;
  int n_beta = 0;
  int alpha = -1;
  int n_alpha = 0;
  int phi = -1;
  int n_phi = 0;
  int level = -1;  // static parameters only
};

// Coefficient ordering and canonical names. Time-varying parameters come
// first, each as (omega, beta1..M, alpha1..P, phi1..Q); static parameter
// levels follow in parameter order.
class CoefLayout {
 public:
  CoefLayout() = default;
  explicit CoefLayout(const ModelSpec& spec);

  int size() const { return size_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<ParamBlock>& blocks() const { return blocks_; }
  const ParamBlock& block(int param) const { return blocks_[static_cast<std::size_t>(param)]; }
  // -1 when absent.
  int index_of(std::string_view name) const;

 private:
  int size_ = 0;
  std::vector<ParamBlock> blocks_;
  std::vector<std::string> names_;
};

}  // namespace gas
