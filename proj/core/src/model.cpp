// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "gas/errors.hpp"

namespace gas {

std::string_view to_string(Scaling scaling) {
  switch (scaling) {
    case Scaling::unit: return "unit";
    case Scaling::fisher_inv: return "fisher_inv";
    case Scaling::fisher_inv_sqrt: return "fisher_inv_sqrt";
    case Scaling::full_fisher_inv: return "full_fisher_inv";
    case Scaling::full_fisher_inv_sqrt: return "full_fisher_inv_sqrt";
    case Scaling::diag_fisher_inv: return "diag_fisher_inv";
    case Scaling::diag_fisher_inv_sqrt: return "diag_fisher_inv_sqrt";
  }
  return "?";
}

std::string_view to_string(Regress regress) { return regress == Regress::joint ? "joint" : "sep"; }

std::optional<Scaling> parse_scaling(std::string_view text) {
  for (auto s : {Scaling::unit, Scaling::fisher_inv, Scaling::fisher_inv_sqrt, Scaling::full_fisher_inv,
                 Scaling::full_fisher_inv_sqrt, Scaling::diag_fisher_inv, Scaling::diag_fisher_inv_sqrt}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::optional<Regress> parse_regress(std::string_view text) {
  if (text == "joint") return Regress::joint;
  if (text == "sep") return Regress::sep;
  return std::nullopt;
}

ModelSpec ModelSpec::make(std::string_view distr, std::string_view param) {
  ModelSpec spec;
  spec.distr = &find_distribution(distr, param);
  const auto k = static_cast<std::size_t>(spec.distr->param_count());
  spec.p.assign(k, 1);
  spec.q.assign(k, 1);
  spec.m.assign(k, 0);
  spec.par_static.assign(k, true);
  spec.par_static[0] = false;
  spec.reset_links();
  return spec;
}

std::vector<int> ModelSpec::tv_params() const {
  std::vector<int> out;
  for (int i = 0; i < param_count(); ++i) {
    if (time_varying(i)) out.push_back(i);
  }
  return out;
}

int ModelSpec::init_rows() const {
  int rows = 0;
  for (int i = 0; i < param_count(); ++i) rows = std::max({rows, score_order(i), ar_order(i)});
  return rows;
}

LinkSet ModelSpec::links() const { return LinkSet(distr->param_supports, par_link); }

void ModelSpec::reset_links() {
  const auto defaults = distr->default_links();
  par_link.assign(defaults.size(), false);
  for (std::size_t i = 0; i < defaults.size(); ++i) par_link[i] = defaults[i] && !par_static[i];
}

void ModelSpec::validate() const {
  if (distr == nullptr) throw SpecError("model has no distribution");
  const auto k = static_cast<std::size_t>(distr->param_count());
  auto check_len = [&](std::size_t n, const char* what) {
    if (n != k) {
      throw SpecError(std::string(what) + " must have one entry per parameter (" + std::to_string(k) + ")");
    }
  };
  check_len(p.size(), "p");
  check_len(q.size(), "q");
  check_len(m.size(), "m");
  check_len(par_static.size(), "par_static");
  check_len(par_link.size(), "par_link");
  if (par_init) check_len(par_init->size(), "par_init");
  for (std::size_t i = 0; i < k; ++i) {
    if (p[i] < 0 || q[i] < 0 || m[i] < 0) throw SpecError("orders and regressor counts must be nonnegative");
    if (!par_static[i] && distr->static_only[i]) {
      throw SpecError("parameter '" + distr->param_names[i] + "' of " + distr->label + "/" + distr->parametrization +
                      " can only be static");
    }
  }
  LinkSet(distr->param_supports, par_link);
}

std::string describe(const ModelSpec& spec) {
  std::string scaling;
  bool upper = true;
  for (char c : to_string(spec.scaling)) {
    if (c == '_') {
      scaling += ' ';
      upper = true;
      continue;
    }
    scaling += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
    upper = false;
  }
  return spec.distr->title + " Distribution / " + spec.distr->param_title + " Parametrization / " + scaling +
         " Scaling";
}

CoefLayout::CoefLayout(const ModelSpec& spec) {
  spec.validate();
  const LinkSet links = spec.links();
  const int k = spec.param_count();
  blocks_.resize(static_cast<std::size_t>(k));
  int pos = 0;
  for (int i = 0; i < k; ++i) {
    ParamBlock& b = blocks_[static_cast<std::size_t>(i)];
    b.param = i;
    b.time_varying = spec.time_varying(i);
    if (!b.time_varying) continue;
    const std::string base = links.wrap_name(i, spec.distr->param_names[static_cast<std::size_t>(i)]);
    b.omega = pos++;
    names_.push_back(base + "_omega");
    b.beta = pos;
    b.n_beta = spec.regressor_count(i);
    for (int j = 1; j <= b.n_beta; ++j) names_.push_back(base + "_beta" + std::to_string(j));
    pos += b.n_beta;
    b.alpha = pos;
    b.n_alpha = spec.score_order(i);
    for (int j = 1; j <= b.n_alpha; ++j) names_.push_back(base + "_alpha" + std::to_string(j));
    pos += b.n_alpha;
    b.phi = pos;
    b.n_phi = spec.ar_order(i);
    for (int j = 1; j <= b.n_phi; ++j) names_.push_back(base + "_phi" + std::to_string(j));
    pos += b.n_phi;
  }
  for (int i = 0; i < k; ++i) {
    ParamBlock& b = blocks_[static_cast<std::size_t>(i)];
    if (b.time_varying) continue;
    b.level = pos++;
    names_.push_back(links.wrap_name(i, spec.distr->param_names[static_cast<std::size_t>(i)]));
  }
  size_ = pos;
  std::set<std::string> unique(names_.begin(), names_.end());
  if (unique.size() != names_.size()) throw SpecError("coefficient names are not unique");
}

int CoefLayout::index_of(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

}  // namespace gas
