// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/links.hpp"

#include <cmath>

#include "gas/errors.hpp"

namespace gas {

LinkKind link_for(Support support, bool linked) {
  if (!linked) return LinkKind::identity;
  switch (support) {
    case Support::positive:
      return LinkKind::log;
    case Support::unit_interval:
      return LinkKind::logit;
    case Support::real:
    case Support::circular:
      break;
  }
  throw SpecError("link requested for a parameter with real or circular support");
}

LinkSet::LinkSet(std::span<const Support> supports, const std::vector<bool>& mask) {
  if (mask.size() != supports.size()) throw SpecError("link mask length does not match parameter count");
  if (supports.size() > static_cast<std::size_t>(kMaxParams)) throw SpecError("too many parameters");
  size_ = static_cast<int>(supports.size());
  for (std::size_t i = 0; i < supports.size(); ++i) kinds_[i] = link_for(supports[i], mask[i]);
}

ParamVector LinkSet::to_linked(const ParamVector& natural) const {
  ParamVector out(size_);
  for (int i = 0; i < size_; ++i) {
    const double v = natural[i];
    switch (kind(i)) {
      case LinkKind::identity: out[i] = v; break;
      case LinkKind::log: out[i] = std::log(v); break;
      case LinkKind::logit: out[i] = std::log(v) - std::log1p(-v); break;
    }
  }
  return out;
}

ParamVector LinkSet::to_natural(const ParamVector& linked) const {
  ParamVector out(size_);
  for (int i = 0; i < size_; ++i) {
    const double v = linked[i];
    switch (kind(i)) {
      case LinkKind::identity: out[i] = v; break;
      case LinkKind::log: out[i] = std::exp(v); break;
      case LinkKind::logit:
        out[i] = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
        break;
    }
  }
  return out;
}

ParamVector LinkSet::inverse_jacobian(const ParamVector& natural) const {
  ParamVector out(size_);
  for (int i = 0; i < size_; ++i) {
    const double v = natural[i];
    switch (kind(i)) {
      case LinkKind::identity: out[i] = 1.0; break;
      case LinkKind::log: out[i] = v; break;
      case LinkKind::logit: out[i] = v * (1.0 - v); break;
    }
  }
  return out;
}

std::string LinkSet::wrap_name(int i, const std::string& name) const {
  switch (kind(i)) {
    case LinkKind::log: return "log(" + name + ")";
    case LinkKind::logit: return "logit(" + name + ")";
    case LinkKind::identity: break;
  }
  return name;
}

}  // namespace gas
