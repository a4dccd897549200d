// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gas/types.hpp"

namespace gas {

enum class Support { real, positive, unit_interval, circular };

enum class LinkKind { identity, log, logit };

// Link for one parameter given its support and whether linking was requested.
// Throws SpecError for a requested link on a real or circular parameter.
LinkKind link_for(Support support, bool linked);

// Per-parameter links of one distribution, resolved once from a mask.
class LinkSet {
 public:
  LinkSet() = default;
  LinkSet(std::span<const Support> supports, const std::vector<bool>& mask);

  int size() const { return size_; }
  LinkKind kind(int i) const { return kinds_[static_cast<std::size_t>(i)]; }
  bool linked(int i) const { return kind(i) != LinkKind::identity; }

  ParamVector to_linked(const ParamVector& natural) const;
  ParamVector to_natural(const ParamVector& linked) const;

  // d natural / d linked, evaluated at the natural value.
  ParamVector inverse_jacobian(const ParamVector& natural) const;

  // "log(mean)", "logit(prob)" or the bare name.
  std::string wrap_name(int i, const std::string& name) const;

 private:
  std::array<LinkKind, kMaxParams> kinds_{};
  int size_ = 0;
};

}  // namespace gas
