#pragma once

// Name-addressable catalog: builds entries from a name and a parameter map.

#include <string>
#include <vector>

#include "warpcheck/profiles.hpp"

namespace warpcheck {

struct ParamSpec {
  std::string name;
  std::string constraint;  ///< e.g. "c>0"
  double default_value = 0.0;
};

struct CatalogInfo {
  std::string name;
  std::vector<ParamSpec> params;
  std::string domain;
  std::string description;
};

/// euclidean, schwarzschild, thm1, thm3, thm3-rcoord, family, cylinder.
const std::vector<CatalogInfo>& catalog_listing();

/// Throws DomainError for an unknown name, an unknown parameter, or a value
/// violating the parameter's constraint.
CatalogEntry make_entry(const std::string& name, const ParamMap& params = {}, double eps = kDefaultMargin);

}  // namespace warpcheck
