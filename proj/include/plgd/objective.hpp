#pragma once

#include <functional>
#include <optional>
#include <string>

#include "plgd/vector.hpp"

namespace plgd {

// A differentiable objective with an exact gradient. f_star, l_hint and
// mu_hint are metadata used by reporting and bound calculators; the solvers
// never read them except to validate the L_min >= mu input contract.
struct Objective {
  std::size_t dimension = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> exact_gradient;
  std::optional<double> f_star;
  std::optional<double> l_hint;
  std::optional<double> mu_hint;
  std::string name;
};

}  // namespace plgd
