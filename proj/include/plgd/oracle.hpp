#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "plgd/objective.hpp"
#include "plgd/rng.hpp"
#include "plgd/vector.hpp"

namespace plgd {

enum class OracleModeKind { Exact, FixedRelative, OnRequest };

// Exact: the true gradient.
// FixedRelative(alpha): gradient plus noise drawn uniformly from the ball of
//   radius alpha * |grad f(x)|. Levels >= 0.5 are allowed for experiment
//   replication only; the adaptive solvers' assumed levels stay in [0, 0.5).
// OnRequest(alpha_floor): accuracy-on-request; each query names a level and
//   requests below the floor are clamped up to it.
struct OracleMode {
  OracleModeKind kind = OracleModeKind::Exact;
  double alpha = 0.0;  // fixed level, or the floor for OnRequest

  static OracleMode exact() { return {OracleModeKind::Exact, 0.0}; }
  static OracleMode fixed_relative(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
      throw std::invalid_argument("OracleMode: alpha must be finite and >= 0");
    return {OracleModeKind::FixedRelative, alpha};
  }
  static OracleMode on_request(double alpha_floor) {
    if (!(alpha_floor >= 0.0) || !std::isfinite(alpha_floor))
      throw std::invalid_argument("OracleMode: alpha_floor must be finite and >= 0");
    return {OracleModeKind::OnRequest, alpha_floor};
  }
};

// Uniform sample from the closed Euclidean ball: Gaussian direction scaled by
// radius * U^(1/n). The returned norm never exceeds the radius.
Vector sample_ball(std::size_t dimension, double radius, Xoshiro256& rng);

// Gradient source with relative error. Every emitted gradient g satisfies
// |g - grad f(x)| <= alpha_eff * |grad f(x)| as evaluated in double
// arithmetic, not merely in expectation; the noise vanishes at stationary
// points. One oracle owns one generator; do not share across runs.
class NoisyOracle {
 public:
  struct Query {
    Vector gradient;       // the noisy gradient
    double exact_norm;     // |grad f(x)| at the query point
    double applied_alpha;  // error level actually applied
  };

  NoisyOracle(Objective objective, OracleMode mode, std::uint64_t seed)
      : objective_(std::move(objective)), mode_(mode), rng_(seed) {}

  // requested_alpha must be provided iff the mode is OnRequest.
  Query query(const Vector& x, std::optional<double> requested_alpha = std::nullopt);

  const Objective& objective() const { return objective_; }
  const OracleMode& mode() const { return mode_; }
  static constexpr const char* generator_name() { return Xoshiro256::name(); }

 private:
  Objective objective_;
  OracleMode mode_;
  Xoshiro256 rng_;
};

inline Vector noisy_gradient(NoisyOracle& oracle, const Vector& x,
                             std::optional<double> requested_alpha = std::nullopt) {
  return oracle.query(x, requested_alpha).gradient;
}

}  // namespace plgd
