#include "plgd/oracle.hpp"

#include <cmath>
#include <vector>

namespace plgd {

Vector sample_ball(std::size_t dimension, double radius, Xoshiro256& rng) {
  if (dimension == 0)
    throw std::invalid_argument("sample_ball: dimension must be >= 1");
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("sample_ball: radius must be finite and >= 0");

  std::vector<double> direction(dimension);
  double sq = 0.0;
  for (auto& d : direction) {
    d = rng.next_gaussian();
    sq += d * d;
  }
  const double u = rng.next_double();
  const double gnorm = std::sqrt(sq);
  if (gnorm == 0.0)  // measure-zero degenerate direction; the origin is in the ball
    return Vector::unchecked(std::vector<double>(dimension, 0.0));

  const double scale = radius * std::pow(u, 1.0 / static_cast<double>(dimension)) / gnorm;
  for (auto& d : direction) d *= scale;
  return Vector::unchecked(std::move(direction));
}

NoisyOracle::Query NoisyOracle::query(const Vector& x,
                                      std::optional<double> requested_alpha) {
  if (x.size() != objective_.dimension)
    throw std::invalid_argument("NoisyOracle: point dimension mismatch");
  if (mode_.kind == OracleModeKind::OnRequest) {
    if (!requested_alpha)
      throw std::invalid_argument(
          "NoisyOracle: accuracy-on-request mode needs a requested level");
    if (!(*requested_alpha >= 0.0) || !std::isfinite(*requested_alpha))
      throw std::invalid_argument("NoisyOracle: requested level must be finite and >= 0");
  } else if (requested_alpha) {
    throw std::invalid_argument(
        "NoisyOracle: requested level is only valid in accuracy-on-request mode");
  }

  Vector exact = objective_.exact_gradient(x);
  if (exact.size() != objective_.dimension)
    throw std::invalid_argument("NoisyOracle: gradient dimension mismatch");
  const double exact_norm = euclidean_norm(exact);

  double applied = 0.0;
  switch (mode_.kind) {
    case OracleModeKind::Exact:
      return {std::move(exact), exact_norm, 0.0};
    case OracleModeKind::FixedRelative:
      applied = mode_.alpha;
      break;
    case OracleModeKind::OnRequest:
      applied = std::max(*requested_alpha, mode_.alpha);  // clamp up to the floor
      break;
  }

  const double radius = applied * exact_norm;
  Vector noise = sample_ball(objective_.dimension, radius, rng_);

  std::vector<double> noisy(x.size());
  for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] = exact[i] + noise[i];

  // The certificate |g - grad f| <= alpha_eff * |grad f| must hold in the
  // same double arithmetic a caller would use to verify it. Rounding in the
  // add/normalize chain can overshoot by a few ulps; shrink the noise until
  // the recomputed residual passes. The shrink factor escalates so rounding
  // cannot stall the loop, and the noise collapses to zero in the limit.
  auto residual_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < noisy.size(); ++i) {
      const double d = noisy[i] - exact[i];
      s += d * d;
    }
    return std::sqrt(s);
  };
  double shrink = 1.0 - 0x1.0p-50;
  int passes = 0;
  while (residual_norm() > radius) {
    if (++passes > 120) {
      for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] = exact[i];
      break;
    }
    for (std::size_t i = 0; i < noisy.size(); ++i)
      noisy[i] = exact[i] + (noisy[i] - exact[i]) * shrink;
    shrink *= shrink;
  }

  return {Vector::unchecked(std::move(noisy)), exact_norm, applied};
}

}  // namespace plgd
