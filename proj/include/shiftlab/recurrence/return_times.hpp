#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "shiftlab/core/metric.hpp"
#include "shiftlab/core/sequence.hpp"

namespace shiftlab {

/// First hitting time in [1, horizon], or censored at the horizon.
struct HittingTime {
  std::uint64_t value = 0;
  bool censored = true;

  friend bool operator==(const HittingTime&, const HittingTime&) = default;
};

/// Closed-ball membership uses d_hat <= r + r/100 with the metric truncated at
/// tolerance r/100.
inline double membership_tolerance(double r) { return r / 100.0; }

namespace detail {

inline constexpr std::int64_t kChunk = 1 << 16;

}  // namespace detail

/// tau_r(x, y) for several radii at once: the least k in [1, horizon] with
/// T^k x in the closed ball around y. Radii must be strictly decreasing.
/// Times are non-decreasing along the radii, so coarse scales resolve first
/// and one pass over the orbit serves every scale.
inline std::vector<HittingTime> entrance_times(const BilateralSequence& x, const BilateralSequence& y,
                                               const std::vector<double>& radii, std::uint64_t horizon) {
  require_same_alphabet(x, y);
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!(radii[j] > 0.0)) throw DomainError("radius must be positive");
    if (j > 0 && !(radii[j] < radii[j - 1])) throw DomainError("radii must be strictly decreasing");
  }
  const std::size_t J = radii.size();
  std::vector<HittingTime> out(J);
  if (J == 0) return out;

  std::vector<int> depth(J);
  std::vector<double> thr(J);
  for (std::size_t j = 0; j < J; ++j) {
    const double tol = membership_tolerance(radii[j]);
    depth[j] = truncation_depth(tol);
    thr[j] = radii[j] + tol;
  }
  const int dmax = depth.back();
  const AlphabetSpec& a = x.alphabet();
  const CoordinateWindow yw(y, -dmax, dmax);
  std::vector<double> weight(static_cast<std::size_t>(dmax) + 1);
  for (int l = 0; l <= dmax; ++l) weight[static_cast<std::size_t>(l)] = coordinate_weight(l);

  std::size_t p = 0;  // first unresolved scale
  std::vector<double> buf;
  const auto H = static_cast<std::int64_t>(horizon);
  for (std::int64_t k0 = 1; k0 <= H && p < J; k0 += detail::kChunk) {
    const std::int64_t k1 = std::min(H, k0 + detail::kChunk - 1);
    // (T^k x)_n = x_{n-k}; n in [-dmax, dmax] and k in [k0, k1]
    const std::int64_t lo = -dmax - k1;
    buf.resize(static_cast<std::size_t>(dmax - k0 - lo + 1));
    x.realize(lo, buf);
    for (std::int64_t k = k0; k <= k1 && p < J; ++k) {
      const double* xs = buf.data() + (-k - lo);  // xs[n] = x_{n-k}
      double sum = bounded_rho(a.rho(xs[0], yw(0)));
      for (int level = 0;;) {
        if (sum > thr[p]) break;
        while (p < J && depth[p] == level && sum <= thr[p]) {
          out[p] = {static_cast<std::uint64_t>(k), false};
          ++p;
        }
        if (p == J || (depth[p] == level)) break;
        ++level;
        sum += weight[static_cast<std::size_t>(level)] *
               (bounded_rho(a.rho(xs[-level], yw(-level))) + bounded_rho(a.rho(xs[level], yw(level))));
      }
    }
  }
  for (std::size_t j = p; j < J; ++j) out[j] = {horizon, true};
  return out;
}

inline std::vector<HittingTime> return_times(const BilateralSequence& x, const std::vector<double>& radii,
                                             std::uint64_t horizon) {
  return entrance_times(x, x, radii, horizon);
}

/// tau_r(x) = min{k >= 1 : T^k x in the closed ball B(x, r)}.
inline HittingTime return_time(const BilateralSequence& x, double r, std::uint64_t horizon) {
  return return_times(x, {r}, horizon).front();
}

/// tau_r(x, y) = min{k >= 1 : T^k x in the closed ball B(y, r)}.
inline HittingTime entrance_time(const BilateralSequence& x, const BilateralSequence& y, double r,
                                 std::uint64_t horizon) {
  return entrance_times(x, y, {r}, horizon).front();
}

/// R_n(x, eps) = min{k >= 1 : d(T^{k+i} x, T^i x) <= eps for 0 <= i < n}.
inline HittingTime dynamical_return_time(const BilateralSequence& x, std::size_t n, double eps,
                                         std::uint64_t horizon) {
  if (n < 1) throw DomainError("dynamical return time needs n >= 1");
  if (!(eps > 0.0)) throw DomainError("radius must be positive");
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  const double tol = membership_tolerance(eps);
  const int D = truncation_depth(tol);
  const double thr = eps + tol;
  const AlphabetSpec& a = x.alphabet();
  const auto nn = static_cast<std::int64_t>(n);
  // constraint i compares x_{j-k} with x_j for j = m - i, |m| <= D
  const CoordinateWindow xw(x, -(nn - 1) - D, D);
  const auto H = static_cast<std::int64_t>(horizon);
  std::vector<double> buf;
  for (std::int64_t k0 = 1; k0 <= H; k0 += detail::kChunk) {
    const std::int64_t k1 = std::min(H, k0 + detail::kChunk - 1);
    const std::int64_t lo = -(nn - 1) - D - k1;
    buf.resize(static_cast<std::size_t>(D - k0 - lo + 1));
    x.realize(lo, buf);
    for (std::int64_t k = k0; k <= k1; ++k) {
      bool inside = true;
      for (std::int64_t i = 0; i < nn && inside; ++i) {
        auto term = [&](std::int64_t m) {
          const std::int64_t j = m - i;
          return bounded_rho(a.rho(buf[static_cast<std::size_t>(j - k - lo)], xw(j)));
        };
        double sum = term(0);
        for (std::int64_t l = 1; l <= D && sum <= thr; ++l) sum += coordinate_weight(l) * (term(-l) + term(l));
        inside = sum <= thr;
      }
      if (inside) return {static_cast<std::uint64_t>(k), false};
    }
  }
  return {horizon, true};
}

}  // namespace shiftlab
