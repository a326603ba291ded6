#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "fnm/errors.hpp"

namespace fnm {

enum class ActKind { relu_pow, bspline, cosine };

// relu_pow and bspline carry a degree k; cosine does not.
struct Activation {
  ActKind kind = ActKind::relu_pow;
  int degree = 1;

  static Activation relu_pow(int k) {
    check_degree(k);
    return Activation{ActKind::relu_pow, k};
  }
  static Activation bspline(int k) {
    check_degree(k);
    return Activation{ActKind::bspline, k};
  }
  static Activation cosine() { return Activation{ActKind::cosine, 0}; }

  static void check_degree(int k) {
    if (k < 0 || k > 8) throw std::invalid_argument("Activation: degree must be in [0, 8]");
  }

  // Largest j for which sigma^(j) is defined pointwise (one-sided values at
  // the measure-zero knot set are allowed at the top order).
  int max_derivative() const {
    switch (kind) {
      case ActKind::relu_pow: return degree;
      case ActKind::bspline: return degree;
      case ActKind::cosine: return 1 << 20;
    }
    return 0;
  }
};

// j-th derivative of t -> [t_+]^k. For j = k the result is the step
// k! * 1{t > 0}; the value at t = 0 itself is 0 (right-from-below convention
// fixed for reproducibility, never hit by Gauss nodes in assembled forms).
inline double relu_pow_deriv(double t, int k, int j) {
  Activation::check_degree(k);
  if (j < 0 || j > k) throw std::invalid_argument("relu_pow_deriv: need 0 <= j <= k");
  if (t <= 0.0) return 0.0;
  double c = 1.0;
  for (int i = 0; i < j; ++i) c *= (k - i);
  double p = 1.0;
  for (int i = 0; i < k - j; ++i) p *= t;
  return c * p;
}

namespace detail {

// Cardinal B-spline by the two-term recurrence; b^0 = 1 on [0,1).
inline double bspline_value(int k, double x) {
  if (x < 0.0 || x >= k + 1) return 0.0;
  if (k == 0) return 1.0;
  return (x / k) * bspline_value(k - 1, x) + ((k + 1 - x) / k) * bspline_value(k - 1, x - 1.0);
}

inline double binomial(int n, int r) {
  double v = 1.0;
  for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}

} // namespace detail

// j-th derivative of b^k via j-fold differencing of degree k-j splines:
// (b^k)^(j)(x) = sum_i (-1)^i C(j,i) b^{k-j}(x - i).
inline double bspline_eval(int k, double x, int j = 0) {
  Activation::check_degree(k);
  if (j < 0 || j > k) throw std::invalid_argument("bspline_eval: need 0 <= j <= k");
  double s = 0.0;
  for (int i = 0; i <= j; ++i) {
    const double c = (i % 2 ? -1.0 : 1.0) * detail::binomial(j, i);
    s += c * detail::bspline_value(k - j, x - i);
  }
  return s;
}

// sigma^(j)(t) for any activation.
inline double activation_eval(const Activation& act, double t, int j = 0) {
  switch (act.kind) {
    case ActKind::relu_pow: return relu_pow_deriv(t, act.degree, j);
    case ActKind::bspline: return bspline_eval(act.degree, t, j);
    case ActKind::cosine: return std::cos(t + 0.5 * M_PI * j);
  }
  return 0.0;
}

struct ReluTerm {
  double weight; // w_i in b^k(x) = (k+1) sum_i w_i (i - x)_+^k
  int shift;     // i
};

// The k+2 pairs of the exact expansion b^k(x) = (k+1) sum w_i (i-x)_+^k,
// w_i = prod_{j != i} 1/(i-j).
inline std::vector<ReluTerm> bspline_to_relu(int k) {
  Activation::check_degree(k);
  if (k < 1) throw std::invalid_argument("bspline_to_relu: need k >= 1");
  std::vector<ReluTerm> terms;
  terms.reserve(static_cast<std::size_t>(k) + 2);
  for (int i = 0; i <= k + 1; ++i) {
    double w = 1.0;
    for (int j = 0; j <= k + 1; ++j)
      if (j != i) w /= static_cast<double>(i - j);
    terms.push_back({w, i});
  }
  return terms;
}

// Plain Fourier transform of b^k: int b^k(t) e^{-iat} dt
//   = ((1 - e^{-ia}) / (ia))^{k+1} = ((2/a) sin(a/2))^{k+1} e^{-ia(k+1)/2},
// evaluated through the sinc form so a -> 0 limits to 1.
inline std::complex<double> bspline_fourier(int k, double a) {
  Activation::check_degree(k);
  const double half = 0.5 * a;
  const double s = std::fabs(half) < 1e-8
                       ? 1.0 - half * half / 6.0 + half * half * half * half / 120.0
                       : std::sin(half) / half;
  const double mod = std::pow(s, k + 1); // may be negative for a beyond 2*pi
  const double phase = -half * (k + 1);
  return {mod * std::cos(phase), mod * std::sin(phase)};
}

} // namespace fnm
