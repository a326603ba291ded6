#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fnm/errors.hpp"

namespace fnm {

inline constexpr int kMaxDim = 3;

// Point in R^d, d <= 3. Unused trailing coordinates stay zero.
using Point = std::array<double, kMaxDim>;

// Multi-index alpha = (a1, a2, a3), same storage convention as Point.
using MultiIndex = std::array<int, kMaxDim>;

inline Point make_point(double x, double y = 0.0, double z = 0.0) {
  return Point{x, y, z};
}

inline MultiIndex make_index(int a, int b = 0, int c = 0) {
  return MultiIndex{a, b, c};
}

inline int order(const MultiIndex& a) { return a[0] + a[1] + a[2]; }

inline double dot(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Point& a, int dim) { return std::sqrt(dot(a, a, dim)); }

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double multi_factorial(const MultiIndex& a) {
  return factorial(a[0]) * factorial(a[1]) * factorial(a[2]);
}

// x^alpha
inline double monomial(const Point& x, const MultiIndex& a, int dim) {
  double v = 1.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < a[i]; ++j) v *= x[i];
  return v;
}

// d^alpha (x^beta) evaluated at x; zero when alpha exceeds beta anywhere.
inline double monomial_partial(const Point& x, const MultiIndex& beta,
                               const MultiIndex& alpha, int dim) {
  double v = 1.0;
  for (int i = 0; i < dim; ++i) {
    if (alpha[i] > beta[i]) return 0.0;
    for (int j = 0; j < alpha[i]; ++j) v *= (beta[i] - j);
    for (int j = 0; j < beta[i] - alpha[i]; ++j) v *= x[i];
  }
  return v;
}

// All multi-indices of exact order `ord` in `dim` variables, lexicographic.
inline std::vector<MultiIndex> multi_indices_of_order(int dim, int ord) {
  std::vector<MultiIndex> out;
  if (dim == 1) {
    out.push_back(make_index(ord));
    return out;
  }
  for (int a = ord; a >= 0; --a) {
    if (dim == 2) {
      out.push_back(make_index(a, ord - a));
    } else {
      for (int b = ord - a; b >= 0; --b)
        out.push_back(make_index(a, b, ord - a - b));
    }
  }
  return out;
}

inline std::vector<MultiIndex> multi_indices_up_to(int dim, int max_ord) {
  std::vector<MultiIndex> out;
  for (int o = 0; o <= max_ord; ++o) {
    auto level = multi_indices_of_order(dim, o);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// Deterministic pairwise summation; the reduction tree depends only on the
// element count, so results are bit-stable regardless of who computes them.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty input");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Spearman rank correlation; ties get average ranks.
inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("spearman_rho: need two equal-length series");
  auto ranks = [](const std::vector<double>& v) {
    const std::size_t m = v.size();
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(m);
    std::size_t i = 0;
    while (i < m) {
      std::size_t j = i;
      while (j + 1 < m && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) { mx += rx[i]; my += ry[i]; }
  mx /= n; my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------
// Exact integrals of the positive part of a cosine with linear phase.
// cosplus_antiderivative(u) = int_0^u max(cos s, 0) ds, odd and 2-per-period.
// ---------------------------------------------------------------------------

inline double cosplus_antiderivative(double u) {
  const double two_pi = 2.0 * M_PI;
  const double sgn = u < 0 ? -1.0 : 1.0;
  u = std::fabs(u);
  const double periods = std::floor(u / two_pi);
  double r = u - periods * two_pi;
  double h;
  if (r <= 0.5 * M_PI) h = std::sin(r);
  else if (r <= 1.5 * M_PI) h = 1.0;
  else h = 2.0 + std::sin(r);
  return sgn * (2.0 * periods + h);
}

// int_{v0}^{v1} max(cos(p v + c), 0) dv
inline double integral_cos_plus(double p, double c, double v0, double v1) {
  if (p == 0.0) return std::max(std::cos(c), 0.0) * (v1 - v0);
  return (cosplus_antiderivative(p * v1 + c) - cosplus_antiderivative(p * v0 + c)) / p;
}

// int_{v0}^{v1} max(-cos(p v + c), 0) dv  (= positive part of the flipped sign)
inline double integral_cos_minus(double p, double c, double v0, double v1) {
  return integral_cos_plus(p, c + M_PI, v0, v1);
}

inline double integral_abs_cos(double p, double c, double v0, double v1) {
  return integral_cos_plus(p, c, v0, v1) + integral_cos_minus(p, c, v0, v1);
}

// ---------------------------------------------------------------------------
// Piecewise-linear probability density on a 1D grid with exact inverse-CDF
// sampling. Used as the radial proposal in the spectral samplers.
// ---------------------------------------------------------------------------

class PiecewiseLinearDensity {
public:
  PiecewiseLinearDensity() = default;

  // nodes strictly increasing, values >= 0, not all zero.
  PiecewiseLinearDensity(std::vector<double> nodes, std::vector<double> values)
      : x_(std::move(nodes)), f_(std::move(values)) {
    if (x_.size() != f_.size() || x_.size() < 2)
      throw std::invalid_argument("PiecewiseLinearDensity: need matching nodes/values, >= 2");
    cdf_.assign(x_.size(), 0.0);
    for (std::size_t i = 1; i < x_.size(); ++i) {
      if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("PiecewiseLinearDensity: nodes not increasing");
      if (f_[i] < 0 || f_[i - 1] < 0) throw std::invalid_argument("PiecewiseLinearDensity: negative value");
      cdf_[i] = cdf_[i - 1] + 0.5 * (f_[i] + f_[i - 1]) * (x_[i] - x_[i - 1]);
    }
    mass_ = cdf_.back();
    if (!(mass_ > 0.0)) throw std::invalid_argument("PiecewiseLinearDensity: zero total mass");
  }

  double total_mass() const { return mass_; }

  // Inverse CDF at u in [0,1): solves the per-segment quadratic exactly.
  double sample(double u) const {
    const double target = u * mass_;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    std::size_t i = it == cdf_.begin() ? 0 : static_cast<std::size_t>(it - cdf_.begin() - 1);
    if (i >= x_.size() - 1) i = x_.size() - 2;
    const double a = x_[i], b = x_[i + 1], fa = f_[i], fb = f_[i + 1];
    const double rem = target - cdf_[i];
    const double h = b - a;
    const double slope = (fb - fa) / h;
    if (std::fabs(slope) < 1e-300) {
      if (fa <= 0.0) return a;
      return a + rem / fa;
    }
    // Solve fa*t + slope*t^2/2 = rem for t in [0,h].
    const double disc = fa * fa + 2.0 * slope * rem;
    const double t = (std::sqrt(std::max(disc, 0.0)) - fa) / slope;
    return a + std::clamp(t, 0.0, h);
  }

  double density(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    if (it == x_.begin() || it == x_.end()) return 0.0;
    const std::size_t i = static_cast<std::size_t>(it - x_.begin() - 1);
    const double t = (x - x_[i]) / (x_[i + 1] - x_[i]);
    return f_[i] + t * (f_[i + 1] - f_[i]);
  }

private:
  std::vector<double> x_, f_, cdf_;
  double mass_ = 0.0;
};

// ---------------------------------------------------------------------------
// Exact text round-trip for doubles via the C hexadecimal float form.
// ---------------------------------------------------------------------------

inline std::string double_to_hex(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return std::string(buf);
}

inline double hex_to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::invalid_argument("hex_to_double: unparsable '" + s + "'");
  return v;
}

} // namespace fnm
