#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fnm/errors.hpp"
#include "fnm/numeric.hpp"
#include "fnm/rng.hpp"

namespace fnm {

// Axis-aligned box in R^d, d in {1,2,3}.
struct Domain {
  int dim = 1;
  Point lower{0.0, 0.0, 0.0};
  Point upper{1.0, 0.0, 0.0};

  Domain() = default;
  Domain(int d, Point lo, Point hi) : dim(d), lower(lo), upper(hi) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Domain: dim must be 1, 2 or 3");
    for (int i = 0; i < dim; ++i)
      if (!(lower[i] < upper[i])) throw std::invalid_argument("Domain: lower must be < upper");
  }

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= upper[i] - lower[i];
    return v;
  }

  double surface() const {
    if (dim == 1) return 2.0;
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      double face = 1.0;
      for (int j = 0; j < dim; ++j)
        if (j != i) face *= upper[j] - lower[j];
      s += 2.0 * face;
    }
    return s;
  }

  // T = max_{x in closure} ||x||: attained at the corner of componentwise
  // largest magnitude.
  double radius_bound() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double m = std::max(std::fabs(lower[i]), std::fabs(upper[i]));
      s += m * m;
    }
    return std::sqrt(s);
  }

  bool contains(const Point& x, double pad = 0.0) const {
    for (int i = 0; i < dim; ++i)
      if (x[i] < lower[i] - pad || x[i] > upper[i] + pad) return false;
    return true;
  }
};

inline Domain unit_box(int dim) {
  Point hi{0, 0, 0};
  for (int i = 0; i < dim; ++i) hi[i] = 1.0;
  return Domain(dim, Point{0, 0, 0}, hi);
}

struct QuadratureRule {
  enum class Kind { interior, boundary };

  Kind kind = Kind::interior;
  int dim = 1;
  std::vector<Point> nodes;
  std::vector<double> weights;
  std::vector<Point> normals; // boundary rules only, outward unit vectors

  std::size_t size() const { return nodes.size(); }

  void validate(const Domain& domain) const {
    if (nodes.size() != weights.size()) throw std::invalid_argument("QuadratureRule: node/weight count mismatch");
    double wsum = 0.0;
    for (double w : weights) {
      if (!(w > 0.0)) throw std::invalid_argument("QuadratureRule: weights must be positive");
      wsum += w;
    }
    const double measure = kind == Kind::interior ? domain.volume() : domain.surface();
    if (std::fabs(wsum - measure) > 1e-12 * std::max(1.0, measure))
      throw std::invalid_argument("QuadratureRule: weights do not partition the measure");
    if (kind == Kind::boundary && normals.size() != nodes.size())
      throw std::invalid_argument("QuadratureRule: boundary rule needs one normal per node");
  }
};

namespace detail {

// Legendre P_n and derivative at x, by the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

} // namespace detail

// Gauss-Legendre nodes/weights on [-1,1]; exact for polynomials of degree
// <= 2n-1. Newton iteration from the Chebyshev initial guess, tolerance 1e-15.
inline QuadratureRule gauss_legendre_1d(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre_1d: n must be in [1, 64]");
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::interior;
  rule.dim = 1;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = detail::legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const auto [p, dp] = detail::legendre(n, x);
    (void)p;
    rule.nodes[n - 1 - i] = make_point(x);
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n == 1) {
    rule.nodes[0] = make_point(0.0);
    rule.weights[0] = 2.0;
  }
  return rule;
}

namespace detail {

// 1D Gauss nodes mapped to [a,b].
inline void mapped_gauss(int q, double a, double b, std::vector<double>& xs, std::vector<double>& ws) {
  const QuadratureRule g = gauss_legendre_1d(q);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  xs.resize(q);
  ws.resize(q);
  for (int i = 0; i < q; ++i) {
    xs[i] = mid + half * g.nodes[i][0];
    ws[i] = half * g.weights[i];
  }
}

} // namespace detail

// Tensor-product Gauss rule with q points per axis, affinely mapped to the box.
inline QuadratureRule tensor_rule(const Domain& domain, int q) {
  if (q < 1) throw std::invalid_argument("tensor_rule: q must be >= 1");
  std::vector<std::vector<double>> xs(domain.dim), ws(domain.dim);
  for (int i = 0; i < domain.dim; ++i)
    detail::mapped_gauss(q, domain.lower[i], domain.upper[i], xs[i], ws[i]);

  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::interior;
  rule.dim = domain.dim;
  std::array<int, kMaxDim> idx{0, 0, 0};
  const std::size_t total = [&] {
    std::size_t t = 1;
    for (int i = 0; i < domain.dim; ++i) t *= static_cast<std::size_t>(q);
    return t;
  }();
  rule.nodes.reserve(total);
  rule.weights.reserve(total);
  for (std::size_t c = 0; c < total; ++c) {
    Point p{0, 0, 0};
    double w = 1.0;
    for (int i = 0; i < domain.dim; ++i) {
      p[i] = xs[i][idx[i]];
      w *= ws[i][idx[i]];
    }
    rule.nodes.push_back(p);
    rule.weights.push_back(w);
    for (int i = 0; i < domain.dim; ++i) {
      if (++idx[i] < q) break;
      idx[i] = 0;
    }
  }
  rule.validate(domain);
  return rule;
}

// Composite tensor rule: each axis split into `panels` equal cells with a
// g-point Gauss rule per cell. Preferred for integrands with hidden-grid
// kinks, where a single high-order rule stalls.
inline QuadratureRule composite_rule(const Domain& domain, int panels, int g = 8) {
  if (panels < 1 || g < 1) throw std::invalid_argument("composite_rule: panels and g must be >= 1");
  std::vector<std::vector<double>> xs(domain.dim), ws(domain.dim);
  for (int i = 0; i < domain.dim; ++i) {
    const double h = (domain.upper[i] - domain.lower[i]) / panels;
    std::vector<double> px, pw;
    for (int p = 0; p < panels; ++p) {
      std::vector<double> cx, cw;
      detail::mapped_gauss(g, domain.lower[i] + p * h, domain.lower[i] + (p + 1) * h, cx, cw);
      px.insert(px.end(), cx.begin(), cx.end());
      pw.insert(pw.end(), cw.begin(), cw.end());
    }
    xs[i] = std::move(px);
    ws[i] = std::move(pw);
  }
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::interior;
  rule.dim = domain.dim;
  const int per_axis = panels * g;
  std::array<int, kMaxDim> idx{0, 0, 0};
  std::size_t total = 1;
  for (int i = 0; i < domain.dim; ++i) total *= static_cast<std::size_t>(per_axis);
  rule.nodes.reserve(total);
  rule.weights.reserve(total);
  for (std::size_t c = 0; c < total; ++c) {
    Point p{0, 0, 0};
    double w = 1.0;
    for (int i = 0; i < domain.dim; ++i) {
      p[i] = xs[i][idx[i]];
      w *= ws[i][idx[i]];
    }
    rule.nodes.push_back(p);
    rule.weights.push_back(w);
    for (int i = 0; i < domain.dim; ++i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  rule.validate(domain);
  return rule;
}

// 1D rule whose panels are split at the given interior breakpoints, making
// piecewise polynomials of degree <= 2g-1 integrate exactly.
inline QuadratureRule breakpoint_rule_1d(const Domain& domain, std::vector<double> breaks, int g = 12) {
  if (domain.dim != 1) throw std::invalid_argument("breakpoint_rule_1d: 1D domains only");
  breaks.push_back(domain.lower[0]);
  breaks.push_back(domain.upper[0]);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-14; }),
               breaks.end());
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::interior;
  rule.dim = 1;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = std::max(breaks[i], domain.lower[0]);
    const double b = std::min(breaks[i + 1], domain.upper[0]);
    if (!(b > a)) continue;
    std::vector<double> cx, cw;
    detail::mapped_gauss(g, a, b, cx, cw);
    for (int j = 0; j < g; ++j) {
      rule.nodes.push_back(make_point(cx[j]));
      rule.weights.push_back(cw[j]);
    }
  }
  rule.validate(domain);
  return rule;
}

// Boundary rule: a (d-1)-dimensional tensor Gauss rule on each of the 2d
// faces, with the face's constant outward normal. For d=1 the two endpoints
// carry weight 1 and normals -1, +1.
inline QuadratureRule boundary_rule(const Domain& domain, int q) {
  if (q < 1) throw std::invalid_argument("boundary_rule: q must be >= 1");
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::boundary;
  rule.dim = domain.dim;

  if (domain.dim == 1) {
    rule.nodes = {make_point(domain.lower[0]), make_point(domain.upper[0])};
    rule.weights = {1.0, 1.0};
    rule.normals = {make_point(-1.0), make_point(1.0)};
    rule.validate(domain);
    return rule;
  }

  for (int axis = 0; axis < domain.dim; ++axis) {
    for (int side = 0; side < 2; ++side) {
      const double coord = side == 0 ? domain.lower[axis] : domain.upper[axis];
      Point normal{0, 0, 0};
      normal[axis] = side == 0 ? -1.0 : 1.0;

      std::vector<int> tangents;
      for (int i = 0; i < domain.dim; ++i)
        if (i != axis) tangents.push_back(i);

      std::vector<std::vector<double>> xs(tangents.size()), ws(tangents.size());
      for (std::size_t i = 0; i < tangents.size(); ++i)
        detail::mapped_gauss(q, domain.lower[tangents[i]], domain.upper[tangents[i]], xs[i], ws[i]);

      std::vector<std::size_t> idx(tangents.size(), 0);
      std::size_t total = 1;
      for (std::size_t i = 0; i < tangents.size(); ++i) total *= static_cast<std::size_t>(q);
      for (std::size_t c = 0; c < total; ++c) {
        Point p{0, 0, 0};
        p[axis] = coord;
        double w = 1.0;
        for (std::size_t i = 0; i < tangents.size(); ++i) {
          p[tangents[i]] = xs[i][idx[i]];
          w *= ws[i][idx[i]];
        }
        rule.nodes.push_back(p);
        rule.weights.push_back(w);
        rule.normals.push_back(normal);
        for (std::size_t i = 0; i < tangents.size(); ++i) {
          if (++idx[i] < static_cast<std::size_t>(q)) break;
          idx[i] = 0;
        }
      }
    }
  }
  rule.validate(domain);
  return rule;
}

// Seeded uniform Monte Carlo interior rule with equal weights. An assembly
// cost escape hatch for d=3; never used by the acceptance studies.
inline QuadratureRule monte_carlo_rule(const Domain& domain, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("monte_carlo_rule: n must be >= 1");
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::interior;
  rule.dim = domain.dim;
  CounterRng rng(seed, 0x6d63 /* stream tag */);
  const double w = domain.volume() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p{0, 0, 0};
    for (int k = 0; k < domain.dim; ++k) p[k] = rng.uniform(domain.lower[k], domain.upper[k]);
    rule.nodes.push_back(p);
    rule.weights.push_back(w);
  }
  return rule;
}

// Sum of w_i f(x_i); f must be finite at every node.
template <typename F>
double integrate(F&& f, const QuadratureRule& rule) {
  std::vector<double> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v))
      throw NumericError("integrate: non-finite integrand at node (" +
                         std::to_string(rule.nodes[i][0]) + ", " + std::to_string(rule.nodes[i][1]) +
                         ", " + std::to_string(rule.nodes[i][2]) + ")");
    terms[i] = rule.weights[i] * v;
  }
  return pairwise_sum(terms);
}

} // namespace fnm
