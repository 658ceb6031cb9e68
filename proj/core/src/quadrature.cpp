#include "newtosc/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

#include "newtosc/error.hpp"

namespace newtosc {

QuadResult integrate_finite(const std::function<double(double)>& f, double a,
                            double b, double tol) {
  if (!(a <= b)) throw DomainError("integrate_finite: reversed interval");
  if (a == b) return {};
  boost::math::quadrature::tanh_sinh<double> integ;
  auto g = [&f](double x) {
    double v = f(x);
    return std::isfinite(v) ? v : 0.0;
  };
  double err = 0.0;
  double l1 = 0.0;
  double v = integ.integrate(g, a, b, tol, &err, &l1);
  // The kernel reports the gap of the last two refinements in transformed
  // units; rescale by the interval half-width so long ranges stay honest.
  double abs_err = err * std::max(1.0, (b - a) / 2.0);
  if (!std::isfinite(v)) throw Error("integrate_finite: nonfinite result");
  return {v, abs_err};
}

QuadResult integrate_finite(const std::function<double(double, double)>& f,
                            double a, double b, double tol) {
  if (!(a <= b)) throw DomainError("integrate_finite: reversed interval");
  if (a == b) return {};
  boost::math::quadrature::tanh_sinh<double> integ;
  auto g = [&f](double x, double xc) {
    double v = f(x, xc);
    return std::isfinite(v) ? v : 0.0;
  };
  double err = 0.0;
  double l1 = 0.0;
  double v = integ.integrate(g, a, b, tol, &err, &l1);
  double abs_err = err * std::max(1.0, (b - a) / 2.0);
  if (!std::isfinite(v)) throw Error("integrate_finite: nonfinite result");
  return {v, abs_err};
}

QuadResult integrate_tail(const std::function<double(double)>& f, double a,
                          double tol) {
  if (!(a > 0.0)) throw DomainError("integrate_tail: lower bound must be positive");
  auto g = [&f](double u) {
    double t = f(1.0 / u) / (u * u);
    return std::isfinite(t) ? t : 0.0;
  };
  return integrate_finite(g, 0.0, 1.0 / a, tol);
}

double cauchy_root_bound(const std::vector<double>& c) {
  int deg = -1;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (c[k] != 0.0) {
      deg = k;
      break;
    }
  }
  if (deg <= 0) return 1.0;
  double top = std::fabs(c[deg]);
  double worst = 0.0;
  for (int k = 0; k < deg; ++k) worst = std::max(worst, std::fabs(c[k]) / top);
  return 1.0 + worst;
}

namespace {

double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) v = v * x + c[k];
  return v;
}

double bisect_root(const std::vector<double>& c, double lo, double hi) {
  double flo = horner(c, lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = horner(c, mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> positive_roots(const std::vector<double>& c) {
  std::vector<double> roots;
  int deg = -1;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (c[k] != 0.0) {
      deg = k;
      break;
    }
  }
  if (deg <= 0) return roots;
  double bound = cauchy_root_bound(c);
  const int cells = 4096;
  double step = bound / cells;
  double prev_x = 0.0;
  double prev_v = horner(c, prev_x);
  for (int i = 1; i <= cells; ++i) {
    double x = step * i;
    double v = horner(c, x);
    if (v == 0.0) {
      // Grid point lands on a root; count it when the sign flips around it.
      double after = horner(c, x + 0.5 * step);
      if (prev_v != 0.0 && after != 0.0 && (prev_v < 0.0) != (after < 0.0))
        roots.push_back(x);
      prev_x = x;
      prev_v = (after != 0.0) ? after : prev_v;
      continue;
    }
    if (prev_v != 0.0 && (prev_v < 0.0) != (v < 0.0))
      roots.push_back(bisect_root(c, prev_x, x));
    prev_x = x;
    prev_v = v;
  }
  std::sort(roots.begin(), roots.end());
  double merge_eps = 1e-12 * std::max(1.0, bound);
  std::vector<double> dedup;
  for (double r : roots) {
    if (r <= 0.0) continue;
    if (dedup.empty() || r - dedup.back() > merge_eps) dedup.push_back(r);
  }
  return dedup;
}

}  // namespace newtosc
