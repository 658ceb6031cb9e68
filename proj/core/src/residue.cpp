#include "newtosc/residue.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <numbers>
#include <utility>
#include <vector>

#include "newtosc/error.hpp"
#include "newtosc/linalg.hpp"
#include "newtosc/quadrature.hpp"
#include "newtosc/toric.hpp"

namespace newtosc {

namespace {

// Absolute quadrature budget per PV integral.
constexpr double kPvTol = 1e-8;

RatVec all_ones(std::size_t n) { return RatVec(n, Rat(1)); }

// (-1)^(sum of a_i over the coordinates flagged in mask).
int flip_parity(const Tuple& a, unsigned mask) {
  bool odd = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((mask >> i) & 1u)
      if (a[i] % 2 != 0) odd = !odd;
  return odd ? -1 : 1;
}

double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

void SimplexData::validate() const {
  if (n == 0 || columns.size() != n || eps.size() != n || gamma.size() != n)
    throw DomainError("simplex data: one column, coefficient, weight per variable");
  for (const Tuple& a : columns)
    if (a.size() != n) throw DomainError("simplex data: column dimension mismatch");
  for (const Rat& e : eps)
    if (e == 0) throw DomainError("simplex data: zero coefficient");
  Rat total(0);
  RatVec combo(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (gamma[i] <= 0) throw DomainError("simplex data: weight not positive");
    for (std::size_t k = 0; k < n; ++k) combo[k] += gamma[i] * Rat(columns[i][k]);
    total += gamma[i];
  }
  for (std::size_t k = 0; k < n; ++k)
    if (combo[k] != 1)
      throw DomainError("simplex data: weights do not combine to the diagonal");
  if (total != -s0) throw DomainError("simplex data: s0 inconsistent with weights");
  if (det_columns(columns) == 0)
    throw DomainError("simplex data: dependent exponents");
}

std::pair<RatVec, Rat> gamma_weights(const std::vector<Tuple>& columns) {
  std::size_t n = columns.size();
  if (n == 0) throw DomainError("gamma weights: empty column list");
  for (const Tuple& a : columns)
    if (a.size() != n) throw DomainError("gamma weights: column dimension mismatch");
  RatVec gamma = solve(Mat::from_columns(columns), all_ones(n));
  Rat total(0);
  for (const Rat& g : gamma) {
    if (g <= 0)
      throw NonPositiveWeightError(
          "gamma weights: diagonal misses the open simplex");
    total += g;
  }
  return {std::move(gamma), -total};
}

SimplexData simplex_data_of(const Poly& f) {
  std::size_t n = f.nvars();
  if (n == 0 || f.term_count() != n)
    throw DomainError("simplex phase needs exactly one term per variable");
  SimplexData S;
  S.n = n;
  for (const auto& [e, c] : f.terms()) {
    S.columns.push_back(expo_tuple(e));
    S.eps.push_back(c);
  }
  auto [gamma, s0] = gamma_weights(S.columns);
  S.gamma = std::move(gamma);
  S.s0 = s0;
  return S;
}

std::complex<double> conjecture_sum(const SimplexData& S) {
  S.validate();
  constexpr double half_pi = std::numbers::pi / 2.0;
  std::complex<double> total = 0.0;
  for (unsigned mask = 0; mask < (1u << S.n); ++mask) {
    Rat angle(0);
    for (std::size_t j = 0; j < S.n; ++j) {
      int sgn = flip_parity(S.columns[j], mask);
      if (S.eps[j] < 0) sgn = -sgn;
      if (sgn > 0)
        angle += S.gamma[j];
      else
        angle -= S.gamma[j];
    }
    total += std::polar(1.0, half_pi * to_double(angle));
  }
  return total;
}

std::complex<double> explicit_mu(const SimplexData& S, double phi0) {
  S.validate();
  if (is_integer(S.s0))
    throw DomainError(
        "closed form has a Gamma pole at integer exponent; complete a square "
        "first");
  Int d = det_columns(S.columns);
  double scale = phi0 / std::fabs(d.get_d());
  for (std::size_t j = 0; j < S.n; ++j) {
    double g = to_double(S.gamma[j]);
    double e = std::fabs(to_double(S.eps[j]));
    scale *= std::tgamma(g) * std::pow(e, -g);
  }
  return scale * conjecture_sum(S);
}

std::complex<double> combine_mu(double mu_plus, double mu_minus, const Rat& s0,
                                std::size_t rho) {
  if (rho == 0) throw DomainError("combine: rho must be at least 1");
  if (is_integer(s0))
    throw DomainError(
        "combine: Gamma pole at integer exponent; complete a square first");
  double c = std::tgamma(-to_double(s0)) / factorial(rho - 1);
  double ang = std::numbers::pi * to_double(s0) / 2.0;
  return c * (mu_plus * std::polar(1.0, -ang) + mu_minus * std::polar(1.0, ang));
}

VolumeFactor volume_factor(const NewtonPolyhedron& P,
                           const DiagonalReport& report) {
  if (!report.compact)
    throw DomainError("volume factor needs a compact diagonal face");
  std::size_t n = P.dim();
  std::vector<Tuple> normals;
  for (std::size_t idx : report.tau0.active) {
    const Facet& F = P.facets()[idx];
    if (F.offset == 0)
      throw DomainError("volume factor: active facet through the origin");
    normals.push_back(F.normal);
  }
  Fan simp = subdivide_simplicial(make_fan({Cone{normals}}, n));
  VolumeFactor out;
  out.value = 0;
  for (const Cone& c : simp.cones) {
    std::vector<Tuple> cols = c.generators;
    if (cols.size() != report.rho)
      throw Error("volume factor: triangulated cone dimension mismatch");
    Int denom = 1;
    for (const Tuple& g : cols) denom *= P.trace_value(g);
    for (std::size_t k = report.rho; k < n; ++k) {
      Tuple e(n, Int(0));
      e[report.permutation[k]] = 1;
      cols.push_back(e);
    }
    Int dv = det_columns(cols);
    if (dv == 0) throw Error("volume factor: degenerate frame");
    Rat piece = rat_of(abs(dv), abs(denom));
    out.pieces.push_back(piece);
    out.value += piece;
  }
  if (out.value <= 0) throw Error("volume factor: volume not positive");
  return out;
}

namespace {

int effective_degree(const std::vector<double>& c) {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (c[k] != 0.0) return k;
  return -1;
}

double eval_coeffs(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) v = v * x + c[k];
  return v;
}

// Evaluates a polynomial as (prod (y - r_i)) * q(y) with the known simple
// roots factored out. Direct Horner cancels catastrophically next to a root,
// exactly where the endpoint-sensitive quadrature samples; the explicit
// root factors keep full relative accuracy there.
struct DeflatedPoly {
  std::vector<double> q;
  std::vector<double> roots;

  double operator()(double y) const {
    double v = eval_coeffs(q, y);
    for (double r : roots) v *= (y - r);
    return v;
  }

  // Evaluation with the quadrature-supplied endpoint offset: when a root
  // sits exactly at the near endpoint, y - root equals -xc, and xc resolves
  // distances far below the spacing of doubles around the endpoint.
  double eval_near(double y, double near_end, double xc) const {
    double v = eval_coeffs(q, y);
    for (double r : roots) v *= (r == near_end) ? -xc : (y - r);
    return v;
  }
};

DeflatedPoly deflate(std::vector<double> c, std::vector<double> roots) {
  for (double r : roots) {
    int deg = effective_degree(c);
    // synthetic division by (y - r); the remainder is O(ulp) and dropped
    std::vector<double> quotient(static_cast<std::size_t>(deg), 0.0);
    double carry = c[static_cast<std::size_t>(deg)];
    for (int k = deg - 1; k >= 0; --k) {
      quotient[static_cast<std::size_t>(k)] = carry;
      carry = c[static_cast<std::size_t>(k)] + r * carry;
    }
    c = std::move(quotient);
  }
  return {std::move(c), std::move(roots)};
}

// Iterated quadrature of the selected sign part of h^s0 over the positive
// orthant. Variables are integrated innermost-last; the innermost level
// splits at sign changes of the slice polynomial and adds the substituted
// tail with an exact decay-exponent check.
class PvIntegrator {
 public:
  PvIntegrator(const Poly& h, double s0, int sign, double tol)
      : h_(h), d_(h.nvars()), s0_(s0), sign_(sign), tol_(tol) {}

  PvEstimate run() {
    std::vector<double> pt(d_ > 0 ? d_ - 1 : 0, 0.0);
    return level(0, pt);
  }

 private:
  PvEstimate level(std::size_t k, std::vector<double>& pt) {
    if (k + 1 == d_) return inner_slice(pt);
    double sub_err = 0.0;
    auto F = [&](double y) {
      pt[k] = y;
      PvEstimate inner = level(k + 1, pt);
      sub_err = std::max(sub_err, inner.error);
      return inner.value;
    };
    QuadResult head = integrate_finite(F, 0.0, 1.0, tol_);
    QuadResult tail = integrate_tail(F, 1.0, tol_);
    return {head.value + tail.value, head.error + tail.error + sub_err};
  }

  PvEstimate inner_slice(const std::vector<double>& pt) {
    std::vector<double> c = last_variable_coefficients(h_, pt);
    int deg = effective_degree(c);
    if (deg < 0) return {};
    c.resize(static_cast<std::size_t>(deg) + 1);
    std::vector<double> cuts = positive_roots(c);
    DeflatedPoly stable = deflate(c, cuts);
    double bound = cauchy_root_bound(c);
    double top = std::max(1.0, bound);
    PvEstimate acc;
    double lo = 0.0;
    for (double cut : cuts) {
      add_panel(stable, lo, cut, acc);
      lo = cut;
    }
    add_panel(stable, lo, top, acc);
    double lead = sign_ > 0 ? c[deg] : -c[deg];
    if (lead > 0.0) {
      // Beyond every root the sign part follows the leading term, so the
      // substituted tail integrand is q(u)^s0 u^alpha with q(0) = |lead|.
      double alpha = -deg * s0_ - 2.0;
      if (!(alpha > -1.0 + 1e-12))
        throw Error("pv: tail decay exponent outside the integrable range");
      std::vector<double> rev(c.rbegin(), c.rend());
      std::vector<double> recips;
      for (double r : cuts) recips.push_back(1.0 / r);
      DeflatedPoly rev_stable = deflate(std::move(rev), std::move(recips));
      auto tail = [&](double u) {
        double rv = rev_stable(u);
        double pq = sign_ > 0 ? rv : -rv;
        return pq > 0.0 ? std::pow(pq, s0_) * std::pow(u, alpha) : 0.0;
      };
      QuadResult t = integrate_finite(tail, 0.0, 1.0 / top, tol_);
      acc.value += t.value;
      acc.error += t.error;
    }
    return acc;
  }

  double part_value(double v) const {
    double p = sign_ > 0 ? v : -v;
    return p > 0.0 ? std::pow(p, s0_) : 0.0;
  }

  void add_panel(const DeflatedPoly& stable, double lo, double hi,
                 PvEstimate& acc) {
    if (!(hi > lo)) return;
    if (part_value(stable(0.5 * (lo + hi))) <= 0.0) return;
    auto part = [&](double y, double xc) {
      return part_value(stable.eval_near(y, xc >= 0.0 ? hi : lo, xc));
    };
    QuadResult q = integrate_finite(part, lo, hi, tol_);
    acc.value += q.value;
    acc.error += q.error;
  }

  const Poly& h_;
  std::size_t d_;
  double s0_;
  int sign_;
  double tol_;
};

}  // namespace

PvEstimate pv_integral(const Poly& f_tau0, const DiagonalReport& report,
                       int sign) {
  if (sign != 1 && sign != -1)
    throw DomainError("pv: sign must be +1 or -1");
  if (!report.compact)
    throw DomainError("pv: diagonal face must be compact");
  if (f_tau0.is_zero()) throw DomainError("pv: zero face polynomial");
  SharpConditions sc = sharp_conditions(f_tau0, report);
  if (!sc.a.certified() && !sc.b.certified() && !sc.c.certified())
    throw NonConvergentError(
        "pv: convergence not certified; refusing to extrapolate");
  std::size_t n = report.permutation.size();
  std::size_t d = n - report.rho;
  if (d == 0) {
    Rat v = f_tau0(all_ones(n));
    bool hit = sign > 0 ? v > 0 : v < 0;
    return {hit ? 1.0 : 0.0, 0.0};
  }
  Poly h =
      f_tau0.permuted(report.permutation).eliminate_prefix_ones(report.rho);
  return PvIntegrator(h, to_double(report.s0), sign, kPvTol).run();
}

const char* to_string(ResidueMethod m) {
  switch (m) {
    case ResidueMethod::closed_form:
      return "closed_form";
    case ResidueMethod::residue_pv:
      return "residue_pv";
    case ResidueMethod::osc_fit:
      return "osc_fit";
  }
  return "unknown";
}

ResidueReport residue_via_pv(const Poly& f, const DiagonalReport& report,
                             double phi0) {
  if (report.s0_integral)
    throw DomainError(
        "residue route has a Gamma pole at integer exponent; complete a "
        "square first");
  std::size_t n = f.nvars();
  if (n >= 20) throw DomainError("residue route: too many variables");
  NewtonPolyhedron P = NewtonPolyhedron::of(f);
  VolumeFactor V = volume_factor(P, report);
  Poly f0 = face_polynomial(f, report.tau0);
  double vol = to_double(V.value);
  unsigned count = 1u << n;

  struct OrthantPv {
    PvEstimate plus;
    PvEstimate minus;
  };
  auto eval_orthant = [&f0, &report](unsigned mask) {
    std::vector<int> signs(f0.nvars(), 1);
    for (std::size_t i = 0; i < signs.size(); ++i)
      if ((mask >> i) & 1u) signs[i] = -1;
    Poly g = f0.sign_flipped(signs);
    return OrthantPv{pv_integral(g, report, +1), pv_integral(g, report, -1)};
  };

  std::vector<OrthantPv> per(count);
  if (count > 2) {
    std::vector<std::future<OrthantPv>> futs;
    futs.reserve(count);
    for (unsigned mask = 0; mask < count; ++mask)
      futs.push_back(std::async(std::launch::async, eval_orthant, mask));
    for (unsigned mask = 0; mask < count; ++mask) per[mask] = futs[mask].get();
  } else {
    for (unsigned mask = 0; mask < count; ++mask) per[mask] = eval_orthant(mask);
  }

  ResidueReport out;
  out.method = ResidueMethod::residue_pv;
  out.vol_factor = V.value;
  out.rho = report.rho;
  out.s0 = report.s0;
  out.mu_bar_plus = vol * phi0 * per[0].plus.value;
  out.mu_bar_plus_error = vol * std::fabs(phi0) * per[0].plus.error;
  out.mu_bar_minus = vol * phi0 * per[0].minus.value;
  out.mu_bar_minus_error = vol * std::fabs(phi0) * per[0].minus.error;
  double sum_plus = 0.0;
  double sum_minus = 0.0;
  double errs = 0.0;
  for (const OrthantPv& o : per) {
    sum_plus += o.plus.value;
    sum_minus += o.minus.value;
    errs += o.plus.error + o.minus.error;
  }
  out.mu_plus = vol * phi0 * sum_plus;
  out.mu_minus = vol * phi0 * sum_minus;
  out.mu = combine_mu(out.mu_plus, out.mu_minus, report.s0, report.rho);
  out.error_estimate = std::tgamma(-to_double(report.s0)) /
                       factorial(report.rho - 1) * vol *
                       std::fabs(phi0) * errs;
  return out;
}

SymbolicPrefactor complex_prefactor(const NewtonPolyhedron& P,
                                    const DiagonalReport& report) {
  VolumeFactor V = volume_factor(P, report);
  return {V.value, report.rho};
}

}  // namespace newtosc
