#include "newtosc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "newtosc/error.hpp"

namespace newtosc {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Falsified: return "Falsified";
    default: return "Undecided";
  }
}

namespace {

TriState certified(std::string rule, bool vacuous = false) {
  TriState t;
  t.verdict = Verdict::Certified;
  t.rule = std::move(rule);
  t.vacuous = vacuous;
  return t;
}

TriState falsified_exact(RatVec w, std::string rule) {
  TriState t;
  t.verdict = Verdict::Falsified;
  t.rule = std::move(rule);
  t.exact_witness = std::move(w);
  return t;
}

TriState falsified_numeric(std::vector<double> w, double residual,
                           std::string rule) {
  TriState t;
  t.verdict = Verdict::Falsified;
  t.rule = std::move(rule);
  t.numeric_witness = std::move(w);
  t.residual = residual;
  return t;
}

TriState undecided() { return TriState{}; }

std::uint64_t mix_seed(unsigned seed, std::uint64_t salt) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ seed;
  h ^= salt + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

// Sum of term magnitudes at x; the denominator of the relative residual.
double term_scale(const Poly& g, const std::vector<double>& x) {
  double s = 0.0;
  for (const auto& [e, c] : g.terms()) {
    double t = std::abs(to_double(c));
    for (std::size_t i = 0; i < x.size(); ++i)
      t *= std::pow(std::abs(x[i]), e[i]);
    s += t;
  }
  return std::max(1.0, s);
}

double rel_residual(const Poly& g, const std::vector<double>& x) {
  return std::abs(g.eval(x)) / term_scale(g, x);
}

constexpr double kResidualTol = 1e-10;
// Accepted coordinate window for numeric witnesses: two decades beyond the
// search grid, so drift toward a coordinate hyperplane is rejected.
constexpr double kCoordMin = 1e-4;
constexpr double kCoordMax = 1e4;

bool in_window(const std::vector<double>& x) {
  for (double v : x) {
    double a = std::abs(v);
    if (!(a >= kCoordMin && a <= kCoordMax)) return false;
  }
  return true;
}

// Exact probe coordinates; the set shrinks beyond four variables to keep
// the product enumerable.
std::vector<Rat> probe_values(std::size_t n, bool include_zero) {
  std::vector<Rat> v;
  if (n <= 4) {
    v = {Rat(1), Rat(-1), Rat(2), Rat(-2), rat(1, 2), rat(-1, 2)};
  } else {
    v = {Rat(1), Rat(-1)};
  }
  if (include_zero) v.push_back(Rat(0));
  return v;
}

// Calls fn on every point of values^n (last coordinate fastest) until fn
// returns true; reports whether it did.
bool for_each_probe(std::size_t n, const std::vector<Rat>& values,
                    const std::function<bool(const RatVec&)>& fn) {
  std::vector<std::size_t> idx(n, 0);
  RatVec x(n, values[0]);
  for (;;) {
    if (fn(x)) return true;
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < values.size()) {
        x[k] = values[idx[k]];
        break;
      }
      idx[k] = 0;
      x[k] = values[0];
      if (k == 0) return false;
    }
  }
}

bool orthant_sign_rule(const Poly& g) {
  std::size_t n = g.nvars();
  std::vector<int> theta(n, 1);
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i)
      theta[i] = (mask >> i) & 1 ? -1 : 1;
    Poly flipped = g.sign_flipped(theta);
    int sign = 0;
    bool mixed = false;
    for (const auto& [e, c] : flipped.terms()) {
      int s = sgn(c) > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      else if (sign != s) { mixed = true; break; }
    }
    if (mixed) return false;
  }
  return true;
}

// Grid coordinate magnitudes: 11 log-spaced points spanning [1e-2, 1e2].
std::vector<double> grid_levels() {
  std::vector<double> u(11);
  for (int k = 0; k <= 10; ++k) u[k] = std::pow(10.0, -2.0 + 0.4 * k);
  return u;
}

// One damped Newton run for a scalar equation g = 0; true on convergence
// to a zero inside the coordinate window.
bool newton_scalar(const Poly& g, const std::vector<Poly>& grad,
                   std::vector<double>& x) {
  std::size_t n = x.size();
  for (int iter = 0; iter < 80; ++iter) {
    double v = g.eval(x);
    if (std::abs(v) / term_scale(g, x) <= kResidualTol)
      return in_window(x);
    double n2 = 0.0;
    std::vector<double> gr(n);
    for (std::size_t i = 0; i < n; ++i) {
      gr[i] = grad[i].eval(x);
      n2 += gr[i] * gr[i];
    }
    if (!(n2 > 1e-300)) return false;
    double t = 1.0;
    std::vector<double> next(n);
    for (;;) {
      for (std::size_t i = 0; i < n; ++i)
        next[i] = x[i] - t * v * gr[i] / n2;
      if (std::abs(g.eval(next)) < std::abs(v)) break;
      t *= 0.5;
      if (t < 1e-12) return false;
    }
    x = next;
  }
  return std::abs(g.eval(x)) / term_scale(g, x) <= kResidualTol && in_window(x);
}

// Dense solve of (A + lambda I) d = b for small symmetric A; false when the
// pivots degenerate.
bool solve_damped(std::vector<std::vector<double>> a, std::vector<double> b,
                  double lambda, std::vector<double>& out) {
  std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) a[i][i] += lambda;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-300) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * out[k];
    out[i] = s / a[i][i];
  }
  return true;
}

double system_residual(const std::vector<Poly>& fs,
                       const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& f : fs)
    worst = std::max(worst, rel_residual(f, x));
  return worst;
}

// Levenberg-damped Gauss-Newton for the square-free system fs = 0.
bool gauss_newton(const std::vector<Poly>& fs,
                  const std::vector<std::vector<Poly>>& jac,
                  std::vector<double>& x) {
  std::size_t n = x.size(), m = fs.size();
  double lambda = 1e-3;
  for (int iter = 0; iter < 120; ++iter) {
    double res = system_residual(fs, x);
    if (res <= kResidualTol) return in_window(x);
    std::vector<double> fv(m);
    std::vector<std::vector<double>> j(m, std::vector<double>(n));
    for (std::size_t r = 0; r < m; ++r) {
      fv[r] = fs[r].eval(x);
      for (std::size_t c = 0; c < n; ++c) j[r][c] = jac[r][c].eval(x);
    }
    std::vector<std::vector<double>> jtj(n, std::vector<double>(n, 0.0));
    std::vector<double> jtf(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        jtf[c] -= j[r][c] * fv[r];
        for (std::size_t c2 = 0; c2 < n; ++c2)
          jtj[c][c2] += j[r][c] * j[r][c2];
      }
    std::vector<double> d;
    bool ok = solve_damped(jtj, jtf, lambda, d);
    if (ok) {
      std::vector<double> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = x[i] + d[i];
      if (system_residual(fs, next) < res) {
        x = next;
        lambda = std::max(lambda * 0.3, 1e-12);
        continue;
      }
    }
    lambda *= 10.0;
    if (lambda > 1e12) return false;
  }
  return system_residual(fs, x) <= kResidualTol && in_window(x);
}

std::vector<double> random_orthant_point(std::mt19937_64& rng,
                                         std::uint64_t mask, std::size_t n) {
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sign = (mask >> i) & 1 ? -1.0 : 1.0;
    x[i] = sign * std::pow(10.0, uni(rng));
  }
  return x;
}

// Scans one orthant's log grid for a sign change and pins it down by
// bisection along the offending edge.
bool grid_bisect_orthant(const Poly& g, std::uint64_t mask,
                         std::vector<double>& witness, double& residual) {
  std::size_t n = g.nvars();
  std::vector<double> levels = grid_levels();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= levels.size();
  std::vector<double> vals(total);
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  auto point_at = [&](const std::vector<std::size_t>& id,
                      std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      double sign = (mask >> i) & 1 ? -1.0 : 1.0;
      out[i] = sign * levels[id[i]];
    }
  };
  for (std::size_t flat = 0; flat < total; ++flat) {
    point_at(idx, x);
    vals[flat] = g.eval(x);
    if (vals[flat] == 0.0) {
      witness = x;
      residual = 0.0;
      return true;
    }
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < levels.size()) break;
      idx[k] = 0;
    }
  }
  // stride of axis a in the flat index (last axis fastest)
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t a = n; a-- > 1;) stride[a - 1] = stride[a] * levels.size();
  std::fill(idx.begin(), idx.end(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < n; ++a) {
      if (idx[a] + 1 >= levels.size()) continue;
      double v0 = vals[flat], v1 = vals[flat + stride[a]];
      if (!(v0 < 0) == !(v1 < 0)) continue;
      std::vector<double> p(n);
      point_at(idx, p);
      double lo = std::log10(levels[idx[a]]);
      double hi = std::log10(levels[idx[a] + 1]);
      double sign = (mask >> a) & 1 ? -1.0 : 1.0;
      double flo = v0;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        p[a] = sign * std::pow(10.0, mid);
        double fm = g.eval(p);
        if (fm == 0.0) break;
        if ((fm < 0) == (flo < 0)) { lo = mid; flo = fm; }
        else hi = mid;
      }
      double r = rel_residual(g, p);
      if (r <= kResidualTol) {
        witness = p;
        residual = r;
        return true;
      }
    }
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < levels.size()) break;
      idx[k] = 0;
    }
  }
  return false;
}

}  // namespace

TriState zero_free_check(const Poly& g, unsigned seed) {
  if (g.is_zero()) throw DomainError("zero_free_check: zero polynomial");
  std::size_t n = g.nvars();
  if (n == 0) return certified("constant");
  if (g.term_count() == 1) return certified("monomial");
  if (orthant_sign_rule(g)) return certified("orthant-signs");

  RatVec hit;
  bool found = for_each_probe(n, probe_values(n, false), [&](const RatVec& x) {
    if (sgn(g(x)) == 0) { hit = x; return true; }
    return false;
  });
  if (found) return falsified_exact(hit, "probe-zero");

  std::vector<Poly> grad;
  for (std::size_t i = 0; i < n; ++i) grad.push_back(g.partial(i));
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<double> w;
    double r = 0.0;
    if (grid_bisect_orthant(g, mask, w, r))
      return falsified_numeric(w, r, "grid-bisection");
    std::mt19937_64 rng(mix_seed(seed, mask * 2 + 1));
    for (int run = 0; run < 50; ++run) {
      std::vector<double> x = random_orthant_point(rng, mask, n);
      if (newton_scalar(g, grad, x)) {
        double res = rel_residual(g, x);
        return falsified_numeric(x, res, "newton");
      }
    }
  }
  return undecided();
}

namespace {

// Splits off the largest common monomial factor and reports whether the
// cofactor has one coefficient sign in every orthant; then the partial
// derivative itself has no zero off the coordinate hyperplanes.
bool monomial_cofactor_zero_free(const Poly& d) {
  if (d.is_zero()) return false;
  std::vector<Expo> supp = d.support();
  Expo low = supp[0];
  for (const auto& e : supp)
    for (std::size_t i = 0; i < low.size(); ++i)
      low[i] = std::min(low[i], e[i]);
  Poly q(d.nvars());
  for (const auto& [e, c] : d.terms()) {
    Expo shifted = e;
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= low[i];
    q.add_term(c, shifted);
  }
  return orthant_sign_rule(q);
}

// Critical-point search for one face polynomial; nullopt when nothing was
// found.
std::optional<TriState> find_critical_point(const Poly& fg, unsigned seed) {
  std::size_t n = fg.nvars();
  std::vector<Poly> grads;
  for (std::size_t i = 0; i < n; ++i) {
    Poly d = fg.partial(i);
    if (!d.is_zero()) grads.push_back(d);
  }
  if (grads.empty()) return std::nullopt;

  RatVec hit;
  bool found =
      for_each_probe(n, probe_values(n, false), [&](const RatVec& x) {
        for (const auto& d : grads)
          if (sgn(d(x)) != 0) return false;
        hit = x;
        return true;
      });
  if (found) return falsified_exact(hit, "critical-point");

  std::vector<std::vector<Poly>> jac;
  for (const auto& d : grads) {
    std::vector<Poly> row;
    for (std::size_t i = 0; i < n; ++i) row.push_back(d.partial(i));
    jac.push_back(std::move(row));
  }
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::mt19937_64 rng(mix_seed(seed, mask * 2));
    for (int run = 0; run < 50; ++run) {
      std::vector<double> x = random_orthant_point(rng, mask, n);
      if (gauss_newton(grads, jac, x)) {
        double res = system_residual(grads, x);
        return falsified_numeric(x, res, "critical-point");
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TriState nondegeneracy_check(const Poly& f, unsigned seed) {
  if (f.is_zero()) throw DomainError("nondegeneracy_check: zero polynomial");
  for (const auto& e : f.support()) {
    int total = 0;
    for (int k : e) total += k;
    if (total < 2)
      throw DomainError(
          "nondegeneracy_check: input does not vanish to order 2 at the "
          "origin");
  }
  NewtonPolyhedron P = NewtonPolyhedron::of(f);
  std::vector<Face> faces = P.compact_faces();
  bool saw_undecided = false;
  std::uint64_t salt = 0;
  for (const Face& face : faces) {
    ++salt;
    Poly fg = face_polynomial(f, face);
    bool cert = false;
    for (std::size_t i = 0; i < fg.nvars() && !cert; ++i) {
      Poly d = fg.partial(i);
      if (d.is_zero()) continue;
      if (monomial_cofactor_zero_free(d)) cert = true;
    }
    if (cert) continue;
    std::optional<TriState> bad = find_critical_point(
        fg, static_cast<unsigned>(mix_seed(seed, salt * 64 + 63)));
    if (bad) return *bad;
    saw_undecided = true;
  }
  if (saw_undecided) return undecided();
  return certified("all-compact-faces");
}

DiagonalReport diagonal_analysis(const NewtonPolyhedron& P) {
  std::size_t n = P.dim();
  const std::vector<Facet>& facets = P.facets();
  Rat t0(0);
  for (const Facet& fc : facets) {
    Int s(0);
    for (const Int& a : fc.normal) s += a;
    Rat cand = Rat(fc.offset) / Rat(s);
    if (cand > t0) t0 = cand;
  }
  if (sgn(t0) <= 0)
    throw DomainError(
        "diagonal_analysis: the support contains the origin, so the "
        "diagonal never leaves the polyhedron");

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    Int s(0);
    for (const Int& a : facets[i].normal) s += a;
    if (Rat(facets[i].offset) == t0 * Rat(s)) active.push_back(i);
  }
  DiagonalReport rep;
  rep.t0 = t0;
  rep.s0 = Rat(-1) / t0;
  rep.tau0 = P.face_from_active(active);
  rep.rho = n - rep.tau0.dim;
  rep.m = n - rep.tau0.recession.size();
  rep.compact = rep.tau0.compact;
  rep.s0_integral = is_integer(rep.s0);

  // Frame: the last n-rho axes complete the span of the active facet
  // normals to a direct sum, with the axes parallel to tau0 at the end.
  std::vector<RatVec> span;
  for (std::size_t i : rep.tau0.active) {
    RatVec row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = Rat(facets[i].normal[k]);
    span.push_back(std::move(row));
  }
  if (rank(Mat::from_rows_rat(span)) != rep.rho)
    throw Error("diagonal_analysis: facet normals do not span the expected "
                "codimension");
  std::vector<bool> is_rec(n, false);
  for (std::size_t r : rep.tau0.recession) is_rec[r] = true;
  std::vector<std::size_t> chosen = rep.tau0.recession;
  std::vector<RatVec> basis = span;
  for (std::size_t r : chosen) {
    RatVec unit(n, Rat(0));
    unit[r] = 1;
    basis.push_back(std::move(unit));
  }
  if (rank(Mat::from_rows_rat(basis)) != rep.rho + chosen.size())
    throw Error("diagonal_analysis: recession axes not independent of the "
                "normal span");
  for (std::size_t j = n; j-- > 0 && chosen.size() < n - rep.rho;) {
    if (is_rec[j]) continue;
    RatVec unit(n, Rat(0));
    unit[j] = 1;
    basis.push_back(unit);
    if (rank(Mat::from_rows_rat(basis)) == rep.rho + chosen.size() + 1)
      chosen.push_back(j);
    else
      basis.pop_back();
  }
  if (chosen.size() != n - rep.rho)
    throw Error("diagonal_analysis: direct-sum completion failed");
  std::vector<bool> in_chosen(n, false);
  for (std::size_t c : chosen) in_chosen[c] = true;
  rep.permutation.clear();
  for (std::size_t k = 0; k < n; ++k)
    if (!in_chosen[k]) rep.permutation.push_back(k);
  for (std::size_t k = 0; k < n; ++k)
    if (in_chosen[k] && !is_rec[k]) rep.permutation.push_back(k);
  for (std::size_t r : rep.tau0.recession) rep.permutation.push_back(r);
  return rep;
}

TriState instability_check(const NewtonPolyhedron& P, const Poly& f,
                           std::size_t j, unsigned seed) {
  std::size_t n = P.dim();
  if (j < 1 || j > n)
    throw DomainError("instability_check: variable index out of range");
  if (f.nvars() != n)
    throw DomainError("instability_check: arity mismatch");
  std::size_t jj = j - 1;
  DiagonalReport rep = diagonal_analysis(P);

  for (std::size_t r : rep.tau0.recession)
    if (r == jj) {
      RatVec unit(n, Rat(0));
      unit[jj] = 1;
      return falsified_exact(unit, "slab(unbounded along the variable)");
    }
  for (const Tuple& p : rep.tau0.points)
    if (p[jj] != 0 && p[jj] != 1) {
      RatVec w(n);
      for (std::size_t k = 0; k < n; ++k) w[k] = Rat(p[k]);
      return falsified_exact(w, "slab(generator outside 0..1)");
    }
  bool touches = false;
  for (const Tuple& p : rep.tau0.points)
    if (p[jj] == 1) { touches = true; break; }
  if (!touches) {
    const Tuple& p = rep.tau0.points.front();
    RatVec w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = Rat(p[k]);
    return falsified_exact(w, "contained in the coordinate hyperplane");
  }

  std::vector<Face> faces = P.compact_faces();
  bool any_face = false;
  bool saw_undecided = false;
  std::uint64_t salt = 0;
  for (const Face& face : faces) {
    ++salt;
    bool inside = true;
    for (const Tuple& p : face.points)
      if (p[jj] != 1) { inside = false; break; }
    if (!inside) continue;
    any_face = true;
    TriState ts = zero_free_check(
        face_polynomial(f, face),
        static_cast<unsigned>(mix_seed(seed, 0xface0000 + salt)));
    if (ts.falsified()) {
      ts.rule = "face polynomial vanishes on the slab wall";
      return ts;
    }
    if (ts.undecided()) saw_undecided = true;
  }
  if (!any_face) return certified("slab", /*vacuous=*/true);
  if (saw_undecided) return undecided();
  return certified("slab+zero-free");
}

StabilityReport stability_report(const NewtonPolyhedron& P, const Poly& f,
                                 unsigned seed) {
  StabilityReport out;
  std::size_t n = P.dim();
  bool any_unstable = false;
  std::size_t unstable_var = 0;
  bool any_undecided = false;
  for (std::size_t j = 1; j <= n; ++j) {
    TriState ts = instability_check(
        P, f, j, static_cast<unsigned>(mix_seed(seed, 0x5ab1e000 + j)));
    if (ts.certified() && !any_unstable) {
      any_unstable = true;
      unstable_var = j;
    }
    if (ts.undecided()) any_undecided = true;
    out.per_variable.emplace_back(j, std::move(ts));
  }
  if (any_unstable) {
    out.overall_stable =
        falsified_exact({Rat(static_cast<long>(unstable_var))},
                        "unstable variable");
  } else if (any_undecided) {
    out.overall_stable = undecided();
  } else {
    out.overall_stable = certified("no variable unstable");
  }
  return out;
}

SharpConditions sharp_conditions(const Poly& f, const DiagonalReport& report,
                                 unsigned seed) {
  SharpConditions out;
  std::size_t n = f.nvars();

  if (report.s0 > Rat(-1)) {
    out.a = certified("rational comparison");
  } else {
    out.a = falsified_exact({report.s0}, "rational comparison");
  }

  bool even_nonneg = true;
  for (const auto& [e, c] : f.terms()) {
    if (sgn(c) < 0) { even_nonneg = false; break; }
    for (int k : e)
      if (k % 2 != 0) { even_nonneg = false; break; }
    if (!even_nonneg) break;
  }
  if (even_nonneg) {
    out.b = certified("even exponents, nonnegative coefficients");
  } else {
    RatVec hit;
    bool found =
        for_each_probe(n, probe_values(n, true), [&](const RatVec& x) {
          if (sgn(f(x)) < 0) { hit = x; return true; }
          return false;
        });
    if (found) {
      out.b = falsified_exact(hit, "sampled negative value");
    } else {
      std::mt19937_64 rng(mix_seed(seed, 0xb0));
      std::uniform_real_distribution<double> small(-3.0, 3.0);
      std::uniform_real_distribution<double> wide(-50.0, 50.0);
      out.b = undecided();
      for (int run = 0; run < 600; ++run) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i)
          x[i] = run < 500 ? small(rng) : wide(rng);
        double v = f.eval(x);
        if (v < -1e-9 * term_scale(f, x)) {
          out.b = falsified_numeric(x, std::abs(v) / term_scale(f, x),
                                    "sampled negative value");
          break;
        }
      }
    }
  }

  if (!report.compact) {
    RatVec dir(n, Rat(0));
    dir[report.tau0.recession.front()] = 1;
    out.c = falsified_exact(dir, "diagonal face unbounded");
  } else if (report.s0_integral && sgn(report.s0) < 0 &&
             mpz_odd_p(report.s0.get_num().get_mpz_t())) {
    out.c = falsified_exact({report.s0}, "odd negative integer exponent");
  } else {
    TriState zf = zero_free_check(face_polynomial(f, report.tau0),
                                  static_cast<unsigned>(mix_seed(seed, 0xc0)));
    if (zf.certified()) {
      out.c = certified("compact diagonal face, zero-free");
    } else {
      out.c = zf;
      if (zf.falsified()) out.c.rule = "diagonal face polynomial vanishes";
    }
  }
  return out;
}

StarTransform star_transform(const Poly& f, const DiagonalReport& report) {
  std::size_t n = f.nvars();
  Poly fs = f.promoted(n + 1);
  Expo sq(n + 1, 0);
  sq[n] = 2;
  fs.add_term(Rat(1), sq);
  StarTransform out;
  out.f_star = fs;
  out.report_star = diagonal_analysis(NewtonPolyhedron::of(fs));
  if (out.report_star.s0 != report.s0 - rat(1, 2) ||
      out.report_star.rho != report.rho)
    throw Error("star_transform: recomputed exponent or codimension broke "
                "the shift identities");
  const double pi = 3.14159265358979323846;
  out.mu_factor = std::polar(1.0 / std::sqrt(pi), -pi / 4);
  return out;
}

namespace {

// Exact barycentric membership test: p in conv(S) iff some affinely
// independent subset of size dim+1 carries p with nonnegative weights.
bool in_convex_hull(const Tuple& p, const std::vector<Tuple>& S) {
  std::size_t n = p.size();
  std::size_t d = affine_dim(S);
  std::size_t k = std::min(d + 1, S.size());
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    // solve sum l_i S[pick_i] = p with sum l_i = 1 by exact elimination
    std::vector<RatVec> rows(n + 1, RatVec(k + 1, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) rows[i][c] = Rat(S[pick[c]][i]);
      rows[i][k] = Rat(p[i]);
    }
    for (std::size_t c = 0; c <= k; ++c) rows[n][c] = Rat(1);
    std::size_t r = 0;
    std::vector<std::size_t> pivot_row(k, 0);
    std::size_t pivots = 0;
    for (std::size_t c = 0; c < k && r < rows.size(); ++c) {
      std::size_t pr = r;
      while (pr < rows.size() && sgn(rows[pr][c]) == 0) ++pr;
      if (pr == rows.size()) continue;
      std::swap(rows[pr], rows[r]);
      Rat inv = rows[r][c];
      for (auto& v : rows[r]) v /= inv;
      for (std::size_t rr = 0; rr < rows.size(); ++rr) {
        if (rr == r || sgn(rows[rr][c]) == 0) continue;
        Rat factor = rows[rr][c];
        for (std::size_t cc = 0; cc <= k; ++cc)
          rows[rr][cc] -= factor * rows[r][cc];
      }
      pivot_row[c] = r;
      ++pivots;
      ++r;
    }
    bool usable = pivots == k;
    if (usable) {
      for (std::size_t rr = pivots; rr < rows.size(); ++rr)
        if (sgn(rows[rr][k]) != 0) { usable = false; break; }
    }
    if (usable) {
      bool nonneg = true;
      for (std::size_t c = 0; c < k; ++c)
        if (sgn(rows[pivot_row[c]][k]) < 0) { nonneg = false; break; }
      if (nonneg) return true;
    }
    std::size_t t = k;
    while (t-- > 0) {
      if (pick[t] + (k - t) < S.size()) {
        ++pick[t];
        for (std::size_t u = t + 1; u < k; ++u) pick[u] = pick[u - 1] + 1;
        break;
      }
      if (t == 0) return false;
    }
  }
}

bool same_hull(const std::vector<Tuple>& A, const std::vector<Tuple>& B) {
  for (const Tuple& p : A)
    if (!in_convex_hull(p, B)) return false;
  for (const Tuple& p : B)
    if (!in_convex_hull(p, A)) return false;
  return true;
}

// Smallest face of Gamma(g) containing the diagonal point; tolerates the
// origin case (all offsets zero) that diagonal_analysis rejects.
Face diagonal_face_of(const NewtonPolyhedron& P) {
  const std::vector<Facet>& facets = P.facets();
  Rat t0(0);
  for (const Facet& fc : facets) {
    Int s(0);
    for (const Int& a : fc.normal) s += a;
    Rat cand = Rat(fc.offset) / Rat(s);
    if (cand > t0) t0 = cand;
  }
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    Int s(0);
    for (const Int& a : facets[i].normal) s += a;
    if (Rat(facets[i].offset) == t0 * Rat(s)) active.push_back(i);
  }
  return P.face_from_active(active);
}

}  // namespace

std::vector<std::pair<std::vector<std::size_t>, bool>>
projection_condition(const Poly& f, const DiagonalReport& report) {
  if (!report.compact)
    throw DomainError("projection_condition: diagonal face is unbounded");
  std::size_t n = f.nvars();
  std::size_t rho = report.rho;
  Poly ftau = face_polynomial(f, report.tau0);

  std::vector<std::pair<std::vector<std::size_t>, bool>> results;
  std::vector<std::size_t> sigma(rho);
  for (std::size_t i = 0; i < rho; ++i) sigma[i] = i;
  do {
    std::vector<std::size_t> order = report.permutation;
    for (std::size_t k = 0; k < rho; ++k)
      order[k] = report.permutation[sigma[k]];
    Poly g = ftau.permuted(order).eliminate_prefix_ones(rho - 1);
    bool ok = false;
    if (!g.is_zero()) {
      Face tg = diagonal_face_of(NewtonPolyhedron::of(g));
      if (tg.compact) {
        std::vector<Tuple> projected;
        for (const Tuple& p : report.tau0.points) {
          Tuple q;
          for (std::size_t k = rho - 1; k < n; ++k) q.push_back(p[order[k]]);
          projected.push_back(std::move(q));
        }
        ok = same_hull(tg.points, projected);
      }
    }
    results.emplace_back(sigma, ok);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return results;
}

}  // namespace newtosc
