#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newtosc/newton.hpp"
#include "newtosc/polynomial.hpp"
#include "newtosc/rational.hpp"

namespace newtosc {

// Three-valued outcome of a semi-decision procedure.  Certified and
// Falsified are definitive; Undecided means neither rule fired.
enum class Verdict { Certified, Falsified, Undecided };

// Falsified always carries a witness: exact_witness when the point was
// found by exact evaluation, otherwise numeric_witness with its relative
// residual.  Certified carries the name of the rule that fired in `rule`.
// `vacuous` marks a certification whose premise quantified over an empty
// collection.
struct TriState {
  Verdict verdict = Verdict::Undecided;
  std::string rule;
  std::optional<RatVec> exact_witness;
  std::optional<std::vector<double>> numeric_witness;
  double residual = 0.0;
  bool vacuous = false;

  bool certified() const { return verdict == Verdict::Certified; }
  bool falsified() const { return verdict == Verdict::Falsified; }
  bool undecided() const { return verdict == Verdict::Undecided; }
};

const char* to_string(Verdict v);

// Data attached to the point where the diagonal leaves the polyhedron.
//   t0:        the diagonal coordinate, max over facets of offset/<a, 1>
//   s0:        -1/t0
//   tau0:      smallest face containing (t0,...,t0)
//   rho:       codimension of tau0
//   m:         tau0 is parallel to the last n-m axes of the recorded frame
//              and to no others
//   permutation: frame order; permutation[k] is the original axis at
//              position k.  The last n-rho axes complete the span of the
//              facet normals active at tau0 to a direct sum; axes parallel
//              to tau0 sit at the very end.
struct DiagonalReport {
  Rat t0;
  Rat s0;
  Face tau0;
  std::size_t rho = 0;
  std::size_t m = 0;
  std::vector<std::size_t> permutation;
  bool compact = false;
  bool s0_integral = false;
};

// Computes the diagonal data of P.  Throws DomainError when the support
// contains the origin (t0 would be 0 and s0 undefined).
DiagonalReport diagonal_analysis(const NewtonPolyhedron& P);

// Decides, in the semi-decision sense, whether g has no zero with all
// coordinates nonzero.  Certified when in every orthant the expanded
// coefficients share one sign; Falsified by an exact probe zero or by a
// sign change on a per-orthant log grid refined by bisection and damped
// Newton.  Throws DomainError when g is the zero polynomial.
TriState zero_free_check(const Poly& g, unsigned seed = 0);

// Checks every compact face polynomial of the polyhedron of f for critical
// points with all coordinates nonzero.  Certified when each face poly has
// some partial derivative equal to a monomial times a certified zero-free
// factor; Falsified by an exact or numeric common zero of the gradient.
// Aggregation: Falsified dominates, then Undecided, then Certified.
// Throws DomainError unless f vanishes to order >= 2 at the origin.
TriState nondegeneracy_check(const Poly& f, unsigned seed = 0);

// Instability of tau0 with respect to variable j (1-based).  Certified
// when (i) every generator of tau0 has j-th coordinate in {0,1} and no
// recession axis equals j, (ii) some generator has j-th coordinate 1, and
// (iii) every compact face of P lying in the hyperplane x_j = 1 has a
// certified zero-free face polynomial.  A geometry failure falsifies with
// the offending generator as witness; an empty collection in (iii)
// certifies with the vacuous flag set.  Throws DomainError on bad index.
TriState instability_check(const NewtonPolyhedron& P, const Poly& f,
                           std::size_t j, unsigned seed = 0);

// Per-variable instability verdicts plus the aggregate.  overall_stable
// is Falsified (tau0 unstable, witness = variable index) when some
// variable is certified unstable, Certified when every variable is
// certified not-unstable, Undecided otherwise.
struct StabilityReport {
  std::vector<std::pair<std::size_t, TriState>> per_variable;
  TriState overall_stable;
};

StabilityReport stability_report(const NewtonPolyhedron& P, const Poly& f,
                                 unsigned seed = 0);

// The three conditions under which the leading-term expansion is attained:
//   a: s0 > -1 (exact rational comparison)
//   b: f nonnegative on all of R^n (certified by even exponents and
//      positive coefficients, falsified by a sampled negative value)
//   c: tau0 compact, s0 not an odd negative integer, and the face
//      polynomial of tau0 certified zero-free
struct SharpConditions {
  TriState a;
  TriState b;
  TriState c;
};

SharpConditions sharp_conditions(const Poly& f, const DiagonalReport& report,
                                 unsigned seed = 0);

// Adds a square in a fresh variable: f_star = f + y^2.  The star report is
// recomputed from scratch and must satisfy s0* = s0 - 1/2 and rho* = rho;
// a mismatch throws Error since those identities are theorem-backed.
// mu_factor = e^{-i pi/4}/sqrt(pi) converts a leading coefficient computed
// for f_star into one for f.
struct StarTransform {
  Poly f_star;
  DiagonalReport report_star;
  std::complex<double> mu_factor;
};

StarTransform star_transform(const Poly& f, const DiagonalReport& report);

// For each permutation sigma of the first rho frame variables: substitute
// 1 into the first rho-1 of them, giving g in n-rho+1 variables, and test
// whether the diagonal face of g equals the projection of tau0 dropping
// those rho-1 coordinates.  Returns (sigma, outcome) pairs in lexicographic
// sigma order.  Throws DomainError when tau0 is not compact.
std::vector<std::pair<std::vector<std::size_t>, bool>>
projection_condition(const Poly& f, const DiagonalReport& report);

}  // namespace newtosc
