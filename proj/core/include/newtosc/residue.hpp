#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "newtosc/newton.hpp"
#include "newtosc/polynomial.hpp"
#include "newtosc/rational.hpp"
#include "newtosc/spectral.hpp"

namespace newtosc {

// Phase with exactly one term per variable and linearly independent
// exponents: f = sum_i eps_i x^{a_i} with columns[i] = a_i. gamma solves
// sum_i gamma_i a_i = (1,...,1) with every entry positive, and
// s0 = -sum_i gamma_i.
struct SimplexData {
  std::size_t n = 0;
  std::vector<Tuple> columns;
  RatVec eps;
  RatVec gamma;
  Rat s0;

  // Throws DomainError unless every stored invariant holds exactly.
  void validate() const;
};

// Weight vector gamma with sum_i gamma_i a_i = (1,...,1) plus s0 = -sum.
// Throws SingularMatrixError on dependent columns, NonPositiveWeightError
// when the diagonal misses the open simplex spanned by the columns.
std::pair<RatVec, Rat> gamma_weights(const std::vector<Tuple>& columns);

// Reads a simplex phase off a polynomial, taking terms in the polynomial's
// term order. Throws DomainError unless there is exactly one term per
// variable; weight errors propagate from gamma_weights.
SimplexData simplex_data_of(const Poly& f);

// sum over beta in {-1,1}^n of prod_j exp(sign(eps_j beta^{a_j}) i pi
// gamma_j / 2) with beta^a = prod_i beta_i^{a_i}. The angle of each summand
// is accumulated as an exact rational and rounded once; summation follows
// the fixed sign-pattern order (all-plus first).
std::complex<double> conjecture_sum(const SimplexData& S);

// Closed-form leading coefficient of the simplex phase:
//   |det A|^{-1} phi0 (prod_j Gamma(gamma_j) |eps_j|^{-gamma_j}) * sum.
// Throws DomainError when s0 is an integer: the caller must complete a
// square first, and the completed phase is generally no longer a simplex,
// in which case this route is unavailable.
std::complex<double> explicit_mu(const SimplexData& S, double phi0);

// (1/(rho-1)!) Gamma(-s0) [mu_plus e^{-i pi s0/2} + mu_minus e^{i pi s0/2}].
// Throws DomainError when s0 is an integer (Gamma pole).
std::complex<double> combine_mu(double mu_plus, double mu_minus, const Rat& s0,
                                std::size_t rho);

// Exact n!Vol(C) for C spanned by 0, the active facet normals scaled to the
// diagonal-face hyperplanes, and the trailing frame axes. The normal cone
// of the diagonal face is triangulated; pieces holds one determinant
// contribution per simplicial subcone and value their sum.
struct VolumeFactor {
  Rat value;
  std::vector<Rat> pieces;
};

// Throws DomainError when the diagonal face is not compact or an active
// facet passes through the origin.
VolumeFactor volume_factor(const NewtonPolyhedron& P,
                           const DiagonalReport& report);

// One principal-value integral estimate.
struct PvEstimate {
  double value = 0.0;
  double error = 0.0;
};

// PV integral over the positive orthant in the trailing n-rho frame
// variables of f_tau0(1,...,1,y)^{s0}, positive part for sign=+1, negative
// part for sign=-1. Runs only when one of the three attainment conditions
// certifies on f_tau0; otherwise throws NonConvergentError rather than
// extrapolating. Noncompact diagonal faces are rejected. n-rho = 0 returns
// the exact zero-dimensional convention (1 when the selected sign part of
// f_tau0(1,...,1) is positive, else 0). Relies on the standing
// nondegeneracy hypothesis: interior zeros of slice polynomials are assumed
// simple.
PvEstimate pv_integral(const Poly& f_tau0, const DiagonalReport& report,
                       int sign);

enum class ResidueMethod { closed_form, residue_pv, osc_fit };

const char* to_string(ResidueMethod m);

// Leading-coefficient report. mu_bar_* are the all-plus-orthant values with
// error bars; mu_plus/mu_minus sum over all sign patterns; mu is the final
// complex leading coefficient.
struct ResidueReport {
  double mu_bar_plus = 0.0;
  double mu_bar_plus_error = 0.0;
  double mu_bar_minus = 0.0;
  double mu_bar_minus_error = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  std::complex<double> mu;
  ResidueMethod method = ResidueMethod::residue_pv;
  bool star_corrected = false;
  Rat vol_factor;
  std::size_t rho = 0;
  Rat s0;
  double error_estimate = 0.0;
};

// Residue route to mu: the per-orthant PV integrals of the diagonal-face
// polynomial (exact coefficient sign flips per orthant), scaled by
// n!Vol(C) phi0, summed in sign-pattern order, then combined. Orthants are
// evaluated concurrently; the reduction order is fixed, so results are
// reproducible. Throws DomainError when s0 is an integer (complete a
// square first); pv_integral refusals propagate.
ResidueReport residue_via_pv(const Poly& f, const DiagonalReport& report,
                             double phi0 = 1.0);

// The complex-route prefactor pi^rho n!Vol(C), kept symbolic as the exact
// rational times the recorded power of pi.
struct SymbolicPrefactor {
  Rat coefficient;
  std::size_t pi_power = 0;
};

// Throws DomainError when the diagonal face is not compact.
SymbolicPrefactor complex_prefactor(const NewtonPolyhedron& P,
                                    const DiagonalReport& report);

}  // namespace newtosc
