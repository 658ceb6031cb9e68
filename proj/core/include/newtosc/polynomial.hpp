#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "newtosc/rational.hpp"

namespace newtosc {

// Exponent vector of a monomial; one entry per variable, all nonnegative.
using Expo = std::vector<int>;

Tuple expo_tuple(const Expo& e);

// Inverse lift; entries must fit a machine int.
Expo expo_of_tuple(const Tuple& t);

// Multivariate polynomial with exact rational coefficients. Terms are kept
// deduplicated and zero coefficients are dropped.
class Poly {
 public:
  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rat& c);
  static Poly monomial(std::size_t nvars, const Rat& c, const Expo& e);
  static Poly variable(std::size_t nvars, std::size_t var);

  std::size_t nvars() const { return nvars_; }
  const std::map<Expo, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Rat& c, const Expo& e);

  // Zero when the monomial is absent.
  Rat coeff(const Expo& e) const;

  std::vector<Expo> support() const;
  std::vector<Tuple> support_points() const;

  Rat operator()(const RatVec& x) const;
  double eval(const std::vector<double>& x) const;

  Poly partial(std::size_t var) const;

  // Keeps only the terms whose exponent is in the given set.
  Poly restrict_support(const std::vector<Expo>& keep) const;

  // x_i -> signs_i * x_i, signs_i in {-1, +1}.
  Poly sign_flipped(const std::vector<int>& signs) const;

  // Sets the first m variables to 1; the result has nvars - m variables.
  Poly eliminate_prefix_ones(std::size_t m) const;

  // Variable reorder: new variable k is old variable order[k].
  // order must be a permutation of 0..nvars-1.
  Poly permuted(const std::vector<std::size_t>& order) const;

  // Appends fresh variables (exponent zero on all terms).
  Poly promoted(std::size_t new_nvars) const;

  int total_degree() const;  // -1 for the zero polynomial
  bool vanishes_at_origin() const;

  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

 private:
  std::size_t nvars_;
  std::map<Expo, Rat> terms_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly pow(const Poly& a, unsigned e);

std::string to_string(const Poly& p, const std::vector<std::string>& vars);

// Coefficients of f in its last variable at fixed values of the others:
// f(outer..., t) = sum_k out[k] t^k. outer must have nvars-1 entries.
std::vector<double> last_variable_coefficients(
    const Poly& f, const std::vector<double>& outer);

// Default variable names: x,y,z,w for up to four variables, x1..xn beyond.
std::vector<std::string> default_var_names(std::size_t nvars);

}  // namespace newtosc
