#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "newtosc/error.hpp"
#include "newtosc/newton.hpp"
#include "newtosc/parser.hpp"
#include "newtosc/quadrature.hpp"
#include "newtosc/residue.hpp"
#include "newtosc/spectral.hpp"

using namespace newtosc;

namespace {

Poly poly1(const std::string& s) { return parse_polynomial(s, {"x"}); }
Poly poly2(const std::string& s) { return parse_polynomial(s, {"x", "y"}); }
Poly poly3(const std::string& s) { return parse_polynomial(s, {"x", "y", "z"}); }
Poly poly4(const std::string& s) {
  return parse_polynomial(s, {"x", "y", "z", "w"});
}

DiagonalReport rep_of(const Poly& f) {
  return diagonal_analysis(NewtonPolyhedron::of(f));
}

Tuple tl(const std::vector<long>& v) { return tuple_of(v); }

void check_close(std::complex<double> got, std::complex<double> want,
                 double tol) {
  CAPTURE(got.real());
  CAPTURE(got.imag());
  CAPTURE(want.real());
  CAPTURE(want.imag());
  CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}

const char* kFourVar = "y^2 z^3 w + x^2 z w^3 + x^2 y^2 z w";
const char* kCusp = "x^3 + y^3 + x y z";
const char* kCuspStar = "x^3 + y^3 + x y z + w^2";

}  // namespace

TEST_CASE("gamma weights match hand solves") {
  {
    auto [g, s0] = gamma_weights({tl({2})});
    CHECK(g == RatVec{rat(1, 2)});
    CHECK(s0 == rat(-1, 2));
  }
  {
    auto [g, s0] = gamma_weights({tl({2, 0}), tl({0, 4})});
    CHECK(g == RatVec{rat(1, 2), rat(1, 4)});
    CHECK(s0 == rat(-3, 4));
  }
  {
    auto [g, s0] = gamma_weights({tl({2, 1}), tl({1, 2})});
    CHECK(g == RatVec{rat(1, 3), rat(1, 3)});
    CHECK(s0 == rat(-2, 3));
  }
  {
    auto [g, s0] = gamma_weights({tl({0, 2}), tl({1, 0})});
    CHECK(g == RatVec{rat(1, 2), rat(1)});
    CHECK(s0 == rat(-3, 2));
  }
  {
    auto [g, s0] = gamma_weights({tl({4, 0}), tl({0, 4})});
    CHECK(g == RatVec{rat(1, 4), rat(1, 4)});
    CHECK(s0 == rat(-1, 2));
  }
  {
    auto [g, s0] =
        gamma_weights({tl({2, 0, 0}), tl({0, 2, 0}), tl({0, 0, 2})});
    CHECK(g == RatVec{rat(1, 2), rat(1, 2), rat(1, 2)});
    CHECK(s0 == rat(-3, 2));
  }
  CHECK_THROWS_AS(gamma_weights({tl({1, 0}), tl({2, 0})}), SingularMatrixError);
  // Zero and negative weights are both rejected.
  CHECK_THROWS_AS(gamma_weights({tl({1, 0}), tl({1, 1})}),
                  NonPositiveWeightError);
  CHECK_THROWS_AS(gamma_weights({tl({3, 0}), tl({1, 1})}),
                  NonPositiveWeightError);
  CHECK_THROWS_AS(gamma_weights({tl({2, 0}), tl({3, 1})}),
                  NonPositiveWeightError);
  CHECK_THROWS_AS(gamma_weights({}), DomainError);
}

TEST_CASE("gamma weights stay exact on random columns") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> entry(0, 4);
  std::uniform_int_distribution<int> dims(1, 3);
  int valid = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = static_cast<std::size_t>(dims(rng));
    std::vector<Tuple> cols;
    for (std::size_t i = 0; i < n; ++i) {
      Tuple a(n);
      for (std::size_t k = 0; k < n; ++k) a[k] = entry(rng);
      cols.push_back(a);
    }
    if (det_columns(cols) == 0) continue;
    RatVec g;
    Rat s0;
    try {
      std::tie(g, s0) = gamma_weights(cols);
    } catch (const NonPositiveWeightError&) {
      continue;
    }
    ++valid;
    Rat total(0);
    RatVec combo(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(g[i] > 0);
      total += g[i];
      for (std::size_t k = 0; k < n; ++k) combo[k] += g[i] * Rat(cols[i][k]);
    }
    for (std::size_t k = 0; k < n; ++k) CHECK(combo[k] == 1);
    CHECK(total == -s0);
  }
  CHECK(valid >= 20);
}

TEST_CASE("simplex weights agree with the diagonal analysis") {
  // Deterministic pairs first: the simplex spans the diagonal face exactly.
  for (const char* src : {"x^2 y + x y^2", "x^2 + y^2 + z^2", "x^2 + y^4"}) {
    Poly f = (std::string(src).find('z') != std::string::npos) ? poly3(src)
                                                               : poly2(src);
    SimplexData S = simplex_data_of(f);
    CHECK(rep_of(f).s0 == S.s0);
  }
  // Random draws, filtered to simplices whose supporting normal is strictly
  // positive, which makes the simplex the diagonal face of its own hull.
  std::mt19937 rng(991);
  std::uniform_int_distribution<int> entry(0, 4);
  std::uniform_int_distribution<int> dims(2, 3);
  int matched = 0;
  for (int trial = 0; trial < 400 && matched < 12; ++trial) {
    std::size_t n = static_cast<std::size_t>(dims(rng));
    std::vector<Tuple> cols;
    for (std::size_t i = 0; i < n; ++i) {
      Tuple a(n);
      for (std::size_t k = 0; k < n; ++k) a[k] = entry(rng);
      cols.push_back(a);
    }
    if (det_columns(cols) == 0) continue;
    RatVec g;
    Rat s0;
    try {
      std::tie(g, s0) = gamma_weights(cols);
    } catch (const NonPositiveWeightError&) {
      continue;
    }
    RatVec zeta;
    try {
      zeta = solve(Mat::from_rows(cols), RatVec(n, Rat(1)));
    } catch (const SingularMatrixError&) {
      continue;
    }
    bool interior = true;
    for (const Rat& z : zeta)
      if (z <= 0) interior = false;
    if (!interior) continue;
    Poly f(n);
    for (const Tuple& a : cols) f.add_term(rat(1), expo_of_tuple(a));
    if (f.term_count() != n) continue;
    CHECK(rep_of(f).s0 == s0);
    ++matched;
  }
  CHECK(matched >= 5);
}

TEST_CASE("simplex data reads off polynomials and validates") {
  SimplexData S = simplex_data_of(poly2("x^2 + y^4"));
  CHECK(S.n == 2);
  CHECK(S.columns == std::vector<Tuple>{tl({0, 4}), tl({2, 0})});
  CHECK(S.eps == RatVec{rat(1), rat(1)});
  CHECK(S.gamma == RatVec{rat(1, 4), rat(1, 2)});
  CHECK(S.s0 == rat(-3, 4));
  S.validate();

  SimplexData bad = S;
  bad.gamma[0] = rat(1, 3);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = S;
  bad.s0 = rat(-1, 2);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = S;
  bad.eps[1] = rat(0);
  CHECK_THROWS_AS(bad.validate(), DomainError);

  CHECK_THROWS_AS(simplex_data_of(poly2("x^2 + x y + y^2")), DomainError);
  CHECK_THROWS_AS(simplex_data_of(poly1("x + x^2")), DomainError);
  CHECK_THROWS_AS(simplex_data_of(poly2("x y + x^2 y^2")),
                  SingularMatrixError);
}

TEST_CASE("conjecture sums match closed forms") {
  double c = 0;
  (void)c;
  check_close(conjecture_sum(simplex_data_of(poly1("x^2"))),
              {1.41421356237309505, 1.41421356237309505}, 1e-14);
  {
    std::complex<double> v = conjecture_sum(simplex_data_of(poly1("x^3")));
    CHECK(v.real() == doctest::Approx(1.73205080756887729).epsilon(1e-14));
    CHECK(std::fabs(v.imag()) < 1e-15);
  }
  check_close(conjecture_sum(simplex_data_of(poly2("x^2 + y^4"))),
              {1.53073372946035909, 3.69551813004514702}, 1e-14);
  {
    std::complex<double> v =
        conjecture_sum(simplex_data_of(poly2("x^2 y + x y^2")));
    CHECK(v.real() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::fabs(v.imag()) < 1e-14);
  }
  {
    std::complex<double> v =
        conjecture_sum(simplex_data_of(poly2("x^4 - y^4")));
    CHECK(v.real() == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(std::fabs(v.imag()) < 1e-14);
  }
  check_close(conjecture_sum(simplex_data_of(poly3("x^2 + y^2 + z^2"))),
              {-5.6568542494923802, 5.6568542494923802}, 1e-14);
}

TEST_CASE("conjecture sum is invariant under relabelings") {
  // Simultaneous column permutation: identical exact angles, identical sum.
  SimplexData S = simplex_data_of(poly2("x^2 + y^4"));
  SimplexData T = S;
  std::swap(T.columns[0], T.columns[1]);
  std::swap(T.eps[0], T.eps[1]);
  std::swap(T.gamma[0], T.gamma[1]);
  std::complex<double> a = conjecture_sum(S);
  std::complex<double> b = conjecture_sum(T);
  CHECK(a.real() == b.real());
  CHECK(a.imag() == b.imag());

  // Variable relabeling: the same multiset of summands in another order.
  std::complex<double> c = conjecture_sum(simplex_data_of(poly2("x^4 + y^2")));
  CHECK(std::abs(a - c) < 1e-14);

  // Positive rescaling of a coefficient never moves the sign sum.
  SimplexData U = S;
  U.eps[0] = rat(3);
  std::complex<double> d = conjecture_sum(U);
  CHECK(a.real() == d.real());
  CHECK(a.imag() == d.imag());
}

TEST_CASE("conjecture sum is real when every column has odd weight") {
  for (std::complex<double> v :
       {conjecture_sum(simplex_data_of(poly1("x^3"))),
        conjecture_sum(simplex_data_of(poly2("x^2 y + x y^2")))}) {
    CHECK(std::fabs(v.imag()) < 1e-14);
  }
}

TEST_CASE("conjecture sum vanishes on a certified unstable simplex") {
  Poly f = poly2("x + y^2");
  SimplexData S = simplex_data_of(f);
  CHECK(S.gamma == RatVec{rat(1, 2), rat(1)});
  CHECK(S.s0 == rat(-3, 2));
  CHECK(std::abs(conjecture_sum(S)) < 1e-12);
  // The geometry side of the same fact: the diagonal face is unstable in
  // the first variable.
  CHECK(instability_check(NewtonPolyhedron::of(f), f, 1).certified());
}

TEST_CASE("explicit mu closed forms") {
  check_close(explicit_mu(simplex_data_of(poly1("x^2")), 1.0),
              {1.25331413731550025, 1.25331413731550025}, 1e-13);
  {
    std::complex<double> v = explicit_mu(simplex_data_of(poly1("x^3")), 1.0);
    CHECK(v.real() == doctest::Approx(1.5466858841559797).epsilon(1e-13));
    CHECK(std::fabs(v.imag()) < 1e-14);
  }
  check_close(explicit_mu(simplex_data_of(poly2("x^2 + y^4")), 1.0),
              {1.22960515804861118, 2.96852944892487017}, 1e-13);
  {
    std::complex<double> v =
        explicit_mu(simplex_data_of(poly2("x^4 - y^4")), 1.0);
    CHECK(v.real() == doctest::Approx(3.2862618016492186).epsilon(1e-13));
    CHECK(std::fabs(v.imag()) < 1e-13);
  }
  {
    std::complex<double> v =
        explicit_mu(simplex_data_of(poly2("x^2 y + x y^2")), 1.0);
    CHECK(v.real() == doctest::Approx(7.17671167274209397).epsilon(1e-13));
    CHECK(std::fabs(v.imag()) < 1e-13);
  }
  check_close(explicit_mu(simplex_data_of(poly3("x^2 + y^2 + z^2")), 1.0),
              {-3.93740248643060494, 3.93740248643060494}, 1e-13);
  check_close(
      explicit_mu(simplex_data_of(poly3("-x^2 - y^2 - z^2")), 1.0),
      {-3.93740248643060494, -3.93740248643060494}, 1e-13);
  CHECK(std::abs(explicit_mu(simplex_data_of(poly2("x + y^2")), 1.0)) < 1e-12);

  // phi0 scales linearly.
  std::complex<double> one =
      explicit_mu(simplex_data_of(poly2("x^2 + y^4")), 1.0);
  std::complex<double> two =
      explicit_mu(simplex_data_of(poly2("x^2 + y^4")), 2.0);
  CHECK(std::abs(two - 2.0 * one) < 1e-14);

  // Integer exponent: the Gamma factor has a pole there.
  CHECK_THROWS_AS(explicit_mu(simplex_data_of(poly1("x")), 1.0), DomainError);
  CHECK_THROWS_AS(explicit_mu(simplex_data_of(poly2("x^2 - y^2")), 1.0),
                  DomainError);
}

TEST_CASE("explicit mu coefficient scaling law") {
  SimplexData S = simplex_data_of(poly2("x^2 + y^4"));
  SimplexData T = S;
  T.eps[0] = rat(3);  // the y^4 coefficient, weight 1/4
  double want = std::abs(explicit_mu(S, 1.0)) * std::pow(3.0, -0.25);
  CHECK(std::abs(explicit_mu(T, 1.0)) ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("combine mu reproduces the closed forms") {
  CHECK(combine_mu(0.0, 0.0, rat(-1, 2), 1) == std::complex<double>(0.0, 0.0));
  check_close(combine_mu(1.0, 0.0, rat(-1, 2), 1),
              {1.25331413731550025, 1.25331413731550025}, 1e-13);
  {
    double pi = std::numbers::pi;
    double mu_plus =
        0.5 * std::tgamma(0.25) * std::sqrt(pi) / std::tgamma(0.75);
    CHECK(mu_plus == doctest::Approx(2.62205755429211981).epsilon(1e-13));
    check_close(combine_mu(mu_plus, 0.0, rat(-3, 4), 1),
                {1.22960515804861118, 2.96852944892487017}, 1e-13);
  }
  // rho = 3 exercises the factorial prefactor.
  check_close(combine_mu(0.75, 0.0, rat(-1, 2), 3),
              {0.4699928014933125942, 0.4699928014933125942}, 1e-13);
  CHECK_THROWS_AS(combine_mu(1.0, 0.0, rat(-1), 1), DomainError);
  CHECK_THROWS_AS(combine_mu(1.0, 0.0, rat(-1, 2), 0), DomainError);
}

TEST_CASE("volume factors") {
  {
    Poly f = poly1("x^2");
    VolumeFactor V = volume_factor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(V.value == rat(1, 2));
    CHECK(V.pieces == std::vector<Rat>{rat(1, 2)});
  }
  {
    Poly f = poly2("x^2 + y^4");
    VolumeFactor V = volume_factor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(V.value == rat(1, 2));
    CHECK(V.pieces.size() == 1);
  }
  {
    Poly f = poly4(kFourVar);
    DiagonalReport r = rep_of(f);
    CHECK(r.rho == 2);
    VolumeFactor V = volume_factor(NewtonPolyhedron::of(f), r);
    CHECK(V.value == rat(1, 9));
    CHECK(V.pieces.size() == 1);
  }
  {
    Poly f = poly3(kCusp);
    VolumeFactor V = volume_factor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(V.value == rat(1, 9));
  }
  {
    Poly f = poly4(kCuspStar);
    VolumeFactor V = volume_factor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(V.value == rat(1, 9));
  }
  {
    Poly f = poly2("x^4 - y^4");
    VolumeFactor V = volume_factor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(V.value == rat(1, 4));
  }
  {
    Poly f = poly2("x^2 y + x y^2");
    VolumeFactor V = volume_factor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(V.value == rat(1, 3));
  }
  {
    Poly f = poly3("x^2 + y^2 + z^2");
    VolumeFactor V = volume_factor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(V.value == rat(1, 2));
  }
  {
    // Vertex whose normal cone is a square cone: triangulation adds two
    // determinant pieces.
    Poly f = poly3("x^2 y^2 z^2 + x^4 y^4");
    DiagonalReport r = rep_of(f);
    CHECK(r.rho == 3);
    CHECK(r.s0 == rat(-1, 2));
    VolumeFactor V = volume_factor(NewtonPolyhedron::of(f), r);
    CHECK(V.value == rat(3, 32));
    CHECK(V.pieces.size() == 2);
    for (const Rat& p : V.pieces) CHECK(p > 0);
  }
  {
    Poly f = poly2("x + x y");
    CHECK_THROWS_AS(volume_factor(NewtonPolyhedron::of(f), rep_of(f)),
                    DomainError);
  }
}

TEST_CASE("quadrature kernel accuracy") {
  double pi = std::numbers::pi;
  {
    // Plain abscissas cannot resolve the last ~1e-16 sliver next to x = 1,
    // which carries ~2e-8 of mass for a -1/2 power.
    QuadResult q = integrate_finite(
        [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0,
        1e-10);
    CHECK(q.value == doctest::Approx(pi).epsilon(1e-7));
  }
  {
    // The endpoint-offset form recovers that sliver.
    QuadResult q = integrate_finite(
        [](double x, double xc) {
          double other = xc >= 0.0 ? x : 1.0 - x;
          return 1.0 / std::sqrt(std::fabs(xc) * other);
        },
        0.0, 1.0, 1e-10);
    CHECK(q.value == doctest::Approx(pi).epsilon(1e-12));
  }
  {
    QuadResult q = integrate_finite(
        [](double x) { return 4.0 / (1.0 + x * x); }, 0.0, 1.0, 1e-10);
    CHECK(q.value == doctest::Approx(pi).epsilon(1e-12));
  }
  {
    QuadResult q =
        integrate_tail([](double x) { return 1.0 / (x * x); }, 1.0, 1e-10);
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    QuadResult q = integrate_tail(
        [](double x) { return std::pow(x, -1.5); }, 4.0, 1e-10);
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(integrate_finite([](double) { return 0.0; }, 1.0, 0.0, 1e-8),
                  DomainError);
  CHECK_THROWS_AS(integrate_tail([](double) { return 0.0; }, 0.0, 1e-8),
                  DomainError);
}

TEST_CASE("positive root location") {
  {
    std::vector<double> r = positive_roots({0.0, -3.0, 0.0, 1.0});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  }
  {
    std::vector<double> r = positive_roots({2.0, -3.0, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-9));
  }
  // Sign-definite touch points carry no sign change and stay unreported.
  CHECK(positive_roots({1.0, -2.0, 1.0}).empty());
  CHECK(positive_roots({5.0}).empty());
  CHECK(cauchy_root_bound({2.0, -3.0, 1.0}) == 4.0);
}

TEST_CASE("pv integrals match beta-function values") {
  Poly f = poly2("x^2 + y^4");
  DiagonalReport r = rep_of(f);
  Poly f0 = face_polynomial(f, r.tau0);
  PvEstimate plus = pv_integral(f0, r, +1);
  CHECK(plus.value == doctest::Approx(1.31102877714605991).epsilon(1e-8));
  CHECK(plus.error < 1e-6);
  PvEstimate minus = pv_integral(f0, r, -1);
  CHECK(minus.value == 0.0);
}

TEST_CASE("pv integral splits at interior sign changes") {
  Poly f = poly2("x^2 y + x y^2");
  DiagonalReport r = rep_of(f);
  Poly f0 = face_polynomial(f, r.tau0);
  CHECK(pv_integral(f0, r, +1).value ==
        doctest::Approx(5.29991625085634987).epsilon(1e-8));
  CHECK(pv_integral(f0, r, -1).value == 0.0);
  // One flipped quadrant: the slice changes sign at 1 and both parts carry
  // the same beta value.
  Poly g = f0.sign_flipped({-1, 1});
  CHECK(pv_integral(g, r, +1).value ==
        doctest::Approx(5.29991625085634987).epsilon(1e-7));
  CHECK(pv_integral(g, r, -1).value ==
        doctest::Approx(5.29991625085634987).epsilon(1e-7));
}

TEST_CASE("pv integral handles a two-sided split with tail") {
  Poly f = poly2("x^4 - y^4");
  DiagonalReport r = rep_of(f);
  CHECK(r.s0 == rat(-1, 2));
  Poly f0 = face_polynomial(f, r.tau0);
  PvEstimate plus = pv_integral(f0, r, +1);
  PvEstimate minus = pv_integral(f0, r, -1);
  CHECK(plus.value == doctest::Approx(1.31102877714605991).epsilon(1e-8));
  CHECK(minus.value == doctest::Approx(1.31102877714605991).epsilon(1e-8));
}

TEST_CASE("pv integral in two trailing variables") {
  Poly f = poly3("x^2 + y^2 + z^2");
  DiagonalReport r = rep_of(f);
  Poly f0 = face_polynomial(f, r.tau0);
  PvEstimate plus = pv_integral(f0, r, +1);
  CHECK(plus.value ==
        doctest::Approx(1.57079632679489662).epsilon(1e-6));
  CHECK(pv_integral(f0, r, -1).value == 0.0);
  // The all-negative counterpart converges through the zero-free condition.
  Poly g = poly3("-x^2 - y^2 - z^2");
  Poly g0 = face_polynomial(g, rep_of(g).tau0);
  CHECK(pv_integral(g0, rep_of(g), -1).value ==
        doctest::Approx(1.57079632679489662).epsilon(1e-6));
  CHECK(pv_integral(g0, rep_of(g), +1).value == 0.0);
}

TEST_CASE("pv integral zero-dimensional convention") {
  Poly f = poly1("x^3");
  DiagonalReport r = rep_of(f);
  Poly f0 = face_polynomial(f, r.tau0);
  CHECK(pv_integral(f0, r, +1).value == 1.0);
  CHECK(pv_integral(f0, r, +1).error == 0.0);
  CHECK(pv_integral(f0, r, -1).value == 0.0);
  Poly g = f0.sign_flipped({-1});
  CHECK(pv_integral(g, r, +1).value == 0.0);
  CHECK(pv_integral(g, r, -1).value == 1.0);
}

TEST_CASE("pv integral converges at integer exponent when the face is definite") {
  Poly f = poly2("x^2 + y^2");
  DiagonalReport r = rep_of(f);
  CHECK(r.s0 == rat(-1));
  Poly f0 = face_polynomial(f, r.tau0);
  CHECK(pv_integral(f0, r, +1).value ==
        doctest::Approx(1.57079632679489662).epsilon(1e-9));
}

TEST_CASE("pv integral refuses without a convergence certificate") {
  Poly f = poly2("x^2 - y^2");
  DiagonalReport r = rep_of(f);
  CHECK(r.s0 == rat(-1));
  CHECK(r.s0_integral);
  Poly f0 = face_polynomial(f, r.tau0);
  CHECK_THROWS_AS(pv_integral(f0, r, +1), NonConvergentError);
  CHECK_THROWS_AS(pv_integral(f0, r, -1), NonConvergentError);
}

TEST_CASE("pv integral validates its inputs") {
  Poly f = poly2("x + x y");
  DiagonalReport r = rep_of(f);
  CHECK(!r.compact);
  Poly f0 = face_polynomial(f, r.tau0);
  CHECK_THROWS_AS(pv_integral(f0, r, +1), DomainError);

  Poly g = poly2("x^2 + y^4");
  DiagonalReport rg = rep_of(g);
  CHECK_THROWS_AS(pv_integral(face_polynomial(g, rg.tau0), rg, 0), DomainError);
}

TEST_CASE("residue route reproduces the two-term closed form") {
  Poly f = poly2("x^2 + y^4");
  ResidueReport R = residue_via_pv(f, rep_of(f));
  CHECK(R.method == ResidueMethod::residue_pv);
  CHECK(!R.star_corrected);
  CHECK(R.vol_factor == rat(1, 2));
  CHECK(R.rho == 1);
  CHECK(R.s0 == rat(-3, 4));
  CHECK(R.mu_bar_plus ==
        doctest::Approx(0.655514388573029953).epsilon(1e-8));
  CHECK(R.mu_bar_minus == 0.0);
  CHECK(R.mu_plus == doctest::Approx(2.62205755429211981).epsilon(1e-8));
  CHECK(R.mu_minus == 0.0);
  check_close(R.mu, {1.22960515804861118, 2.96852944892487017}, 1e-7);
  std::complex<double> closed =
      explicit_mu(simplex_data_of(f), 1.0);
  CHECK(std::abs(R.mu - closed) <= 1e-6 * std::abs(closed));
  CHECK(R.error_estimate >= 0.0);
  CHECK(R.error_estimate < 1e-4);
}

TEST_CASE("residue route on the pure square and cube") {
  {
    Poly f = poly1("x^2");
    ResidueReport R = residue_via_pv(f, rep_of(f));
    CHECK(R.mu_bar_plus == 0.5);
    CHECK(R.mu_plus == 1.0);
    CHECK(R.mu_minus == 0.0);
    check_close(R.mu, {1.25331413731550025, 1.25331413731550025}, 1e-13);
  }
  {
    Poly f = poly1("x^3");
    ResidueReport R = residue_via_pv(f, rep_of(f));
    CHECK(R.mu_plus == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(R.mu_minus == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    std::complex<double> closed = explicit_mu(simplex_data_of(f), 1.0);
    CHECK(std::abs(R.mu - closed) <= 1e-12 * std::abs(closed));
  }
}

TEST_CASE("residue route inherits the swap symmetry") {
  Poly f = poly2("x^4 - y^4");
  ResidueReport R = residue_via_pv(f, rep_of(f));
  CHECK(R.mu_bar_plus == doctest::Approx(R.mu_bar_minus).epsilon(1e-8));
  CHECK(R.mu_bar_plus ==
        doctest::Approx(0.327757194286514976).epsilon(1e-8));
  CHECK(R.mu_plus == doctest::Approx(1.31102877714605991).epsilon(1e-8));
  CHECK(R.mu_plus == doctest::Approx(R.mu_minus).epsilon(1e-8));
  CHECK(std::fabs(R.mu.imag()) < 1e-8);
  CHECK(R.mu.real() == doctest::Approx(3.2862618016492186).epsilon(1e-7));
  std::complex<double> closed = explicit_mu(simplex_data_of(f), 1.0);
  CHECK(std::abs(R.mu - closed) <= 1e-6 * std::abs(closed));
}

TEST_CASE("residue route across all four quadrants") {
  Poly f = poly2("x^2 y + x y^2");
  ResidueReport R = residue_via_pv(f, rep_of(f));
  CHECK(R.mu_bar_plus ==
        doctest::Approx(5.29991625085634987 / 3.0).epsilon(1e-7));
  CHECK(R.mu_plus == doctest::Approx(5.29991625085634987).epsilon(1e-7));
  CHECK(R.mu_minus == doctest::Approx(5.29991625085634987).epsilon(1e-7));
  CHECK(std::fabs(R.mu.imag()) < 1e-6);
  CHECK(R.mu.real() == doctest::Approx(7.17671167274209397).epsilon(1e-6));
  std::complex<double> closed = explicit_mu(simplex_data_of(f), 1.0);
  CHECK(std::abs(R.mu - closed) <= 1e-6 * std::abs(closed));
}

TEST_CASE("residue route in three variables") {
  {
    Poly f = poly3("x^2 + y^2 + z^2");
    ResidueReport R = residue_via_pv(f, rep_of(f));
    CHECK(R.mu_plus ==
          doctest::Approx(6.28318530717958648).epsilon(1e-6));
    CHECK(R.mu_minus == 0.0);
    check_close(R.mu, {-3.93740248643060494, 3.93740248643060494}, 1e-6);
  }
  {
    Poly f = poly3("-x^2 - y^2 - z^2");
    ResidueReport R = residue_via_pv(f, rep_of(f));
    CHECK(R.mu_plus == 0.0);
    CHECK(R.mu_minus ==
          doctest::Approx(6.28318530717958648).epsilon(1e-6));
    check_close(R.mu, {-3.93740248643060494, -3.93740248643060494}, 1e-6);
    std::complex<double> closed = explicit_mu(simplex_data_of(f), 1.0);
    CHECK(std::abs(R.mu - closed) <= 1e-6 * std::abs(closed));
  }
}

TEST_CASE("residue route on a vertex with a square normal cone") {
  Poly f = poly3("x^2 y^2 z^2 + x^4 y^4");
  ResidueReport R = residue_via_pv(f, rep_of(f));
  CHECK(R.vol_factor == rat(3, 32));
  CHECK(R.rho == 3);
  CHECK(R.mu_plus == 0.75);
  CHECK(R.mu_minus == 0.0);
  CHECK(R.error_estimate == 0.0);
  check_close(R.mu, {0.4699928014933125942, 0.4699928014933125942}, 1e-13);
}

TEST_CASE("residue route refuses integer exponents") {
  for (const char* src : {"x^2 - y^2", "x^2 + y^2"}) {
    Poly f = poly2(src);
    CHECK_THROWS_AS(residue_via_pv(f, rep_of(f)), DomainError);
  }
}

TEST_CASE("residue route scales linearly in the amplitude value") {
  Poly f = poly2("x^2 + y^4");
  ResidueReport one = residue_via_pv(f, rep_of(f), 1.0);
  ResidueReport two = residue_via_pv(f, rep_of(f), 2.0);
  CHECK(std::abs(two.mu - 2.0 * one.mu) <= 1e-14 * std::abs(one.mu));
  CHECK(two.mu_plus == doctest::Approx(2.0 * one.mu_plus).epsilon(1e-14));
  CHECK(two.mu_bar_plus ==
        doctest::Approx(2.0 * one.mu_bar_plus).epsilon(1e-14));
}

TEST_CASE("mu vanishes exactly when both signed sums vanish") {
  for (const char* src : {"x^2 + y^4", "x^4 - y^4", "x^2 y + x y^2"}) {
    Poly f = poly2(src);
    ResidueReport R = residue_via_pv(f, rep_of(f));
    bool mu_zero = std::abs(R.mu) < 1e-10;
    bool parts_zero =
        std::fabs(R.mu_plus) < 1e-10 && std::fabs(R.mu_minus) < 1e-10;
    CHECK(mu_zero == parts_zero);
  }
}

TEST_CASE("complex-route prefactor") {
  {
    Poly f = poly2("x^2 + y^4");
    SymbolicPrefactor p =
        complex_prefactor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(p.coefficient == rat(1, 2));
    CHECK(p.pi_power == 1);
  }
  {
    Poly f = poly4(kFourVar);
    SymbolicPrefactor p =
        complex_prefactor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(p.coefficient == rat(1, 9));
    CHECK(p.pi_power == 2);
  }
  {
    Poly f = poly1("x^2");
    SymbolicPrefactor p =
        complex_prefactor(NewtonPolyhedron::of(f), rep_of(f));
    CHECK(p.coefficient == rat(1, 2));
    CHECK(p.pi_power == 1);
  }
  {
    Poly f = poly2("x + x y");
    CHECK_THROWS_AS(complex_prefactor(NewtonPolyhedron::of(f), rep_of(f)),
                    DomainError);
  }
}
