#include "newtosc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace newtosc {

Tuple expo_tuple(const Expo& e) {
  Tuple t(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) t[i] = e[i];
  return t;
}

Expo expo_of_tuple(const Tuple& t) {
  Expo e(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t[i].fits_sint_p())
      throw DomainError("exponent too large for machine int");
    e[i] = static_cast<int>(t[i].get_si());
  }
  return e;
}

Poly Poly::constant(std::size_t nvars, const Rat& c) {
  Poly p(nvars);
  p.add_term(c, Expo(nvars, 0));
  return p;
}

Poly Poly::monomial(std::size_t nvars, const Rat& c, const Expo& e) {
  Poly p(nvars);
  p.add_term(c, e);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t var) {
  Expo e(nvars, 0);
  e.at(var) = 1;
  return monomial(nvars, Rat(1), e);
}

void Poly::add_term(const Rat& c, const Expo& e) {
  if (e.size() != nvars_) throw DomainError("add_term: arity mismatch");
  for (int k : e)
    if (k < 0) throw DomainError("add_term: negative exponent");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rat Poly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::vector<Expo> Poly::support() const {
  std::vector<Expo> s;
  s.reserve(terms_.size());
  for (const auto& [e, c] : terms_) s.push_back(e);
  return s;
}

std::vector<Tuple> Poly::support_points() const {
  std::vector<Tuple> s;
  s.reserve(terms_.size());
  for (const auto& [e, c] : terms_) s.push_back(expo_tuple(e));
  return s;
}

Rat Poly::operator()(const RatVec& x) const {
  if (x.size() != nvars_) throw DomainError("eval: arity mismatch");
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat m = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    acc += m;
  }
  return acc;
}

double Poly::eval(const std::vector<double>& x) const {
  if (x.size() != nvars_) throw DomainError("eval: arity mismatch");
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double m = to_double(c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) m *= std::pow(x[i], e[i]);
    acc += m;
  }
  return acc;
}

Poly Poly::partial(std::size_t var) const {
  if (var >= nvars_) throw DomainError("partial: variable out of range");
  Poly p(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Expo d = e;
    d[var] -= 1;
    p.add_term(c * Rat(e[var]), d);
  }
  return p;
}

Poly Poly::restrict_support(const std::vector<Expo>& keep) const {
  std::set<Expo> allow(keep.begin(), keep.end());
  Poly p(nvars_);
  for (const auto& [e, c] : terms_)
    if (allow.count(e)) p.add_term(c, e);
  return p;
}

Poly Poly::sign_flipped(const std::vector<int>& signs) const {
  if (signs.size() != nvars_) throw DomainError("sign_flipped: arity mismatch");
  Poly p(nvars_);
  for (const auto& [e, c] : terms_) {
    int neg = 0;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (signs[i] < 0 && e[i] % 2 == 1) neg ^= 1;
    p.add_term(neg ? -c : c, e);
  }
  return p;
}

Poly Poly::eliminate_prefix_ones(std::size_t m) const {
  if (m > nvars_) throw DomainError("eliminate_prefix_ones: bad prefix");
  Poly p(nvars_ - m);
  for (const auto& [e, c] : terms_) {
    Expo tail(e.begin() + static_cast<long>(m), e.end());
    p.add_term(c, tail);
  }
  return p;
}

Poly Poly::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != nvars_) throw DomainError("permuted: arity mismatch");
  std::vector<bool> seen(nvars_, false);
  for (std::size_t j : order) {
    if (j >= nvars_ || seen[j]) throw DomainError("permuted: not a permutation");
    seen[j] = true;
  }
  Poly p(nvars_);
  for (const auto& [e, c] : terms_) {
    Expo re(nvars_);
    for (std::size_t k = 0; k < nvars_; ++k) re[k] = e[order[k]];
    p.add_term(c, re);
  }
  return p;
}

Poly Poly::promoted(std::size_t new_nvars) const {
  if (new_nvars < nvars_) throw DomainError("promoted: cannot drop variables");
  Poly p(new_nvars);
  for (const auto& [e, c] : terms_) {
    Expo ext = e;
    ext.resize(new_nvars, 0);
    p.add_term(c, ext);
  }
  return p;
}

int Poly::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int k : e) d += k;
    deg = std::max(deg, d);
  }
  return deg;
}

bool Poly::vanishes_at_origin() const {
  return coeff(Expo(nvars_, 0)) == 0;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw DomainError("add: arity mismatch");
  Poly p = a;
  for (const auto& [e, c] : b.terms()) p.add_term(c, e);
  return p;
}

Poly operator-(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw DomainError("sub: arity mismatch");
  Poly p = a;
  for (const auto& [e, c] : b.terms()) p.add_term(-c, e);
  return p;
}

Poly operator-(const Poly& a) {
  Poly p(a.nvars());
  for (const auto& [e, c] : a.terms()) p.add_term(-c, e);
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw DomainError("mul: arity mismatch");
  Poly p(a.nvars());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      Expo e(a.nvars());
      for (std::size_t i = 0; i < a.nvars(); ++i) e[i] = ea[i] + eb[i];
      p.add_term(ca * cb, e);
    }
  return p;
}

Poly pow(const Poly& a, unsigned e) {
  Poly acc = Poly::constant(a.nvars(), Rat(1));
  for (unsigned k = 0; k < e; ++k) acc = acc * a;
  return acc;
}

std::string to_string(const Poly& p, const std::vector<std::string>& vars) {
  if (vars.size() != p.nvars()) throw DomainError("to_string: name mismatch");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rat ac = abs(c);
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    bool has_var = false;
    for (int k : e)
      if (k) has_var = true;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (!has_var) {
      out += to_string(ac);
    } else if (ac == 1) {
      out += mono;
    } else {
      out += to_string(ac) + "*" + mono;
    }
  }
  return out;
}

std::vector<double> last_variable_coefficients(
    const Poly& f, const std::vector<double>& outer) {
  if (f.nvars() == 0 || outer.size() + 1 != f.nvars())
    throw DomainError("last_variable_coefficients: outer size mismatch");
  int deg = 0;
  for (const auto& [e, c] : f.terms()) deg = std::max(deg, e.back());
  std::vector<double> out(static_cast<std::size_t>(deg) + 1, 0.0);
  for (const auto& [e, c] : f.terms()) {
    double w = to_double(c);
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
      w *= std::pow(outer[i], e[i]);
    out[static_cast<std::size_t>(e.back())] += w;
  }
  return out;
}

std::vector<std::string> default_var_names(std::size_t nvars) {
  static const char* short_names[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  if (nvars <= 4) {
    for (std::size_t i = 0; i < nvars; ++i) names.push_back(short_names[i]);
  } else {
    for (std::size_t i = 0; i < nvars; ++i)
      names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

}  // namespace newtosc
