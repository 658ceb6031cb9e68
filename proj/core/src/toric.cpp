#include "newtosc/toric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace newtosc {

namespace {

std::size_t rank_of(const std::vector<Tuple>& gens) {
  if (gens.empty()) return 0;
  return rank(Mat::from_rows(gens));
}

RatVec to_ratvec(const Tuple& t) {
  RatVec v;
  v.reserve(t.size());
  for (const Int& x : t) v.push_back(Rat(x));
  return v;
}

// Unique coefficients with sum t_i gens_i = p; nullopt when p is outside the
// span or the generators are dependent.
std::optional<RatVec> coords_in(const std::vector<Tuple>& gens,
                                const Tuple& p) {
  const std::size_t n = p.size();
  const std::size_t k = gens.size();
  if (k == 0) return is_zero(p) ? std::optional<RatVec>(RatVec{}) : std::nullopt;
  // augmented system, columns = generators
  std::vector<RatVec> a(n, RatVec(k + 1, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = Rat(gens[j][i]);
    a[i][k] = Rat(p[i]);
  }
  std::vector<std::size_t> pivot_row(k, n);
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[r], a[piv]);
    Rat inv = a[r][c];
    for (std::size_t j = c; j <= k; ++j) a[r][j] /= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_row[c] = r;
    ++r;
  }
  for (std::size_t c = 0; c < k; ++c)
    if (pivot_row[c] == n) return std::nullopt;  // dependent generators
  for (std::size_t i = r; i < n; ++i)
    if (a[i][k] != 0) return std::nullopt;  // inconsistent
  RatVec t(k);
  for (std::size_t c = 0; c < k; ++c) t[c] = a[pivot_row[c]][k];
  return t;
}

bool in_cone(const std::vector<Tuple>& gens, const Tuple& p) {
  if (is_zero(p)) return true;
  if (gens.empty()) return false;
  std::size_t r = rank_of(gens);
  bool found = false;
  for_each_combination(gens.size(), r, [&](const std::vector<std::size_t>& S) {
    if (found) return;
    std::vector<Tuple> sub;
    sub.reserve(r);
    for (std::size_t i : S) sub.push_back(gens[i]);
    auto t = coords_in(sub, p);
    if (!t) return;
    for (const Rat& x : *t)
      if (x < 0) return;
    found = true;
  });
  return found;
}

struct ConeFacet {
  Tuple normal;                   // meaningful only for full-dim cones
  std::vector<std::size_t> gens;  // indices of generators on the facet
};

// Facets of a full-dimensional cone from its generators.
std::vector<ConeFacet> fulldim_facets(const std::vector<Tuple>& gens,
                                      std::size_t n) {
  std::map<Tuple, std::vector<std::size_t>> seen;
  for_each_combination(gens.size(), n - 1,
                       [&](const std::vector<std::size_t>& S) {
    std::vector<Tuple> rows;
    rows.reserve(n - 1);
    for (std::size_t i : S) rows.push_back(gens[i]);
    Tuple v = orthogonal_vector(rows, n);
    if (is_zero(v)) return;
    bool nonneg = true, nonpos = true;
    std::vector<Int> vals(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      vals[i] = dot(v, gens[i]);
      if (vals[i] > 0) nonpos = false;
      if (vals[i] < 0) nonneg = false;
    }
    if (!nonneg && !nonpos) return;
    if (nonpos) {
      for (Int& x : v) x = -x;
      for (Int& x : vals) x = -x;
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (vals[i] == 0) idx.push_back(i);
    seen.emplace(primitive(v), std::move(idx));
  });
  std::vector<ConeFacet> out;
  for (auto& [nrm, idx] : seen) out.push_back({nrm, std::move(idx)});
  return out;
}

// Greedy independent subset spanning the generators, by listed order.
std::vector<std::size_t> span_basis(const std::vector<Tuple>& gens) {
  std::vector<std::size_t> basis;
  std::vector<Tuple> rows;
  std::size_t r = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    rows.push_back(gens[i]);
    std::size_t nr = rank_of(rows);
    if (nr > r) {
      r = nr;
      basis.push_back(i);
    } else {
      rows.pop_back();
    }
  }
  return basis;
}

Tuple ratvec_to_integer(const RatVec& v) {
  Int l = 1;
  for (const Rat& x : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  Tuple t(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = Rat(l) * v[i];
    t[i] = s.get_num();
  }
  return t;
}

// Generator index sets of the facets of cone(gens), any dimension.
std::vector<std::vector<std::size_t>> facet_index_sets(
    const std::vector<Tuple>& gens, std::size_t n) {
  std::size_t d = rank_of(gens);
  if (d == 0) return {};
  if (d == n) {
    std::vector<std::vector<std::size_t>> out;
    for (auto& f : fulldim_facets(gens, n)) out.push_back(f.gens);
    return out;
  }
  // reduce to coordinates in a spanning subset; ray directions are
  // insensitive to the integer rescale
  std::vector<std::size_t> bidx = span_basis(gens);
  std::vector<Tuple> basis;
  for (std::size_t i : bidx) basis.push_back(gens[i]);
  std::vector<Tuple> reduced;
  reduced.reserve(gens.size());
  for (const Tuple& g : gens) {
    auto c = coords_in(basis, g);
    if (!c) throw Error("facet_index_sets: generator outside its own span");
    reduced.push_back(ratvec_to_integer(*c));
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& f : fulldim_facets(reduced, d)) out.push_back(f.gens);
  return out;
}

// Pulling triangulation anchored at the first generator in listed order.
void triangulate(std::vector<Tuple> gens,
                 std::vector<std::vector<Tuple>>& out) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (rank_of(gens) == gens.size()) {
    out.push_back(gens);
    return;
  }
  const Tuple& apex = gens.front();
  std::size_t n = gens.front().size();
  for (auto& idx : facet_index_sets(gens, n)) {
    std::vector<Tuple> sub;
    bool has_apex = false;
    for (std::size_t i : idx) {
      if (gens[i] == apex) has_apex = true;
      sub.push_back(gens[i]);
    }
    if (has_apex) continue;
    std::vector<std::vector<Tuple>> cells;
    triangulate(std::move(sub), cells);
    for (auto& cell : cells) {
      cell.push_back(apex);
      std::sort(cell.begin(), cell.end());
      out.push_back(std::move(cell));
    }
  }
}

struct HRep {
  std::vector<Tuple> ineqs;
  std::vector<Tuple> eqs;
};

HRep cone_hrep(const std::vector<Tuple>& gens, std::size_t n) {
  HRep h;
  for (const RatVec& v : nullspace(Mat::from_rows(gens)))
    h.eqs.push_back(to_primitive_integer(v));
  std::size_t d = rank_of(gens);
  if (d == n) {
    for (auto& f : fulldim_facets(gens, n)) h.ineqs.push_back(f.normal);
    return h;
  }
  // lift facet normals of the span-reduced cone back to the ambient space
  std::vector<std::size_t> bidx = span_basis(gens);
  std::vector<Tuple> basis;
  for (std::size_t i : bidx) basis.push_back(gens[i]);
  std::vector<Tuple> reduced;
  for (const Tuple& g : gens) {
    auto c = coords_in(basis, g);
    if (!c) throw Error("cone_hrep: generator outside its own span");
    reduced.push_back(ratvec_to_integer(*c));
  }
  Mat B = Mat::from_columns(basis);
  Mat G = B.transpose() * B;
  for (auto& f : fulldim_facets(reduced, d)) {
    RatVec y = solve(G, to_ratvec(f.normal));
    RatVec ambient = B * y;
    h.ineqs.push_back(to_primitive_integer(ambient));
  }
  return h;
}

// Extreme rays of the intersection of two cones given by H-representations.
std::vector<Tuple> intersect_rays(const HRep& h1, const HRep& h2,
                                  std::size_t n) {
  std::vector<Tuple> rows;
  std::vector<bool> is_eq;
  for (const HRep* h : {&h1, &h2}) {
    for (const Tuple& t : h->ineqs) {
      rows.push_back(t);
      is_eq.push_back(false);
    }
    for (const Tuple& t : h->eqs) {
      rows.push_back(t);
      is_eq.push_back(true);
    }
  }
  std::set<Tuple> found;
  auto feasible = [&](const Tuple& v) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Int s = dot(rows[i], v);
      if (is_eq[i] ? s != 0 : s < 0) return false;
    }
    return true;
  };
  for_each_combination(rows.size(), n - 1,
                       [&](const std::vector<std::size_t>& S) {
    std::vector<Tuple> sel;
    sel.reserve(n - 1);
    for (std::size_t i : S) sel.push_back(rows[i]);
    Tuple v = orthogonal_vector(sel, n);
    if (is_zero(v)) return;
    if (feasible(v)) {
      found.insert(primitive(v));
      return;
    }
    for (Int& x : v) x = -x;
    if (feasible(v)) found.insert(primitive(v));
  });
  return {found.begin(), found.end()};
}

// The common-face condition for one side: the smallest face of the cone
// containing the intersection must lie inside the other cone.
bool face_through_lies_in(const std::vector<Tuple>& gens, const HRep& h,
                          const std::vector<Tuple>& rays,
                          const std::vector<Tuple>& other) {
  std::vector<const Tuple*> tight;
  for (const Tuple& q : h.ineqs) {
    bool zero_on_all = true;
    for (const Tuple& r : rays)
      if (dot(q, r) != 0) {
        zero_on_all = false;
        break;
      }
    if (zero_on_all) tight.push_back(&q);
  }
  for (const Tuple& g : gens) {
    bool on_face = true;
    for (const Tuple* q : tight)
      if (dot(*q, g) != 0) {
        on_face = false;
        break;
      }
    if (on_face && !in_cone(other, g)) return false;
  }
  return true;
}

Int cone_multiplicity(const std::vector<Tuple>& gens) {
  std::vector<Int> d = snf_diagonal(gens);
  Int m = 1;
  for (const Int& x : d) {
    if (x == 0) throw DomainError("multiplicity of a dependent generator set");
    m *= x;
  }
  return m;
}

// Shortest nonzero lattice point of the half-open fundamental parallelepiped
// of an independent generator set, with its coefficients. Lexicographic
// tie-break on the point.
std::pair<Tuple, RatVec> parallelepiped_point(const std::vector<Tuple>& gens,
                                              std::size_t n) {
  Tuple hi(n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (const Tuple& g : gens) hi[i] += g[i];
    if (hi[i] > 0) hi[i] -= 1;
  }
  std::optional<Tuple> best;
  std::optional<RatVec> best_t;
  Int best_norm = 0;
  Tuple p(n, Int(0));
  for (;;) {
    if (!is_zero(p)) {
      auto t = coords_in(gens, p);
      bool ok = t.has_value();
      if (ok)
        for (const Rat& x : *t)
          if (x < 0 || x >= 1) {
            ok = false;
            break;
          }
      if (ok) {
        Int norm = dot(p, p);
        if (!best || norm < best_norm || (norm == best_norm && p < *best)) {
          best = p;
          best_t = *t;
          best_norm = norm;
        }
      }
    }
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (p[i] < hi[i]) {
        p[i] += 1;
        for (std::size_t j = i + 1; j < n; ++j) p[j] = 0;
        break;
      }
      if (i == 0) {
        if (!best)
          throw Error("parallelepiped of a simple cone has no lattice point");
        return {*best, *best_t};
      }
    }
  }
}

std::vector<Tuple> canonical_gens(std::vector<Tuple> gens) {
  for (Tuple& g : gens) g = primitive(g);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

}  // namespace

std::optional<Rat> NumericalData::candidate_pole() const {
  if (N == 0) return std::nullopt;
  return rat_of(-nu, N);
}

std::size_t cone_dim(const Cone& c) { return rank_of(c.generators); }

bool is_simplicial(const Cone& c) {
  return rank_of(c.generators) == c.generators.size();
}

bool is_simple(const Cone& c) { return is_unimodular_family(c.generators); }

bool cone_contains(const Cone& c, const Tuple& p) {
  return in_cone(c.generators, p);
}

Fan make_fan(std::vector<Cone> cones, std::size_t n) {
  std::vector<std::vector<Tuple>> gsets;
  for (const Cone& c : cones) {
    if (c.generators.empty()) throw DomainError("fan cone without generators");
    for (const Tuple& g : c.generators) {
      if (g.size() != n) throw DomainError("fan generator dimension mismatch");
      if (is_zero(g)) throw DomainError("fan generator is zero");
      for (const Int& x : g)
        if (x < 0) throw DomainError("fan generator outside the orthant");
    }
    gsets.push_back(canonical_gens(c.generators));
  }
  std::sort(gsets.begin(), gsets.end());
  gsets.erase(std::unique(gsets.begin(), gsets.end()), gsets.end());

  // keep only cones not contained in another
  std::vector<std::vector<Tuple>> keep;
  for (std::size_t i = 0; i < gsets.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < gsets.size() && !dominated; ++j) {
      if (i == j) continue;
      bool i_in_j = true;
      for (const Tuple& g : gsets[i])
        if (!in_cone(gsets[j], g)) {
          i_in_j = false;
          break;
        }
      if (!i_in_j) continue;
      bool j_in_i = true;
      for (const Tuple& g : gsets[j])
        if (!in_cone(gsets[i], g)) {
          j_in_i = false;
          break;
        }
      // mutual containment keeps the lexicographically smaller list
      dominated = !j_in_i || gsets[j] < gsets[i];
    }
    if (!dominated) keep.push_back(gsets[i]);
  }

  std::set<Tuple> rayset;
  for (const auto& g : keep) rayset.insert(g.begin(), g.end());

  std::vector<HRep> hreps;
  hreps.reserve(keep.size());
  for (const auto& g : keep) hreps.push_back(cone_hrep(g, n));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      std::vector<Tuple> rays = intersect_rays(hreps[i], hreps[j], n);
      if (!face_through_lies_in(keep[i], hreps[i], rays, keep[j]) ||
          !face_through_lies_in(keep[j], hreps[j], rays, keep[i]))
        throw Error("fan wall condition violated");
    }

  Fan F;
  F.rays.assign(rayset.begin(), rayset.end());
  for (auto& g : keep) F.cones.push_back(Cone{std::move(g)});
  return F;
}

Cone normal_cone(const NewtonPolyhedron& P, const Face& tau) {
  if (!tau.compact) throw DomainError("normal cone of a noncompact face");
  std::vector<Tuple> gens;
  for (std::size_t u : tau.active) gens.push_back(P.facets()[u].normal);
  gens = canonical_gens(gens);
  if (rank_of(gens) != P.dim() - tau.dim)
    throw Error("normal cone rank does not match face codimension");
  return Cone{gens};
}

Fan normal_fan(const NewtonPolyhedron& P) {
  std::vector<Cone> cones;
  for (const Tuple& v : P.vertices()) {
    std::vector<Tuple> gens;
    for (const Facet& f : P.facets())
      if (dot(f.normal, v) == f.offset) gens.push_back(f.normal);
    cones.push_back(Cone{std::move(gens)});
  }
  Fan F = make_fan(std::move(cones), P.dim());
  if (!covers_orthant(F)) throw Error("vertex cones fail to cover the orthant");
  return F;
}

Fan subdivide_simplicial(const Fan& F) {
  std::size_t n = F.rays.empty() ? 0 : F.rays.front().size();
  std::vector<Cone> out;
  for (const Cone& c : F.cones) {
    if (is_simplicial(c)) {
      out.push_back(c);
      continue;
    }
    std::vector<std::vector<Tuple>> cells;
    triangulate(c.generators, cells);
    for (auto& cell : cells) out.push_back(Cone{std::move(cell)});
  }
  return make_fan(std::move(out), n);
}

Fan refine_simple(const Fan& F) {
  if (F.cones.empty()) return F;
  std::size_t n = F.rays.front().size();
  for (const Cone& c : F.cones)
    if (!is_simplicial(c))
      throw DomainError("refine_simple requires a simplicial fan");

  std::vector<std::vector<Tuple>> cones;
  for (const Cone& c : F.cones) cones.push_back(canonical_gens(c.generators));
  std::sort(cones.begin(), cones.end());

  for (;;) {
    std::size_t pick = cones.size();
    for (std::size_t i = 0; i < cones.size(); ++i)
      if (cone_multiplicity(cones[i]) > 1) {
        pick = i;
        break;
      }
    if (pick == cones.size()) break;
    auto [p, tp] = parallelepiped_point(cones[pick], n);
    Tuple pr = primitive(p);
    // stellar subdivision of every cone the new ray passes through
    std::vector<std::vector<Tuple>> next;
    for (const auto& g : cones) {
      auto t = coords_in(g, pr);
      bool inside = t.has_value();
      if (inside)
        for (const Rat& x : *t)
          if (x < 0) {
            inside = false;
            break;
          }
      if (!inside) {
        next.push_back(g);
        continue;
      }
      Int m = cone_multiplicity(g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if ((*t)[i] == 0) continue;
        std::vector<Tuple> child;
        for (std::size_t j = 0; j < g.size(); ++j)
          if (j != i) child.push_back(g[j]);
        child.push_back(pr);
        child = canonical_gens(child);
        if (cone_multiplicity(child) >= m)
          throw Error("stellar step failed to decrease cone multiplicity");
        next.push_back(std::move(child));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cones = std::move(next);
  }

  std::vector<Cone> out;
  for (auto& g : cones) out.push_back(Cone{std::move(g)});
  return make_fan(std::move(out), n);
}

bool is_finer(const Fan& fine, const Fan& coarse) {
  for (const Cone& c : fine.cones) {
    bool inside_some = false;
    for (const Cone& d : coarse.cones) {
      bool all_in = true;
      for (const Tuple& g : c.generators)
        if (!in_cone(d.generators, g)) {
          all_in = false;
          break;
        }
      if (all_in) {
        inside_some = true;
        break;
      }
    }
    if (!inside_some) return false;
  }
  return true;
}

bool covers_orthant(const Fan& F) {
  if (F.cones.empty()) return false;
  std::size_t n = F.rays.front().size();
  if (n == 1) {
    for (const Cone& c : F.cones)
      for (const Tuple& g : c.generators)
        if (g[0] > 0) return true;
    return false;
  }
  for (const Cone& c : F.cones)
    if (cone_dim(c) < n) return false;
  std::map<std::vector<Tuple>, std::size_t> wall_count;
  for (const Cone& c : F.cones) {
    for (auto& idx : facet_index_sets(c.generators, n)) {
      std::vector<Tuple> w;
      for (std::size_t i : idx) w.push_back(c.generators[i]);
      std::sort(w.begin(), w.end());
      ++wall_count[w];
    }
  }
  for (const auto& [w, cnt] : wall_count) {
    bool boundary = false;
    for (std::size_t i = 0; i < n && !boundary; ++i) {
      bool all_zero = true;
      for (const Tuple& g : w)
        if (g[i] != 0) {
          all_zero = false;
          break;
        }
      boundary = all_zero;
    }
    if (!(cnt == 2 && !boundary) && !(cnt == 1 && boundary)) return false;
  }
  return true;
}

std::vector<Tuple> transition_matrix(const Cone& c1, const Cone& c2) {
  if (c1.generators.empty() || c2.generators.empty())
    throw DomainError("transition requires full-dimensional simple cones");
  std::size_t n = c1.generators.front().size();
  if (c1.generators.size() != n || c2.generators.size() != n ||
      c2.generators.front().size() != n || !is_simple(c1) || !is_simple(c2))
    throw DomainError("transition requires full-dimensional simple cones");
  Mat m2 = Mat::from_columns(c2.generators);
  std::vector<Tuple> cols;
  cols.reserve(n);
  for (const Tuple& g : c1.generators) {
    RatVec y = solve(m2, to_ratvec(g));
    Tuple col(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_integer(y[i]))
        throw Error("transition coordinates must be integral");
      col[i] = y[i].get_num();
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

NumericalData numerical_data(const Tuple& ray, const NewtonPolyhedron& P) {
  if (ray.size() != P.dim())
    throw DomainError("numerical data: ray dimension mismatch");
  if (is_zero(ray)) throw DomainError("numerical data of the zero ray");
  for (const Int& x : ray)
    if (x < 0) throw DomainError("numerical data of a ray outside the orthant");
  if (gcd_all(ray) != 1) throw DomainError("numerical data of a non-primitive ray");
  NumericalData d;
  d.ray = ray;
  d.N = P.trace_value(ray);
  d.nu = 0;
  for (const Int& x : ray) d.nu += x;
  return d;
}

Fan instability_fan(const Fan& F, std::size_t j) {
  if (F.cones.empty()) throw DomainError("instability fan of an empty fan");
  std::size_t n = F.rays.front().size();
  if (j < 1 || j > n) throw DomainError("instability fan: variable index out of range");
  if (!covers_orthant(F))
    throw DomainError("instability fan requires a covering fan");
  bool simple_input = true;
  for (const Cone& c : F.cones)
    if (!is_simple(c)) simple_input = false;
  Tuple ej = unit_vector(n, j - 1);
  std::vector<Cone> out;
  for (const Cone& c : F.cones) {
    std::vector<Tuple> gens;
    for (const Tuple& g : c.generators)
      if (g[j - 1] == 0) gens.push_back(g);
    gens.push_back(ej);
    Cone nc{canonical_gens(gens)};
    if (simple_input && !is_simple(nc))
      throw Error("instability cone is not simple");
    out.push_back(std::move(nc));
  }
  Fan R = make_fan(std::move(out), n);
  if (!covers_orthant(R))
    throw Error("instability fan fails to cover the orthant");
  return R;
}

std::size_t multiplicity_bound(const Fan& F, const NewtonPolyhedron& P,
                               const Rat& s) {
  std::size_t best = 0;
  for (const Cone& c : F.cones) {
    if (!is_simplicial(c))
      throw DomainError("multiplicity bound requires a simplicial fan");
    std::size_t cnt = 0;
    for (const Tuple& g : c.generators) {
      NumericalData d = numerical_data(g, P);
      auto pole = d.candidate_pole();
      if (pole && *pole == s) ++cnt;
    }
    best = std::max(best, cnt);
  }
  return best;
}

}  // namespace newtosc
