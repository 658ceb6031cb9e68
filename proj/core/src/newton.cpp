#include "newtosc/newton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace newtosc {

namespace {

std::size_t face_rank(const std::vector<Tuple>& pts,
                      const std::vector<std::size_t>& rec, std::size_t n) {
  std::vector<Tuple> rows;
  for (std::size_t i = 1; i < pts.size(); ++i)
    rows.push_back(sub(pts[i], pts[0]));
  for (std::size_t d : rec) rows.push_back(unit_vector(n, d));
  if (rows.empty()) return 0;
  return rank(Mat::from_rows(rows));
}

}  // namespace

NewtonPolyhedron::NewtonPolyhedron(std::vector<Tuple> support) {
  if (support.empty())
    throw DomainError("newton polyhedron: empty support");
  n_ = support[0].size();
  if (n_ == 0) throw DomainError("newton polyhedron: zero-dimensional space");
  std::set<Tuple> dedup;
  for (const Tuple& p : support) {
    if (p.size() != n_)
      throw DomainError("newton polyhedron: inconsistent dimensions");
    for (const Int& c : p)
      if (c < 0) throw DomainError("newton polyhedron: negative exponent");
    dedup.insert(p);
  }
  support_.assign(dedup.begin(), dedup.end());

  std::set<Tuple> cands;
  std::size_t max_s = std::min<std::size_t>(n_, support_.size());
  for (std::size_t s = 1; s <= max_s; ++s) {
    std::size_t d = n_ - s;
    for_each_combination(
        support_.size(), s, [&](const std::vector<std::size_t>& S) {
          std::vector<Tuple> diffs;
          for (std::size_t i = 1; i < s; ++i)
            diffs.push_back(sub(support_[S[i]], support_[S[0]]));
          for_each_combination(
              n_, d, [&](const std::vector<std::size_t>& D) {
                std::vector<Tuple> rows = diffs;
                for (std::size_t dir : D)
                  rows.push_back(unit_vector(n_, dir));
                Tuple v = orthogonal_vector(rows, n_);
                if (is_zero(v)) return;
                bool pos = false, neg = false;
                for (const Int& c : v) {
                  if (c > 0) pos = true;
                  if (c < 0) neg = true;
                }
                if (pos && neg) return;
                if (neg)
                  for (Int& c : v) c = -c;
                cands.insert(primitive(v));
              });
        });
  }

  for (const Tuple& v : cands) {
    Int off = dot(v, support_[0]);
    for (const Tuple& p : support_) off = std::min(off, dot(v, p));
    std::vector<Tuple> act;
    for (const Tuple& p : support_)
      if (dot(v, p) == off) act.push_back(p);
    std::vector<std::size_t> rec;
    for (std::size_t i = 0; i < n_; ++i)
      if (v[i] == 0) rec.push_back(i);
    if (face_rank(act, rec, n_) == n_ - 1) facets_.push_back({v, off});
  }

  for (const Tuple& p : support_) {
    std::vector<Tuple> act_normals;
    for (const Facet& f : facets_)
      if (dot(f.normal, p) == f.offset) act_normals.push_back(f.normal);
    if (!act_normals.empty() &&
        rank(Mat::from_rows(act_normals)) == n_)
      vertices_.push_back(p);
  }
}

NewtonPolyhedron NewtonPolyhedron::of(const Poly& f) {
  if (f.is_zero())
    throw DomainError("newton polyhedron: zero polynomial");
  return NewtonPolyhedron(f.support_points());
}

Int NewtonPolyhedron::trace_value(const Tuple& a) const {
  if (a.size() != n_) throw DomainError("trace_value: dimension mismatch");
  for (const Int& c : a)
    if (c < 0) throw DomainError("trace_value: negative entry");
  Int m = dot(a, support_[0]);
  for (const Tuple& p : support_) m = std::min(m, dot(a, p));
  return m;
}

Face NewtonPolyhedron::trace_face(const Tuple& a) const {
  if (is_zero(a)) throw DomainError("trace_face: zero direction");
  Int m = trace_value(a);
  Face f;
  for (const Tuple& p : support_)
    if (dot(a, p) == m) f.points.push_back(p);
  for (std::size_t u = 0; u < facets_.size(); ++u) {
    bool all_active = true;
    for (const Tuple& p : f.points)
      if (dot(facets_[u].normal, p) != facets_[u].offset) {
        all_active = false;
        break;
      }
    if (all_active) f.active.push_back(u);
  }
  f.dim = face_rank(f.points, {}, n_);
  f.compact = true;
  return f;
}

Face NewtonPolyhedron::face_from_active(
    const std::vector<std::size_t>& facet_idxs) const {
  if (facet_idxs.empty())
    throw DomainError("face_from_active: empty facet set");
  for (std::size_t u : facet_idxs)
    if (u >= facets_.size())
      throw DomainError("face_from_active: facet index out of range");

  std::vector<Tuple> pts;
  for (const Tuple& p : support_) {
    bool on_all = true;
    for (std::size_t u : facet_idxs)
      if (dot(facets_[u].normal, p) != facets_[u].offset) {
        on_all = false;
        break;
      }
    if (on_all) pts.push_back(p);
  }
  if (pts.empty()) throw DomainError("face_from_active: empty face");

  std::vector<std::size_t> rec;
  for (std::size_t i = 0; i < n_; ++i) {
    bool free_dir = true;
    for (std::size_t u : facet_idxs)
      if (facets_[u].normal[i] != 0) {
        free_dir = false;
        break;
      }
    if (free_dir) rec.push_back(i);
  }

  // Canonical closure: every facet containing the convex hull of the points
  // and all recession rays.
  Face f;
  for (std::size_t u = 0; u < facets_.size(); ++u) {
    bool contains_face = true;
    for (const Tuple& p : pts)
      if (dot(facets_[u].normal, p) != facets_[u].offset) {
        contains_face = false;
        break;
      }
    if (contains_face)
      for (std::size_t i : rec)
        if (facets_[u].normal[i] != 0) {
          contains_face = false;
          break;
        }
    if (contains_face) f.active.push_back(u);
  }
  f.points = std::move(pts);
  f.recession.clear();
  for (std::size_t i = 0; i < n_; ++i) {
    bool free_dir = true;
    for (std::size_t u : f.active)
      if (facets_[u].normal[i] != 0) {
        free_dir = false;
        break;
      }
    if (free_dir) f.recession.push_back(i);
  }
  f.dim = face_rank(f.points, f.recession, n_);
  f.compact = f.recession.empty();
  return f;
}

std::vector<Face> NewtonPolyhedron::all_faces() const {
  std::map<std::vector<std::size_t>, Face> seen;
  std::vector<Face> frontier;
  for (std::size_t u = 0; u < facets_.size(); ++u) {
    Face f = face_from_active({u});
    if (seen.emplace(f.active, f).second) frontier.push_back(f);
  }
  while (!frontier.empty()) {
    Face f = frontier.back();
    frontier.pop_back();
    for (std::size_t w = 0; w < facets_.size(); ++w) {
      if (std::find(f.active.begin(), f.active.end(), w) != f.active.end())
        continue;
      std::vector<std::size_t> ext = f.active;
      ext.push_back(w);
      try {
        Face g = face_from_active(ext);
        if (seen.emplace(g.active, g).second) frontier.push_back(g);
      } catch (const DomainError&) {
        // empty intersection
      }
    }
  }
  std::vector<Face> out;
  out.reserve(seen.size());
  for (auto& [key, f] : seen) out.push_back(std::move(f));
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.points < b.points;
  });
  return out;
}

std::vector<Face> NewtonPolyhedron::compact_faces() const {
  std::vector<Face> faces = all_faces();
  std::vector<Face> out;
  for (Face& f : faces)
    if (f.compact) out.push_back(std::move(f));
  return out;
}

bool NewtonPolyhedron::contains(const Tuple& k) const {
  if (k.size() != n_) throw DomainError("contains: dimension mismatch");
  for (const Facet& f : facets_)
    if (dot(f.normal, k) < f.offset) return false;
  return true;
}

Poly face_polynomial(const Poly& f, const Face& face) {
  // The face carries every support point of f lying on it, so restriction
  // to those monomials is exact.
  std::vector<Expo> keep;
  keep.reserve(face.points.size());
  for (const Tuple& p : face.points) keep.push_back(expo_of_tuple(p));
  return f.restrict_support(keep);
}

}  // namespace newtosc
