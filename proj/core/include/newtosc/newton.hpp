#pragma once

#include <cstddef>
#include <vector>

#include "newtosc/linalg.hpp"
#include "newtosc/polynomial.hpp"

namespace newtosc {

// Supporting hyperplane data: <normal, k> >= offset on the polyhedron, with
// equality on a face of dimension n-1.
struct Facet {
  Tuple normal;  // primitive, entrywise >= 0
  Int offset;
};

// Nonempty face, canonically identified by the set of facets containing it.
// points are the support points on the face; recession lists the coordinate
// directions (0-based) along which the face is unbounded.
struct Face {
  std::vector<std::size_t> active;
  std::vector<Tuple> points;
  std::vector<std::size_t> recession;
  std::size_t dim = 0;
  bool compact = true;
};

// Convex hull of a finite exponent set plus the nonnegative orthant. Always
// full-dimensional. Immutable after construction; queries are const.
class NewtonPolyhedron {
 public:
  explicit NewtonPolyhedron(std::vector<Tuple> support);

  static NewtonPolyhedron of(const Poly& f);

  std::size_t dim() const { return n_; }
  const std::vector<Tuple>& support() const { return support_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Tuple>& vertices() const { return vertices_; }

  // min over the polyhedron of <a, .>; a must be entrywise nonnegative.
  Int trace_value(const Tuple& a) const;

  // The compact face on which <a, .> attains its minimum (a nonzero,
  // entrywise nonnegative).
  Face trace_face(const Tuple& a) const;

  // Face cut out by the given facets; throws DomainError when empty. The
  // returned active set is the canonical closure.
  Face face_from_active(const std::vector<std::size_t>& facet_idxs) const;

  // All proper nonempty faces, each once, sorted by (dim, points).
  std::vector<Face> all_faces() const;

  std::vector<Face> compact_faces() const;

  bool contains(const Tuple& k) const;

 private:
  std::size_t n_ = 0;
  std::vector<Tuple> support_;
  std::vector<Facet> facets_;
  std::vector<Tuple> vertices_;
};

// Restriction of f to the monomials lying on the face.
Poly face_polynomial(const Poly& f, const Face& face);

}  // namespace newtosc
