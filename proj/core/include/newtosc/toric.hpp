#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "newtosc/newton.hpp"

namespace newtosc {

// Polyhedral cone inside the nonnegative orthant, listed by generating rays.
// Generators are primitive integer vectors. Listing order is meaningful:
// transition matrices read coordinates columnwise in listed order. Cones
// emitted by fan operations carry generators sorted by ray number.
struct Cone {
  std::vector<Tuple> generators;
};

// Finite fan: the maximal cones plus the numbered ray list they share.
// Rays are primitive, deduplicated, numbered in lexicographic order; every
// pairwise cone intersection is a common face (checked exactly on
// construction through make_fan).
struct Fan {
  std::vector<Cone> cones;
  std::vector<Tuple> rays;
};

// Invariants of a ray against a polyhedron: N is the minimum of <ray, .>
// over the polyhedron, nu the coordinate sum of the ray.
struct NumericalData {
  Tuple ray;
  Int N;
  Int nu;

  // -nu/N, defined when N is nonzero.
  std::optional<Rat> candidate_pole() const;
};

std::size_t cone_dim(const Cone& c);

// Generators linearly independent.
bool is_simplicial(const Cone& c);

// Generators extend to a basis of the integer lattice.
bool is_simple(const Cone& c);

// Exact conic membership: p is a nonnegative combination of the generators.
bool cone_contains(const Cone& c, const Tuple& p);

// Canonical fan from a list of maximal cones in dimension n: normalizes
// generators to primitive vectors, deduplicates cones, drops cones contained
// in another, sorts generators by ray number, and verifies every pairwise
// intersection is a common face. Throws DomainError on malformed generators
// and Error when the cones fail the wall condition.
Fan make_fan(std::vector<Cone> cones, std::size_t n);

// Cone spanned by the normals of the facets containing the face. The face
// must be compact.
Cone normal_cone(const NewtonPolyhedron& P, const Face& tau);

// Fan of vertex normal cones; covers the orthant.
Fan normal_fan(const NewtonPolyhedron& P);

// Triangulates every maximal cone without introducing new rays.
Fan subdivide_simplicial(const Fan& F);

// Stellar refinement of a simplicial fan until every cone extends to a
// lattice basis. Each step subdivides at a shortest fundamental-parallelepiped
// lattice point (lexicographic tie-break); every new cone has strictly
// smaller multiplicity than the cone it came from.
Fan refine_simple(const Fan& F);

// True when every cone of fine lies inside some cone of coarse.
bool is_finer(const Fan& fine, const Fan& coarse);

// Exact covering test: every wall interior to the orthant is shared by two
// cones and every boundary wall lies on a coordinate hyperplane.
bool covers_orthant(const Fan& F);

// Columns of the result give the coordinates of each generator of c1 in the
// basis formed by the generators of c2, in listed order. Requires both cones
// full-dimensional and simple; the result is unimodular.
std::vector<Tuple> transition_matrix(const Cone& c1, const Cone& c2);

// The ray must be primitive, nonnegative, nonzero, of matching dimension.
NumericalData numerical_data(const Tuple& ray, const NewtonPolyhedron& P);

// Fan whose maximal cones are conv(c intersect {x_j = 0}, e_j) over the
// cones c of F; j is 1-based. F must cover the orthant; the output covers
// the orthant again, and it is simple whenever F is.
Fan instability_fan(const Fan& F, std::size_t j);

// Max over cones of the number of generators whose candidate pole equals s.
// F must be simplicial.
std::size_t multiplicity_bound(const Fan& F, const NewtonPolyhedron& P,
                               const Rat& s);

}  // namespace newtosc
