#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace gma::toric {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Point = std::vector<Rational>;

/// Accepts "p/q", integers and finite decimals ("0.9"); throws DomainError otherwise.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Facet inequality normal . x <= offset with a primitive integer outer normal.
struct Facet {
  std::vector<Integer> normal;
  Rational offset;
};

/// Face as the set of facets containing it and the vertices it contains.
struct Face {
  std::vector<int> facets;    ///< ascending facet indices
  std::vector<int> vertices;  ///< ascending vertex indices
  int dim = 0;
};

/// Full-dimensional convex polytope in Q^d, d in {1, 2, 3}, built by exact convex hull.
class Polytope {
 public:
  /// Throws DomainError unless the points span Q^d.
  static Polytope from_points(int dim, const std::vector<Point>& points);

  int dim() const noexcept { return dim_; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  /// Every proper non-empty face, ordered by dimension then facet indices.
  const std::vector<Face>& faces() const noexcept { return faces_; }

  /// Euclidean volume, which is the lattice-normalized volume for Z^d.
  Rational volume() const;
  Polytope scaled(const Rational& s) const;
  bool contains(const Point& p) const;

 private:
  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
  std::vector<Face> faces_;
  void build_faces();
};

/// Minkowski sum by hull of pairwise vertex sums.
Polytope minkowski_sum(const std::vector<const Polytope*>& ps);

/// Mixed volume with mixed_volume(P, ..., P) = volume(P); list length must equal the dimension.
/// Extracted from the polynomial lambda -> Vol(sum lambda_i P_i) by its mixed difference at 0/1 nodes.
Rational mixed_volume(const std::vector<Polytope>& ps);

/// Integer basis of Z^d intersected with the kernel of the integer rows.
std::vector<std::vector<Integer>> kernel_lattice_basis(const std::vector<std::vector<Integer>>& rows, int d);

std::string normal_key(const std::vector<Integer>& normal);

}  // namespace gma::toric
