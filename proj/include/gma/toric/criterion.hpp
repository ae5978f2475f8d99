#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gma/toric/polytope.hpp"

namespace gma::toric {

/// Moment polytopes of [Omega_0] and [chi] on one toric manifold. Faces of the two polytopes
/// correspond through their facet normals.
class ClassPolytopePair {
 public:
  /// Throws ValidationError if the normal fans differ. labels maps normal keys such as
  /// "(-1,-1)" to facet names; unnamed facets use their key.
  ClassPolytopePair(Polytope omega, Polytope chi, std::map<std::string, std::string> labels = {});

  int dim() const noexcept { return omega_.dim(); }
  const Polytope& omega() const noexcept { return omega_; }
  const Polytope& chi() const noexcept { return chi_; }

  /// Face ids: facet labels joined by '&'; "M" is the whole space.
  std::vector<std::string> face_ids() const;
  int codim(const std::string& faceId) const;

  /// int_V Omega^a chi^b = m! MV over the face's lattice, m = a + b = dim V.
  Rational intersection_number(const std::string& faceId, int a, int b) const;

 private:
  struct FacePair {
    std::string id;
    int codim = 0;
    Face omega, chi;
  };
  const FacePair& find(const std::string& id) const;

  Polytope omega_, chi_;
  std::vector<FacePair> faces_;
};

/// Coefficients c_1..c_{n-1} in exact arithmetic.
struct ToricCoefficients {
  int n = 0;
  std::vector<Rational> c;
  Rational coeff(int k) const { return k >= 1 && k <= n - 1 ? c[k - 1] : Rational(0); }
};

struct FaceCriterion {
  std::string face;
  int codim = 0;
  Rational lhs;
  Rational rhsScale;
  Rational ratio;
  bool conditioned = true;  ///< some c_k with k >= codim is non-zero
};

struct CriterionReport {
  std::vector<FaceCriterion> perFace;  ///< codim 1..n-1
  bool pass = true;
  Rational epsilonUniform;
  std::string worstFace;
  /// Criterion expression on the whole space, which equals int f chi^n; not part of pass/fail.
  Rational wholeSpaceValue;
  std::string scope = "torus-invariant subvarieties";
};

CriterionReport check_criterion(const ClassPolytopePair& pair, const ToricCoefficients& coeffs);

/// int Omega^n / int Omega^{n-k} chi^k.
Rational jequation_constant(const ClassPolytopePair& pair, int k);

/// Minimum face ratio of a report, not clamped.
Rational uniform_epsilon(const CriterionReport& report);

}  // namespace gma::toric
