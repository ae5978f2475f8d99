#include "gma/toric/criterion.hpp"

#include <algorithm>
#include <set>

#include "gma/errors.hpp"

namespace gma::toric {

namespace {

Integer binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Integer factorial(int m) {
  Integer r = 1;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

/// Solves the m x m system M c = rhs exactly; M must be invertible.
std::vector<Rational> solve(std::vector<std::vector<Rational>> M, std::vector<Rational> rhs) {
  const std::size_t m = rhs.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && M[piv][col] == 0) ++piv;
    if (piv == m) throw StateError("singular lattice coordinate system");
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || M[r][col] == 0) continue;
      const Rational f = M[r][col] / M[col][col];
      for (std::size_t a = col; a < m; ++a) M[r][a] -= f * M[col][a];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < m; ++i) rhs[i] /= M[i][i];
  return rhs;
}

/// The face as a full-dimensional polytope in coordinates of the lattice Z^d cap span(face).
Polytope lattice_face(const Polytope& P, const Face& F) {
  const int d = P.dim(), m = F.dim;
  if (m == d) return P;
  std::vector<std::vector<Integer>> rows;
  for (int k : F.facets) rows.push_back(P.facets()[k].normal);
  const auto basis = kernel_lattice_basis(rows, d);
  if (static_cast<int>(basis.size()) != m) throw StateError("face lattice rank mismatch");
  // choose m coordinate rows with an invertible minor
  std::vector<int> pick;
  for (unsigned mask = 0; mask < (1u << d) && pick.empty(); ++mask) {
    if (__builtin_popcount(mask) != m) continue;
    std::vector<int> rs;
    for (int a = 0; a < d; ++a) {
      if ((mask >> a) & 1u) rs.push_back(a);
    }
    std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) M[i][j] = Rational(basis[j][rs[i]]);
    }
    try {
      solve(M, std::vector<Rational>(m, Rational(0)));
      pick = rs;
    } catch (const StateError&) {
    }
  }
  std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) M[i][j] = Rational(basis[j][pick[i]]);
  }
  const Point& o = P.vertices()[F.vertices[0]];
  std::vector<Point> coords;
  for (int v : F.vertices) {
    std::vector<Rational> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = P.vertices()[v][pick[i]] - o[pick[i]];
    coords.push_back(solve(M, rhs));
  }
  return Polytope::from_points(m, coords);
}

std::set<std::string> facet_keys(const Polytope& P, const Face& F) {
  std::set<std::string> s;
  for (int k : F.facets) s.insert(normal_key(P.facets()[k].normal));
  return s;
}

}  // namespace

ClassPolytopePair::ClassPolytopePair(Polytope omega, Polytope chi, std::map<std::string, std::string> labels)
    : omega_(std::move(omega)), chi_(std::move(chi)) {
  if (omega_.dim() != chi_.dim()) throw ValidationError("class polytopes have different dimensions");
  if (omega_.dim() < 2) throw ValidationError("class polytopes must have dimension 2 or 3");
  const auto& fo = omega_.facets();
  const auto& fc = chi_.facets();
  bool same = fo.size() == fc.size();
  for (std::size_t i = 0; same && i < fo.size(); ++i) same = fo[i].normal == fc[i].normal;
  if (!same) throw ValidationError("class polytopes do not share a normal fan");
  for (const auto& [key, name] : labels) {
    const bool known = std::any_of(fo.begin(), fo.end(), [&](const Facet& f) { return normal_key(f.normal) == key; });
    if (!known) throw ValidationError("label for unknown facet normal " + key);
    if (name.empty() || name == "M" || name.find('&') != std::string::npos) {
      throw ValidationError("invalid facet label '" + name + "'");
    }
  }
  const auto& facesO = omega_.faces();
  const auto& facesC = chi_.faces();
  if (facesO.size() != facesC.size()) throw ValidationError("class polytopes do not share a normal fan");
  for (const auto& f : facesO) {
    const auto keys = facet_keys(omega_, f);
    auto it = std::find_if(facesC.begin(), facesC.end(), [&](const Face& g) { return facet_keys(chi_, g) == keys; });
    if (it == facesC.end() || it->dim != f.dim) throw ValidationError("class polytopes do not share a normal fan");
    if (f.dim == 0) continue;
    FacePair fp;
    for (int k : f.facets) {
      const auto key = normal_key(fo[k].normal);
      const auto lab = labels.find(key);
      if (!fp.id.empty()) fp.id += '&';
      fp.id += lab == labels.end() ? key : lab->second;
    }
    fp.codim = omega_.dim() - f.dim;
    fp.omega = f;
    fp.chi = *it;
    faces_.push_back(std::move(fp));
  }
  FacePair whole;
  whole.id = "M";
  whole.codim = 0;
  whole.omega.dim = whole.chi.dim = omega_.dim();
  faces_.insert(faces_.begin(), std::move(whole));
}

std::vector<std::string> ClassPolytopePair::face_ids() const {
  std::vector<std::string> ids;
  for (const auto& f : faces_) ids.push_back(f.id);
  return ids;
}

const ClassPolytopePair::FacePair& ClassPolytopePair::find(const std::string& id) const {
  for (const auto& f : faces_) {
    if (f.id == id) return f;
  }
  throw DomainError("unknown face id '" + id + "'");
}

int ClassPolytopePair::codim(const std::string& faceId) const { return find(faceId).codim; }

Rational ClassPolytopePair::intersection_number(const std::string& faceId, int a, int b) const {
  const auto& f = find(faceId);
  const int m = dim() - f.codim;
  if (a < 0 || b < 0 || a + b != m) throw DomainError("exponents must sum to the face dimension");
  const Polytope po = f.codim == 0 ? omega_ : lattice_face(omega_, f.omega);
  const Polytope pc = f.codim == 0 ? chi_ : lattice_face(chi_, f.chi);
  std::vector<Polytope> list;
  for (int i = 0; i < a; ++i) list.push_back(po);
  for (int i = 0; i < b; ++i) list.push_back(pc);
  const Rational mv = a == m ? po.volume() : (b == m ? pc.volume() : mixed_volume(list));
  return Rational(factorial(m)) * mv;
}

CriterionReport check_criterion(const ClassPolytopePair& pair, const ToricCoefficients& coeffs) {
  const int n = pair.dim();
  if (coeffs.n != n || static_cast<int>(coeffs.c.size()) != n - 1) {
    throw DomainError("coefficient dimension does not match the polytopes");
  }
  for (const auto& c : coeffs.c) {
    if (c < 0) throw DomainError("coefficients must be non-negative");
  }
  CriterionReport rep;
  rep.wholeSpaceValue = pair.intersection_number("M", n, 0);
  for (int k = 1; k <= n - 1; ++k) {
    if (coeffs.coeff(k) != 0) rep.wholeSpaceValue -= coeffs.coeff(k) * pair.intersection_number("M", k, n - k);
  }
  bool first = true;
  for (const auto& id : pair.face_ids()) {
    const int p = pair.codim(id);
    if (p < 1 || p > n - 1) continue;
    FaceCriterion fc;
    fc.face = id;
    fc.codim = p;
    const Rational omegaPow = pair.intersection_number(id, n - p, 0);
    fc.rhsScale = Rational(binom(n, p)) * omegaPow;
    fc.lhs = fc.rhsScale;
    fc.conditioned = false;
    for (int k = p; k <= n - 1; ++k) {
      if (coeffs.coeff(k) == 0) continue;
      fc.conditioned = true;
      fc.lhs -= coeffs.coeff(k) * Rational(binom(k, p)) * pair.intersection_number(id, k - p, n - k);
    }
    fc.ratio = fc.lhs / fc.rhsScale;
    if (!(fc.lhs > 0)) rep.pass = false;
    if (first || fc.ratio < rep.epsilonUniform) {
      rep.epsilonUniform = fc.ratio;
      rep.worstFace = id;
      first = false;
    }
    rep.perFace.push_back(std::move(fc));
  }
  return rep;
}

Rational jequation_constant(const ClassPolytopePair& pair, int k) {
  const int n = pair.dim();
  if (k < 1 || k > n - 1) throw DomainError("k must lie in 1..n-1");
  const Rational den = pair.intersection_number("M", n - k, k);
  if (den == 0) throw StateError("zero mixed intersection number");
  return pair.intersection_number("M", n, 0) / den;
}

Rational uniform_epsilon(const CriterionReport& report) {
  if (report.perFace.empty()) throw DomainError("report has no faces");
  Rational e = report.perFace.front().ratio;
  for (const auto& f : report.perFace) e = std::min(e, f.ratio);
  return e;
}

}  // namespace gma::toric
