#include "gma/toric/polytope.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "gma/errors.hpp"

namespace gma::toric {

namespace {

using IPoint = std::vector<Integer>;

Integer lcm_int(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return a == 0 ? b : a;
  return abs(a / gcd(a, b) * b);
}

IPoint primitive(IPoint v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, abs(x));
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
  return v;
}

Integer cross2(const IPoint& o, const IPoint& a, const IPoint& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Integer orient3(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& p) {
  const Integer u0 = b[0] - a[0], u1 = b[1] - a[1], u2 = b[2] - a[2];
  const Integer v0 = c[0] - a[0], v1 = c[1] - a[1], v2 = c[2] - a[2];
  const Integer w0 = p[0] - a[0], w1 = p[1] - a[1], w2 = p[2] - a[2];
  return u0 * (v1 * w2 - v2 * w1) - u1 * (v0 * w2 - v2 * w0) + u2 * (v0 * w1 - v1 * w0);
}

IPoint cross3(const IPoint& a, const IPoint& b, const IPoint& c) {
  const Integer u0 = b[0] - a[0], u1 = b[1] - a[1], u2 = b[2] - a[2];
  const Integer v0 = c[0] - a[0], v1 = c[1] - a[1], v2 = c[2] - a[2];
  return {u1 * v2 - u2 * v1, u2 * v0 - u0 * v2, u0 * v1 - u1 * v0};
}

/// Strictly convex CCW hull of 2D integer points; indices into pts.
std::vector<int> hull2(const std::vector<IPoint>& pts, const std::vector<int>& idx) {
  std::vector<int> s(idx);
  std::sort(s.begin(), s.end(), [&](int a, int b) { return pts[a] < pts[b]; });
  s.erase(std::unique(s.begin(), s.end(), [&](int a, int b) { return pts[a] == pts[b]; }), s.end());
  if (s.size() < 3) return s;
  std::vector<int> h(2 * s.size());
  std::size_t k = 0;
  for (int i : s) {
    while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t i = s.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[s[i]]) <= 0) --k;
    h[k++] = s[i];
  }
  h.resize(k - 1);
  return h;
}

int affine_rank(const std::vector<Point>& pts) {
  if (pts.empty()) return -1;
  const std::size_t d = pts[0].size();
  std::vector<std::vector<Rational>> m;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rational> row(d);
    for (std::size_t a = 0; a < d; ++a) row[a] = pts[i][a] - pts[0][a];
    m.push_back(std::move(row));
  }
  int rank = 0;
  for (std::size_t col = 0; col < d && rank < static_cast<int>(m.size()); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[rank][col];
      for (std::size_t a = col; a < d; ++a) m[r][a] -= f * m[rank][a];
    }
    ++rank;
  }
  return rank;
}

struct HullResult {
  std::vector<int> vertices;  // indices into the integer point list
  std::vector<std::pair<IPoint, Integer>> planes;
};

HullResult hull3(const std::vector<IPoint>& pts) {
  const int N = static_cast<int>(pts.size());
  int i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < N && i1 < 0; ++i) {
    if (pts[i] != pts[0]) i1 = i;
  }
  if (i1 < 0) throw DomainError("polytope is not full-dimensional");
  for (int i = 1; i < N && i2 < 0; ++i) {
    const auto c = cross3(pts[0], pts[i1], pts[i]);
    if (c[0] != 0 || c[1] != 0 || c[2] != 0) i2 = i;
  }
  if (i2 < 0) throw DomainError("polytope is not full-dimensional");
  for (int i = 1; i < N && i3 < 0; ++i) {
    if (orient3(pts[0], pts[i1], pts[i2], pts[i]) != 0) i3 = i;
  }
  if (i3 < 0) throw DomainError("polytope is not full-dimensional");

  struct Tri {
    int a, b, c;
  };
  std::vector<Tri> tris;
  auto add = [&](int a, int b, int c, int inner) {
    if (orient3(pts[a], pts[b], pts[c], pts[inner]) > 0) std::swap(b, c);
    tris.push_back({a, b, c});
  };
  add(0, i1, i2, i3);
  add(0, i1, i3, i2);
  add(0, i2, i3, i1);
  add(i1, i2, i3, 0);
  for (int p = 0; p < N; ++p) {
    if (p == 0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<char> vis(tris.size(), 0);
    std::set<std::pair<int, int>> edges;
    bool any = false;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (orient3(pts[tris[t].a], pts[tris[t].b], pts[tris[t].c], pts[p]) > 0) {
        vis[t] = 1;
        any = true;
        edges.insert({tris[t].a, tris[t].b});
        edges.insert({tris[t].b, tris[t].c});
        edges.insert({tris[t].c, tris[t].a});
      }
    }
    if (!any) continue;
    std::vector<Tri> next;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!vis[t]) next.push_back(tris[t]);
    }
    for (const auto& [u, v] : edges) {
      if (!edges.count({v, u})) next.push_back({u, v, p});
    }
    tris.swap(next);
  }
  // group coplanar triangles into facets
  std::map<IPoint, std::set<int>> planes;
  for (const auto& t : tris) {
    const auto n = primitive(cross3(pts[t.a], pts[t.b], pts[t.c]));
    auto& s = planes[n];
    s.insert(t.a);
    s.insert(t.b);
    s.insert(t.c);
  }
  HullResult out;
  std::set<int> verts;
  for (const auto& [n, s] : planes) {
    int k = 0;
    for (int a = 1; a < 3; ++a) {
      if (abs(n[a]) > abs(n[k])) k = a;
    }
    std::vector<IPoint> proj;
    std::vector<int> ids, local;
    for (int i : s) {
      IPoint q;
      for (int a = 0; a < 3; ++a) {
        if (a != k) q.push_back(pts[i][a]);
      }
      local.push_back(static_cast<int>(proj.size()));
      proj.push_back(std::move(q));
      ids.push_back(i);
    }
    for (int j : hull2(proj, local)) verts.insert(ids[j]);
    const int a0 = *s.begin();
    out.planes.push_back({n, n[0] * pts[a0][0] + n[1] * pts[a0][1] + n[2] * pts[a0][2]});
  }
  out.vertices.assign(verts.begin(), verts.end());
  return out;
}

}  // namespace

static Integer decimal_integer(std::string s) {
  const bool neg = !s.empty() && s[0] == '-';
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.erase(0, 1);
  const auto nz = s.find_first_not_of('0');
  s = nz == std::string::npos ? std::string("0") : s.substr(nz);
  const Integer v(s);
  return neg ? Integer(-v) : v;
}

Rational parse_rational(const std::string& raw) {
  static const std::regex frac(R"(^\s*([+-]?\d+)(?:/(\d+))?\s*$)");
  static const std::regex dec(R"(^\s*([+-]?)(\d*)\.(\d*)\s*$)");
  std::smatch m;
  if (std::regex_match(raw, m, frac)) {
    const Integer num = decimal_integer(m[1].str());
    const Integer den = decimal_integer(m[2].matched ? m[2].str() : std::string("1"));
    if (den == 0) throw DomainError("rational with zero denominator: " + raw);
    return Rational(num, den);
  }
  if (std::regex_match(raw, m, dec) && (m[2].length() + m[3].length()) > 0) {
    const std::string digits = m[2].str() + m[3].str();
    Integer den = 1;
    for (std::size_t i = 0; i < m[3].str().size(); ++i) den *= 10;
    Integer num = decimal_integer(digits);
    if (m[1] == "-") num = -num;
    return Rational(num, den);
  }
  throw DomainError("not a rational number: '" + raw + "'");
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string normal_key(const std::vector<Integer>& normal) {
  std::string s = "(";
  for (std::size_t i = 0; i < normal.size(); ++i) {
    if (i) s += ',';
    s += normal[i].str();
  }
  return s + ")";
}

Polytope Polytope::from_points(int dim, const std::vector<Point>& points) {
  if (dim < 1 || dim > 3) throw DomainError("polytope dimension must be 1, 2 or 3");
  if (points.empty()) throw DomainError("polytope needs points");
  Integer L = 1;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) throw DomainError("point dimension mismatch");
    for (const auto& x : p) L = lcm_int(L, denominator(x));
  }
  std::vector<IPoint> ip;
  for (const auto& p : points) {
    IPoint q;
    for (const auto& x : p) q.push_back(Integer(numerator(x) * (L / denominator(x))));
    ip.push_back(std::move(q));
  }
  std::sort(ip.begin(), ip.end());
  ip.erase(std::unique(ip.begin(), ip.end()), ip.end());

  Polytope P;
  P.dim_ = dim;
  std::vector<int> vidx;
  std::vector<std::pair<IPoint, Integer>> planes;
  if (dim == 1) {
    if (ip.size() < 2) throw DomainError("polytope is not full-dimensional");
    vidx = {0, static_cast<int>(ip.size()) - 1};
    planes = {{IPoint{Integer(-1)}, Integer(-ip.front()[0])}, {IPoint{Integer(1)}, ip.back()[0]}};
  } else if (dim == 2) {
    std::vector<int> all(ip.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    vidx = hull2(ip, all);
    if (vidx.size() < 3) throw DomainError("polytope is not full-dimensional");
    for (std::size_t i = 0; i < vidx.size(); ++i) {
      const auto& a = ip[vidx[i]];
      const auto& b = ip[vidx[(i + 1) % vidx.size()]];
      const auto n = primitive({b[1] - a[1], a[0] - b[0]});
      planes.push_back({n, n[0] * a[0] + n[1] * a[1]});
    }
  } else {
    auto h = hull3(ip);
    vidx = std::move(h.vertices);
    planes = std::move(h.planes);
  }
  for (int i : vidx) {
    Point p;
    for (const auto& x : ip[i]) p.push_back(Rational(x, L));
    P.vertices_.push_back(std::move(p));
  }
  std::sort(P.vertices_.begin(), P.vertices_.end());
  for (auto& [n, off] : planes) P.facets_.push_back({n, Rational(off, L)});
  std::sort(P.facets_.begin(), P.facets_.end(), [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
  P.build_faces();
  return P;
}

void Polytope::build_faces() {
  auto on = [&](const Facet& f, const Point& v) {
    Rational s = 0;
    for (int a = 0; a < dim_; ++a) s += Rational(f.normal[a]) * v[a];
    return s == f.offset;
  };
  std::set<std::vector<int>> sets;
  std::vector<std::vector<int>> queue;
  for (const auto& f : facets_) {
    std::vector<int> vs;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (on(f, vertices_[i])) vs.push_back(static_cast<int>(i));
    }
    if (sets.insert(vs).second) queue.push_back(vs);
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<int> both;
      std::set_intersection(queue[i].begin(), queue[i].end(), queue[j].begin(), queue[j].end(),
                            std::back_inserter(both));
      if (!both.empty() && sets.insert(both).second) queue.push_back(both);
    }
  }
  faces_.clear();
  for (const auto& vs : queue) {
    Face f;
    f.vertices = vs;
    std::vector<Point> pts;
    for (int v : vs) pts.push_back(vertices_[v]);
    f.dim = affine_rank(pts);
    for (std::size_t k = 0; k < facets_.size(); ++k) {
      if (std::all_of(vs.begin(), vs.end(), [&](int v) { return on(facets_[k], vertices_[v]); })) {
        f.facets.push_back(static_cast<int>(k));
      }
    }
    faces_.push_back(std::move(f));
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim > b.dim : a.facets < b.facets;
  });
}

Rational Polytope::volume() const {
  if (dim_ == 1) return vertices_.back()[0] - vertices_.front()[0];
  Point r(dim_, Rational(0));
  for (const auto& v : vertices_) {
    for (int a = 0; a < dim_; ++a) r[a] += v[a];
  }
  for (auto& x : r) x /= static_cast<int>(vertices_.size());
  Rational total = 0;
  for (const auto& face : faces_) {
    if (face.dim != dim_ - 1) continue;
    if (dim_ == 2) {
      const auto& a = vertices_[face.vertices[0]];
      const auto& b = vertices_[face.vertices[1]];
      const Rational det = (a[0] - r[0]) * (b[1] - r[1]) - (a[1] - r[1]) * (b[0] - r[0]);
      total += abs(det) / 2;
      continue;
    }
    // order the facet polygon around its centroid and fan from the interior point
    const auto& n = facets_[face.facets[0]].normal;
    int k = 0;
    for (int a = 1; a < 3; ++a) {
      if (abs(n[a]) > abs(n[k])) k = a;
    }
    Integer L = 1;
    for (int v : face.vertices) {
      for (const auto& x : vertices_[v]) L = lcm_int(L, denominator(x));
    }
    std::vector<IPoint> proj;
    std::vector<int> local;
    for (int v : face.vertices) {
      IPoint q;
      for (int a = 0; a < 3; ++a) {
        if (a != k) q.push_back(Integer(numerator(vertices_[v][a]) * (L / denominator(vertices_[v][a]))));
      }
      local.push_back(static_cast<int>(proj.size()));
      proj.push_back(std::move(q));
    }
    const auto cyc = hull2(proj, local);
    Rational fv = 0;
    const auto& p0 = vertices_[face.vertices[cyc[0]]];
    for (std::size_t i = 1; i + 1 < cyc.size(); ++i) {
      const auto& p1 = vertices_[face.vertices[cyc[i]]];
      const auto& p2 = vertices_[face.vertices[cyc[i + 1]]];
      Rational u[3], v[3], w[3];
      for (int a = 0; a < 3; ++a) {
        u[a] = p0[a] - r[a];
        v[a] = p1[a] - r[a];
        w[a] = p2[a] - r[a];
      }
      fv += u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0]);
    }
    total += abs(fv) / 6;
  }
  return total;
}

Polytope Polytope::scaled(const Rational& s) const {
  if (s <= 0) throw DomainError("scale factor must be positive");
  std::vector<Point> pts(vertices_);
  for (auto& p : pts) {
    for (auto& x : p) x *= s;
  }
  return from_points(dim_, pts);
}

bool Polytope::contains(const Point& p) const {
  if (static_cast<int>(p.size()) != dim_) throw DomainError("point dimension mismatch");
  for (const auto& f : facets_) {
    Rational s = 0;
    for (int a = 0; a < dim_; ++a) s += Rational(f.normal[a]) * p[a];
    if (s > f.offset) return false;
  }
  return true;
}

Polytope minkowski_sum(const std::vector<const Polytope*>& ps) {
  if (ps.empty()) throw DomainError("Minkowski sum of nothing");
  const int d = ps[0]->dim();
  std::vector<Point> acc = ps[0]->vertices();
  for (std::size_t i = 1; i < ps.size(); ++i) {
    if (ps[i]->dim() != d) throw DomainError("Minkowski sum dimension mismatch");
    std::set<Point> next;
    for (const auto& a : acc) {
      for (const auto& b : ps[i]->vertices()) {
        Point s(d);
        for (int k = 0; k < d; ++k) s[k] = a[k] + b[k];
        next.insert(std::move(s));
      }
    }
    // keep only extreme points before the next product
    acc = Polytope::from_points(d, {next.begin(), next.end()}).vertices();
  }
  return Polytope::from_points(d, acc);
}

Rational mixed_volume(const std::vector<Polytope>& ps) {
  const int m = static_cast<int>(ps.size());
  if (m == 0) throw DomainError("mixed volume of an empty list");
  for (const auto& p : ps) {
    if (p.dim() != m) throw DomainError("mixed volume needs exactly dim polytopes");
  }
  Rational total = 0;
  Integer fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<const Polytope*> sel;
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) sel.push_back(&ps[i]);
    }
    const Rational v = minkowski_sum(sel).volume();
    if ((m - static_cast<int>(sel.size())) % 2) {
      total -= v;
    } else {
      total += v;
    }
  }
  return total / Rational(fact);
}

std::vector<std::vector<Integer>> kernel_lattice_basis(const std::vector<std::vector<Integer>>& rows, int d) {
  std::vector<std::vector<Integer>> A(rows);
  for (const auto& r : A) {
    if (static_cast<int>(r.size()) != d) throw DomainError("kernel basis: row length mismatch");
  }
  // columns of U, transformed alongside A by unimodular column operations
  std::vector<std::vector<Integer>> U(d, std::vector<Integer>(d, Integer(0)));
  for (int i = 0; i < d; ++i) U[i][i] = 1;
  auto colop = [&](int dst, int src, const Integer& q) {  // col dst -= q * col src
    for (auto& r : A) r[dst] -= q * r[src];
    for (auto& r : U) r[dst] -= q * r[src];
  };
  auto colswap = [&](int a, int b) {
    for (auto& r : A) std::swap(r[a], r[b]);
    for (auto& r : U) std::swap(r[a], r[b]);
  };
  int c = 0;
  for (std::size_t i = 0; i < A.size() && c < d; ++i) {
    for (;;) {
      int best = -1;
      for (int j = c; j < d; ++j) {
        if (A[i][j] != 0 && (best < 0 || abs(A[i][j]) < abs(A[i][best]))) best = j;
      }
      if (best < 0) break;
      colswap(c, best);
      bool done = true;
      for (int j = c + 1; j < d; ++j) {
        if (A[i][j] == 0) continue;
        colop(j, c, Integer(A[i][j] / A[i][c]));
        if (A[i][j] != 0) done = false;
      }
      if (done) {
        ++c;
        break;
      }
    }
  }
  std::vector<std::vector<Integer>> basis;
  for (int j = c; j < d; ++j) {
    std::vector<Integer> v(d);
    for (int a = 0; a < d; ++a) v[a] = U[a][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace gma::toric
