#include <random>

#include <gtest/gtest.h>

#include "gma/errors.hpp"
#include "gma/toric/criterion.hpp"
#include "gma/toric/polytope.hpp"

using namespace gma;
using namespace gma::toric;

namespace {

Rational Q(const char* s) { return parse_rational(s); }

Polytope poly(int d, std::initializer_list<std::initializer_list<const char*>> pts) {
  std::vector<Point> v;
  for (const auto& p : pts) {
    Point q;
    for (const char* x : p) q.push_back(Q(x));
    v.push_back(q);
  }
  return Polytope::from_points(d, v);
}

Polytope simplex2(const char* s = "1") { return poly(2, {{"0", "0"}, {s, "0"}, {"0", s}}); }
Polytope square() { return poly(2, {{"0", "0"}, {"1", "0"}, {"0", "1"}, {"1", "1"}}); }
Polytope cube() {
  std::vector<Point> v;
  for (int m = 0; m < 8; ++m) v.push_back({Rational(m & 1), Rational((m >> 1) & 1), Rational((m >> 2) & 1)});
  return Polytope::from_points(3, v);
}
Polytope simplex3(int s = 1) {
  return Polytope::from_points(3, {{0, 0, 0}, {s, 0, 0}, {0, s, 0}, {0, 0, s}});
}

Polytope random_polygon(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(-4, 4);
  for (;;) {
    std::vector<Point> v;
    for (int i = 0; i < 6; ++i) v.push_back({Rational(u(rng)), Rational(u(rng))});
    try {
      return Polytope::from_points(2, v);
    } catch (const DomainError&) {
    }
  }
}

Rational det3(const Point& a, const Point& b, const Point& c, const Point& o) {
  Rational u[3], v[3], w[3];
  for (int i = 0; i < 3; ++i) {
    u[i] = a[i] - o[i];
    v[i] = b[i] - o[i];
    w[i] = c[i] - o[i];
  }
  return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0]);
}

ClassPolytopePair p2_pair() { return ClassPolytopePair(simplex2("2"), simplex2("1")); }

ClassPolytopePair blowup_pair() {
  return ClassPolytopePair(poly(2, {{"1", "0"}, {"2", "0"}, {"0", "2"}, {"0", "1"}}),
                           poly(2, {{"9/10", "0"}, {"1", "0"}, {"0", "1"}, {"0", "9/10"}}),
                           {{"(-1,-1)", "E"}, {"(1,1)", "L"}, {"(-1,0)", "D1"}, {"(0,-1)", "D2"}});
}

}  // namespace

TEST(Rationals, Parse) {
  EXPECT_EQ(Q("9/10"), Rational(9, 10));
  EXPECT_EQ(Q("-3"), Rational(-3));
  EXPECT_EQ(Q("+2/4"), Rational(1, 2));
  EXPECT_EQ(Q("0.9"), Rational(9, 10));
  EXPECT_EQ(Q("-.25"), Rational(-1, 4));
  EXPECT_EQ(Q("010/08"), Rational(5, 4));
  EXPECT_EQ(to_string(Q("6/4")), "3/2");
  EXPECT_EQ(to_string(Q("-8/4")), "-2");
  EXPECT_THROW(Q("1/0"), DomainError);
  EXPECT_THROW(Q("abc"), DomainError);
  EXPECT_THROW(Q("."), DomainError);
  EXPECT_THROW(Q("1e3"), DomainError);
}

TEST(Polytope, Volumes) {
  EXPECT_EQ(square().volume(), 1);
  EXPECT_EQ(simplex2().volume(), Rational(1, 2));
  EXPECT_EQ(simplex2("2").volume(), 2);
  EXPECT_EQ(cube().volume(), 1);
  EXPECT_EQ(simplex3().volume(), Rational(1, 6));
  EXPECT_EQ(simplex3(2).volume(), Rational(8, 6));
  EXPECT_THROW(poly(2, {{"0", "0"}, {"1", "1"}, {"2", "2"}}), DomainError);
  EXPECT_THROW(Polytope::from_points(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), DomainError);
}

TEST(Polytope, RandomSimplexMatchesDeterminant) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> u(-6, 6), den(1, 5);
  int done = 0;
  while (done < 40) {
    std::vector<Point> v(4);
    for (auto& p : v) {
      for (int a = 0; a < 3; ++a) p.push_back(Rational(u(rng), den(rng)));
    }
    const Rational det = det3(v[1], v[2], v[3], v[0]);
    if (det == 0) continue;
    // interior and boundary points must not change the hull
    std::vector<Point> pts(v);
    for (int k = 0; k < 6; ++k) {
      std::uniform_int_distribution<int> w(0, 4);
      Rational ws[4], tot = 0;
      for (auto& x : ws) tot += (x = w(rng));
      if (tot == 0) continue;
      Point c(3, Rational(0));
      for (int i = 0; i < 4; ++i) {
        for (int a = 0; a < 3; ++a) c[a] += ws[i] / tot * v[i][a];
      }
      pts.push_back(c);
    }
    const auto P = Polytope::from_points(3, pts);
    EXPECT_EQ(P.volume(), abs(det) / 6);
    EXPECT_EQ(P.vertices().size(), 4u);
    ++done;
  }
}

TEST(Polytope, BoxesAndFaceLattice) {
  const auto C = cube();
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& f : C.faces()) ++counts[f.dim];
  EXPECT_EQ(counts[0], 8u);
  EXPECT_EQ(counts[1], 12u);
  EXPECT_EQ(counts[2], 6u);
  const auto S = simplex3();
  std::size_t sc[3] = {0, 0, 0};
  for (const auto& f : S.faces()) ++sc[f.dim];
  EXPECT_EQ(sc[0], 4u);
  EXPECT_EQ(sc[1], 6u);
  EXPECT_EQ(sc[2], 4u);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> u(-5, 5);
  for (int it = 0; it < 25; ++it) {
    std::vector<Point> v;
    for (int i = 0; i < 12; ++i) v.push_back({Rational(u(rng)), Rational(u(rng)), Rational(u(rng))});
    const auto P = Polytope::from_points(3, v);
    long c[3] = {0, 0, 0};
    for (const auto& f : P.faces()) ++c[f.dim];
    EXPECT_EQ(c[0] - c[1] + c[2], 2);
    for (const auto& p : v) EXPECT_TRUE(P.contains(p));
    for (const auto& f : P.faces()) {
      if (f.dim == 0) EXPECT_GE(f.facets.size(), 3u);
      if (f.dim == 1) EXPECT_EQ(f.facets.size(), 2u);
    }
  }
  const auto B = Polytope::from_points(3, {{0, 0, 0}, {2, 0, 0}, {0, 3, 0}, {0, 0, 5}, {2, 3, 0}, {2, 0, 5}, {0, 3, 5},
                                           {2, 3, 5}, {1, 1, 1}, {1, 3, 2}});
  EXPECT_EQ(B.volume(), 30);
}

TEST(Polytope, KernelLattice) {
  for (const std::vector<Integer>& n : {std::vector<Integer>{1, 1, 1}, {2, -3, 5}, {0, 4, 6}, {1, 0, 0}}) {
    const auto basis = kernel_lattice_basis({n}, 3);
    ASSERT_EQ(basis.size(), 2u);
    for (const auto& b : basis) EXPECT_EQ(b[0] * n[0] + b[1] * n[1] + b[2] * n[2], 0);
    Integer g = 0;
    for (const auto& x : n) g = gcd(g, abs(x));
    // Gram determinant of the plane lattice equals |n/g|^2
    Integer gram[2][2];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) gram[i][j] = basis[i][0] * basis[j][0] + basis[i][1] * basis[j][1] + basis[i][2] * basis[j][2];
    }
    const Integer nn = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) / (g * g);
    EXPECT_EQ(gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0], nn);
  }
  const auto line = kernel_lattice_basis({{1, 1, 1}, {1, -1, 0}}, 3);
  ASSERT_EQ(line.size(), 1u);
  EXPECT_EQ(abs(line[0][0]) + abs(line[0][1]) + abs(line[0][2]), 4);
}

TEST(MixedVolume, Examples) {
  EXPECT_EQ(mixed_volume({square(), square()}), 1);
  EXPECT_EQ(mixed_volume({square(), simplex2()}), 1);
  EXPECT_EQ(mixed_volume({simplex2(), square()}), 1);
  EXPECT_EQ(mixed_volume({simplex2("2"), simplex2()}), 1);
  EXPECT_EQ(mixed_volume({cube(), cube(), simplex3()}), 1);
  EXPECT_EQ(mixed_volume({cube(), simplex3(), simplex3()}), Rational(1, 2));
  EXPECT_EQ(mixed_volume({simplex3(2), simplex3(2), simplex3(2)}), Rational(8, 6));
  EXPECT_THROW(mixed_volume({square()}), DomainError);
}

TEST(MixedVolume, RandomMultilinearity) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 50; ++it) {
    const auto P = random_polygon(rng), R = random_polygon(rng);
    const Rational mv = mixed_volume({P, R});
    EXPECT_EQ(mv, mixed_volume({R, P}));
    EXPECT_EQ(mixed_volume({P, P}), P.volume());
    // nodes outside {0,1}: the polynomial lambda -> Vol(aP + bR) must be quadratic with these coefficients
    const auto P2 = P.scaled(2), R3 = R.scaled(3), R2 = R.scaled(2);
    EXPECT_EQ(minkowski_sum({&P, &R2}).volume(), P.volume() + 4 * mv + 4 * R.volume());
    EXPECT_EQ(minkowski_sum({&P2, &R3}).volume(), 4 * P.volume() + 12 * mv + 9 * R.volume());
    EXPECT_EQ(minkowski_sum({&P, &R}).volume(), P.volume() + 2 * mv + R.volume());
  }
}

TEST(MixedVolume, Monotone) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 30; ++it) {
    const auto P = random_polygon(rng), R = random_polygon(rng), extra = random_polygon(rng);
    std::vector<Point> pts(P.vertices());
    pts.insert(pts.end(), extra.vertices().begin(), extra.vertices().end());
    const auto big = Polytope::from_points(2, pts);
    EXPECT_LE(mixed_volume({P, R}), mixed_volume({big, R}));
  }
}

TEST(Intersection, ProjectivePlane) {
  const ClassPolytopePair h(simplex2(), simplex2());
  EXPECT_EQ(h.intersection_number("M", 2, 0), 1);
  for (const auto& id : h.face_ids()) {
    if (h.codim(id) == 1) EXPECT_EQ(h.intersection_number(id, 1, 0), 1);
  }
  const auto pair = p2_pair();
  EXPECT_EQ(pair.intersection_number("M", 1, 1), 2);
  EXPECT_EQ(pair.intersection_number("M", 2, 0), 4);
  EXPECT_EQ(pair.intersection_number("M", 0, 2), 1);
  EXPECT_THROW(pair.intersection_number("M", 1, 0), DomainError);
  EXPECT_THROW(pair.intersection_number("nope", 1, 1), DomainError);
}

TEST(Intersection, LatticeLengthAndArea) {
  // edge (0,0)-(2,4) has lattice length 2
  const auto T = poly(2, {{"0", "0"}, {"2", "4"}, {"3", "0"}});
  const ClassPolytopePair pt(T, T);
  EXPECT_EQ(pt.intersection_number("(-2,1)", 1, 0), 2);
  // faces of the unit 3-simplex: every facet has lattice area 1/2, every edge length 1
  const ClassPolytopePair p3(simplex3(), simplex3());
  for (const auto& id : p3.face_ids()) {
    if (p3.codim(id) == 1) EXPECT_EQ(p3.intersection_number(id, 2, 0), 1) << id;
    if (p3.codim(id) == 2) EXPECT_EQ(p3.intersection_number(id, 1, 0), 1) << id;
  }
  EXPECT_EQ(p3.intersection_number("M", 3, 0), 1);
  // P1 x P1 x P1 with Omega = H1 + H2 + H3: int Omega^3 = 6
  const ClassPolytopePair c3(cube(), cube());
  EXPECT_EQ(c3.intersection_number("M", 3, 0), 6);
  for (const auto& id : c3.face_ids()) {
    if (c3.codim(id) == 1) EXPECT_EQ(c3.intersection_number(id, 2, 0), 2);
  }
}

TEST(Criterion, ProjectivePlanePasses) {
  const auto pair = p2_pair();
  EXPECT_EQ(jequation_constant(pair, 1), 2);
  const auto rep = check_criterion(pair, {2, {Rational(2)}});
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.epsilonUniform, Rational(1, 2));
  EXPECT_EQ(uniform_epsilon(rep), rep.epsilonUniform);
  ASSERT_EQ(rep.perFace.size(), 3u);
  for (const auto& f : rep.perFace) {
    EXPECT_EQ(f.lhs, 2);
    EXPECT_EQ(f.rhsScale, 4);
    EXPECT_TRUE(f.conditioned);
  }
  EXPECT_EQ(rep.wholeSpaceValue, 0);
}

TEST(Criterion, BlowupFailsOnExceptionalCurve) {
  const auto pair = blowup_pair();
  const Rational c = jequation_constant(pair, 1);
  EXPECT_EQ(c, Rational(30, 11));
  const auto rep = check_criterion(pair, {2, {c}});
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.worstFace, "E");
  for (const auto& f : rep.perFace) {
    if (f.face == "E") {
      EXPECT_EQ(f.lhs, Rational(-5, 11));
    } else {
      EXPECT_GT(f.lhs, 0) << f.face;
    }
  }
  EXPECT_LT(rep.epsilonUniform, 0);
  EXPECT_EQ(uniform_epsilon(rep), rep.epsilonUniform);
}

TEST(Criterion, ZeroCoefficientsGiveEpsilonOne) {
  const auto rep = check_criterion(blowup_pair(), {2, {Rational(0)}});
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.epsilonUniform, 1);
  for (const auto& f : rep.perFace) EXPECT_FALSE(f.conditioned);
}

TEST(Criterion, OmegaEqualsChi) {
  const ClassPolytopePair same(blowup_pair().omega(), blowup_pair().omega());
  EXPECT_EQ(jequation_constant(same, 1), 1);
  const ClassPolytopePair s3(simplex3(2), simplex3(2));
  EXPECT_EQ(jequation_constant(s3, 1), 1);
  EXPECT_EQ(jequation_constant(s3, 2), 1);
}

TEST(Criterion, ThreeDimensionalSimplex) {
  // Omega = 2H, chi = H on P^3, J-equation c_2 = 8/4 = 2
  const ClassPolytopePair pair(simplex3(2), simplex3(1));
  EXPECT_EQ(jequation_constant(pair, 1), 2);
  const auto rep = check_criterion(pair, {3, {Rational(0), Rational(2)}});
  EXPECT_TRUE(rep.pass);
  for (const auto& f : rep.perFace) {
    EXPECT_EQ(f.lhs, 4);
    EXPECT_EQ(f.ratio, f.codim == 1 ? Rational(1, 3) : Rational(2, 3));
    EXPECT_TRUE(f.conditioned);
  }
  EXPECT_EQ(rep.epsilonUniform, Rational(1, 3));
  // only c_1 non-zero: curves (codim 2) have an empty sum
  const auto rep1 = check_criterion(pair, {3, {Rational(1), Rational(0)}});
  for (const auto& f : rep1.perFace) {
    EXPECT_EQ(f.conditioned, f.codim <= 1);
    if (!f.conditioned) EXPECT_EQ(f.ratio, 1);
  }
}

TEST(Criterion, ScalingCovariance) {
  const auto base = blowup_pair();
  for (const char* s : {"2", "3/2", "7/5"}) {
    const Rational sc = Q(s);
    const ClassPolytopePair scaled(base.omega().scaled(sc), base.chi(),
                                   {{"(-1,-1)", "E"}, {"(1,1)", "L"}, {"(-1,0)", "D1"}, {"(0,-1)", "D2"}});
    for (const auto& id : base.face_ids()) {
      const int m = 2 - base.codim(id);
      Rational f = 1;
      for (int i = 0; i < m; ++i) f *= sc;
      EXPECT_EQ(scaled.intersection_number(id, m, 0), f * base.intersection_number(id, m, 0));
      if (m == 2) EXPECT_EQ(scaled.intersection_number(id, 1, 1), sc * base.intersection_number(id, 1, 1));
    }
  }
}

TEST(Criterion, EpsilonIsMinimumOfFaces) {
  const auto rep = check_criterion(blowup_pair(), {2, {Rational(1)}});
  Rational e = rep.perFace[0].ratio;
  for (const auto& f : rep.perFace) {
    e = std::min(e, f.ratio);
    EXPECT_LE(rep.epsilonUniform, f.ratio);
  }
  EXPECT_EQ(e, rep.epsilonUniform);
  auto sub = rep;
  sub.perFace.pop_back();
  EXPECT_GE(uniform_epsilon(sub), uniform_epsilon(rep));
}

TEST(Criterion, FanMismatchRejected) {
  EXPECT_THROW(ClassPolytopePair(square(), simplex2()), ValidationError);
  EXPECT_THROW(ClassPolytopePair(simplex2(), simplex2(), {{"(5,5)", "X"}}), ValidationError);
  EXPECT_THROW(check_criterion(p2_pair(), {3, {Rational(1), Rational(1)}}), DomainError);
}
