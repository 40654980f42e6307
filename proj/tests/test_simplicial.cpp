#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "dlg/meshes.hpp"
#include "dlg/quadrature.hpp"
#include "dlg/simplicial.hpp"

using namespace dlg;

namespace {

// gram determinant area of one curved cell
double cell_area(const GeomCell& geo) {
  return integrate_unit_simplex(2, [&](const VecD& lam) {
    auto J = geo.jac(lam);
    double a = dot(J[0], J[0]), b = dot(J[0], J[1]), c = dot(J[1], J[1]);
    return std::sqrt(std::max(0.0, a * c - b * b));
  });
}

double affine_signed_volume(const GeomCell& geo) {
  int d = geo.dim();
  std::vector<VecD> e;
  for (int m = 1; m <= d; ++m) e.push_back(geo.corners[m] - geo.corners[0]);
  // bareiss style elimination for the small determinant
  std::vector<std::vector<double>> a(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a[i][j] = e[i][j];
  double det = 1.0;
  for (int col = 0; col < d; ++col) {
    int piv = col;
    for (int r = col + 1; r < d; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < d; ++r) {
      double f = a[r][col] / a[col][col];
      for (int j = col; j < d; ++j) a[r][j] -= f * a[col][j];
    }
  }
  double fact = 1.0;
  for (int k = 2; k <= d; ++k) fact *= k;
  return det / fact;
}

double chain_volume(const SimplicialComplex& K, const Chain& c) {
  double vol = 0.0;
  for (const auto& [key, coef] : c) vol += coef * affine_signed_volume(K.geom(key));
  return vol;
}

}  // namespace

TEST_CASE("boundary basics") {
  Chain c;
  chain_add(c, {4, 7}, 1);
  Chain b = boundary(c);
  REQUIRE(b.size() == 2);
  CHECK(b.at({7}) == 1);
  CHECK(b.at({4}) == -1);

  Chain tet;
  chain_add(tet, {0, 1, 2, 3}, 1);
  CHECK(boundary(boundary(tet)).empty());

  // orientation flip under one transposition
  Chain f;
  chain_add(f, {1, 0, 2}, 1);
  CHECK(f.at({0, 1, 2}) == -1);

  // degenerate input is dropped
  Chain g;
  chain_add(g, {3, 3, 5}, 2);
  CHECK(g.empty());
}

TEST_CASE("torus meshes close up") {
  SimplicialComplex K2 = torus_mesh(2, 3);
  CHECK(K2.fundamental.size() == 18);
  CHECK(K2.euler_characteristic() == 0);
  CHECK(boundary(K2.fundamental).empty());
  CHECK(chain_volume(K2, K2.fundamental) == Catch::Approx(1.0).margin(1e-12));

  // exhaustive d(d(cell)) = 0 on a small complex
  for (const auto& level : K2.cells)
    for (const auto& [key, geo] : level) {
      (void)geo;
      Chain one;
      one[key] = 1;
      CHECK(boundary(boundary(one)).empty());
    }

  SimplicialComplex K3 = torus_mesh(3, 4);
  CHECK(K3.fundamental.size() == 4 * 4 * 4 * 6);
  CHECK(K3.euler_characteristic() == 0);
  CHECK(boundary(K3.fundamental).empty());
  CHECK(chain_volume(K3, K3.fundamental) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("box torus cover geometry") {
  BoxTorusCover U(2);
  REQUIRE(U.num_charts() == 9);

  // every chart pair meets, triples never repeat a full axis
  auto pairs = U.nerve_tuples(1);
  CHECK(pairs.size() == 36);
  auto triples = U.nerve_tuples(2);
  for (const auto& t : triples) {
    for (int axis = 0; axis < 2; ++axis) {
      std::set<int> digs;
      for (int c : t) digs.insert(U.digit(c, axis));
      CHECK(digs.size() <= 2);
    }
  }

  // transitions between charts are integer shifts
  Rng rng(11);
  for (const auto& t : pairs) {
    auto pts = U.overlap_samples(t, 8, rng);
    VecD shift0;
    for (const VecD& p : pts) {
      REQUIRE(U.contains(t[0], p));
      REQUIRE(U.contains(t[1], p));
      VecD s = U.to_chart(t[1], p) - U.to_chart(t[0], p);
      for (double x : s) CHECK(x == Catch::Approx(std::round(x)).margin(1e-12));
      if (shift0.empty())
        shift0 = s;
      else
        for (size_t k = 0; k < s.size(); ++k)
          CHECK(s[k] == Catch::Approx(shift0[k]).margin(1e-12));
    }
  }

  // paths stay inside the overlap
  for (const auto& t : triples) {
    auto targets = U.overlap_samples(t, 3, rng);
    for (const VecD& amb : targets)
      for (const VecD& p : U.overlap_path(t, amb, 24))
        for (int c : t) REQUIRE(U.contains(c, p));
  }
}

TEST_CASE("subordination on the torus") {
  BoxTorusCover U(2);
  SimplicialComplex K = torus_mesh(2, 9);
  Subordination sub = greedy_subordination(K, U);
  auto rep = verify_subordination(K, U, sub, 16);
  CHECK(rep.all_pass);

  // an unassigned face is reported as failure, not thrown
  VKey some = rep.entries.front().face;
  sub.erase(some);
  auto rep2 = verify_subordination(K, U, sub, 4);
  CHECK_FALSE(rep2.all_pass);

  // universal chart accepts anything
  TrivialCover one(2);
  Subordination all;
  for (const auto& level : K.cells)
    for (const auto& [key, geo] : level) {
      (void)geo;
      all[key] = 0;
    }
  CHECK(verify_subordination(K, one, all, 4).all_pass);

  BoxTorusCover U3(3);
  SimplicialComplex K3 = torus_mesh(3, 9);
  CHECK(verify_subordination(K3, U3, greedy_subordination(K3, U3), 8).all_pass);
}

TEST_CASE("sphere mesh, hemispheres, equator") {
  OctaMesh M = sphere_octa_mesh(2);
  CHECK(M.mesh.fundamental.size() == 128);
  CHECK(M.mesh.euler_characteristic() == 2);
  CHECK(boundary(M.mesh.fundamental).empty());

  double area = 0.0;
  for (const auto& [key, coef] : M.mesh.fundamental) {
    REQUIRE(std::abs(coef) == 1);  // signs are relative to sorted keys
    area += cell_area(M.mesh.geom(key));
  }
  CHECK(area == Catch::Approx(4 * M_PI).epsilon(1e-8));

  SimplicialComplex E = equator_complex(M);
  CHECK(E.fundamental.size() == 16);
  CHECK(boundary(E.fundamental).empty());

  Chain north = hemisphere_chain(M, 1);
  CHECK(north.size() == 64);
  CHECK(boundary(north) == E.fundamental);

  Chain south = hemisphere_chain(M, -1);
  CHECK(chain_sum(north, south) == M.mesh.fundamental);

  SphereCover two = SphereCover::two_chart();
  Subordination sub = greedy_subordination(M.mesh, two, 16);
  CHECK(verify_subordination(M.mesh, two, sub, 16).all_pass);

  // a polar southern triangle misassigned to the north cap must fail
  VKey bad;
  for (const auto& [key, coef] : M.mesh.fundamental) {
    (void)coef;
    const GeomCell& geo = M.mesh.geom(key);
    bool polar = true;
    for (const VecD& c : geo.corners) polar = polar && c[2] <= -2;
    if (polar) {
      bad = key;
      break;
    }
  }
  REQUIRE(!bad.empty());
  sub[bad] = 0;
  CHECK_FALSE(verify_subordination(M.mesh, two, sub, 16).all_pass);
}

TEST_CASE("sphere covers and refinement") {
  SphereCover six = SphereCover::six_chart();
  SphereCover two = SphereCover::two_chart();

  // caps are disjoint, the sector square closes up
  CHECK_FALSE(six.tuple_nonempty({0, 1}));
  CHECK(six.tuple_nonempty({2, 3}));
  CHECK(six.tuple_nonempty({3, 4}));
  CHECK(six.tuple_nonempty({4, 5}));
  CHECK(six.tuple_nonempty({2, 5}));
  CHECK_FALSE(six.tuple_nonempty({2, 4}));
  CHECK_FALSE(six.tuple_nonempty({3, 5}));
  CHECK(six.tuple_nonempty({0, 2, 3}));
  CHECK(six.tuple_nonempty({1, 4, 5}));
  CHECK(six.nerve_tuples(2).size() == 8);
  CHECK(six.nerve_tuples(3).empty());

  Chain cyc = sphere_nerve_2cycle();
  CHECK(cyc.size() == 8);
  CHECK(boundary(cyc).empty());
  for (const auto& [key, coef] : cyc) {
    (void)coef;
    CHECK(six.tuple_nonempty(key));
  }

  Rng rng(5);
  for (const auto& t : six.nerve_tuples(2)) {
    for (const VecD& amb : six.overlap_samples(t, 3, rng))
      for (const VecD& p : six.overlap_path(t, amb, 32))
        for (int c : t) REQUIRE(six.contains(c, p));
  }

  CoverRefinement ref{&six, &two, {0, 1, 0, 0, 0, 0}};
  ref.verify(64, rng);

  // chart jacobians against centered differences through to_ambient
  for (int chart = 0; chart < 6; ++chart) {
    VecD base = six.overlap_base({chart});
    VecD x0 = six.to_chart(chart, base);
    auto rows = six.chart_jacobian(chart, base);
    double h = 1e-5;
    for (size_t k = 0; k < x0.size(); ++k) {
      VecD xp = x0, xm = x0;
      xp[k] += h;
      xm[k] -= h;
      VecD dp = (1.0 / (2 * h)) * (six.to_ambient(chart, xp) - six.to_ambient(chart, xm));
      // rows * dp should be the k-th coordinate direction
      for (size_t r = 0; r < rows.size(); ++r)
        CHECK(dot(rows[r], dp) == Catch::Approx(r == k ? 1.0 : 0.0).margin(1e-6));
    }
  }
}

TEST_CASE("barycentric subdivision") {
  SimplicialComplex K;
  K.add_top({0, 1, 2}, 1,
            GeomCell{ParamKind::Affine, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}});
  Subordination sub;
  for (const auto& level : K.cells)
    for (const auto& [key, geo] : level) {
      (void)geo;
      sub[key] = 0;
    }
  auto R = barycentric_subdivide(K, sub);
  CHECK(R.complex.cells[0].size() == 7);
  CHECK(R.complex.cells[1].size() == 12);
  CHECK(R.complex.cells[2].size() == 6);
  CHECK(chain_volume(R.complex, R.complex.fundamental) ==
        Catch::Approx(0.5).margin(1e-12));
  for (const auto& level : R.complex.cells)
    for (const auto& [key, geo] : level) {
      (void)geo;
      REQUIRE(R.sub.count(key) == 1);
    }

  SimplicialComplex empty;
  Subordination none;
  CHECK(barycentric_subdivide(empty, none).complex.fundamental.empty());
}

TEST_CASE("subdivision respects cycles and charts") {
  BoxTorusCover U(2);
  SimplicialComplex K = torus_mesh(2, 9);
  Subordination sub = greedy_subordination(K, U);
  auto R = barycentric_subdivide(K, sub);
  CHECK(R.complex.fundamental.size() == K.fundamental.size() * 6);
  CHECK(boundary(R.complex.fundamental).empty());
  CHECK(chain_volume(R.complex, R.complex.fundamental) ==
        Catch::Approx(1.0).margin(1e-10));
  CHECK(verify_subordination(R.complex, U, R.sub, 12).all_pass);

  // subdividing the equator keeps it a cycle and doubles the edges
  OctaMesh M = sphere_octa_mesh(2);
  SimplicialComplex E = equator_complex(M);
  SphereCover two = SphereCover::two_chart();
  Subordination esub = greedy_subordination(E, two);
  auto RE = barycentric_subdivide(E, esub);
  CHECK(RE.complex.fundamental.size() == 32);
  CHECK(boundary(RE.complex.fundamental).empty());
  CHECK(verify_subordination(RE.complex, two, RE.sub, 8).all_pass);
}

TEST_CASE("products with a circle") {
  // triangulated circle times circle: the 18 triangle torus
  SimplicialComplex C3 = torus_mesh(1, 3);
  SimplicialComplex T = product_with_circle(C3, 3);
  CHECK(T.fundamental.size() == 18);
  CHECK(T.euler_characteristic() == 0);
  CHECK(boundary(T.fundamental).empty());

  // a point turns into a plain circle
  SimplicialComplex pt;
  pt.add_top({0}, 1, GeomCell{ParamKind::Affine, {VecD{}}});
  SimplicialComplex C = product_with_circle(pt, 5);
  CHECK(C.fundamental.size() == 5);
  CHECK(C.euler_characteristic() == 0);
  CHECK(boundary(C.fundamental).empty());
  CHECK_THROWS_AS(product_with_circle(pt, 2), Failure);

  // circle times sphere
  OctaMesh M = sphere_octa_mesh(1);
  SimplicialComplex P = product_with_circle(M.mesh, 4);
  CHECK(P.fundamental.size() == 32 * 4 * 3);
  CHECK(P.euler_characteristic() == 0);
  CHECK(boundary(P.fundamental).empty());

  // product subordination through the product cover
  BoxTorusCover base(1);
  ProductCover PU(&base);
  SimplicialComplex C9 = torus_mesh(1, 9);
  SimplicialComplex T9 = product_with_circle(C9, 9);
  CHECK(boundary(T9.fundamental).empty());
  Subordination sub = greedy_subordination(T9, PU);
  CHECK(verify_subordination(T9, PU, sub, 12).all_pass);
}

TEST_CASE("torus nerve cycles close") {
  for (int d : {1, 2, 3}) {
    Chain c = torus_nerve_cycle(d);
    CHECK(boundary(c).empty());
    BoxTorusCover U(d);
    for (const auto& [key, coef] : c) {
      (void)coef;
      REQUIRE(U.tuple_nonempty(key));
    }
  }
}
