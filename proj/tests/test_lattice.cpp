// Lattice gauge fields and their secondary invariants.  Expected values are
// frozen closed forms: the helical functional -k lam^2 / (2 pi), the constant
// field Tr(X[Y,Z]) / 8 pi^2, monopole fluxes, product periods n*m, and the
// pure-gauge constant rho = 2 measured once against the winding oracle.

#include <catch2/catch_amalgamated.hpp>

#include "dlg/chern_simons.hpp"

using namespace dlg;
using Catch::Matchers::ContainsSubstring;

namespace {

const InvariantPolynomial kPhi{1};

LatticeConnection small_constant() {
  return constant_connection(su2_alg(0.15, 0, 0), su2_alg(0, 0.1, 0),
                             su2_alg(0, 0, 0.1));
}

LatticeConnection big_constant() {
  return constant_connection(su2_alg(0.31, 0, 0), su2_alg(0, 0.17, 0),
                             su2_alg(0, 0, 0.23));
}

// wave 1-form overlapping the helical background's algebra directions
LatticeConnection overlap_alpha() {
  LatticeConnection a;
  a.N = 2;
  a.box = torus_box(3);
  Mat s1 = su2_alg(1, 0, 0), s3 = su2_alg(0, 0, 1);
  a.coeff = [s1, s3](const VecD& p, MatFrame& out) {
    out[0] = 0.06 * std::sin(2 * M_PI * p[1]) * s3 +
             0.05 * std::cos(2 * M_PI * p[2]) * s1;
    out[1] = 0.04 * std::sin(2 * M_PI * p[2]) * s1;
    out[2] = 0.05 * std::cos(2 * M_PI * p[0]) * s3;
  };
  a.name = "overlap_alpha";
  return a;
}

std::vector<Cycle3> five_cycles() {
  return {fundamental_cycle3(),
          Cycle3{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}}},
          Cycle3{{{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}},
          Cycle3{{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}},
          Cycle3{{{{2, 0, 0}, {0, 1, 0}, {0, 1, 1}}}}};
}

}  // namespace

TEST_CASE("su2 helpers agree with the generic matrix exponential") {
  REQUIRE((pauli(1) * pauli(2) - Cplx(0, 1) * pauli(3)).norm() == 0.0);
  REQUIRE(su2_exp(0, 0, 0) == mat_id(2));
  Rng rng(31);
  for (int s = 0; s < 20; ++s) {
    double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), c = rng.uniform(-2, 2);
    Eigen::MatrixXcd x = su2_alg(a, b, c);
    REQUIRE((su2_exp(a, b, c) - Mat(x.exp())).norm() <= 1e-13);
    REQUIRE(unitary_within(su2_exp(a, b, c), 1e-13));
  }
  // the series branch near zero angle
  REQUIRE((su2_exp(1e-9, 0, 0) - mat_id(2)).norm() <= 1e-8);
  for (int n : {2, 3, 4}) {
    Mat u = random_unitary(n, rng);
    REQUIRE(unitary_within(u, 1e-12));
    REQUIRE(anti_hermitian_within(random_anti_hermitian(n, rng), 1e-14));
  }
}

TEST_CASE("invariant polynomial is ad-invariant and level-linear") {
  for (int n : {2, 3, 4})
    REQUIRE(ad_invariance_defect(kPhi, n, 40, 100 + n) <= 1e-10);
  InvariantPolynomial phi3{3};
  Rng rng(9);
  Mat x = random_anti_hermitian(3, rng), y = random_anti_hermitian(3, rng);
  REQUIRE(std::abs(phi3.pairing(x, y) - 3.0 * kPhi.pairing(x, y)) <= 1e-15);
}

TEST_CASE("validators reject broken lattice fields") {
  LatticeConnection bad;
  bad.N = 2;
  bad.box = torus_box(3);
  bad.coeff = [](const VecD&, MatFrame& f) {
    f[0] = pauli(1);  // Hermitian, not anti-Hermitian
    f[1] = mat_zero(2);
    f[2] = mat_zero(2);
  };
  REQUIRE_THROWS_WITH(validate_connection(bad),
                      ContainsSubstring("anti-Hermitian"));

  LatticeConnection seam;
  seam.N = 2;
  seam.box = torus_box(3);
  seam.coeff = [](const VecD& p, MatFrame& f) {
    f[0] = p[0] * su2_alg(1, 0, 0);  // x ramp cannot close up
    f[1] = mat_zero(2);
    f[2] = mat_zero(2);
  };
  REQUIRE_THROWS_WITH(validate_connection(seam),
                      ContainsSubstring("periodic seam"));

  GaugeTransformation g;
  g.N = 2;
  g.box = torus_box(3);
  g.value = [](const VecD&) { return Mat(2.0 * mat_id(2)); };
  REQUIRE_THROWS_WITH(validate_gauge(g), ContainsSubstring("unitary"));
  REQUIRE_THROWS_WITH(gauge_transform(flat_connection(2, torus_box(3)), g),
                      ContainsSubstring("unitary"));

  REQUIRE_THROWS_WITH(cs_explicit(monopole_connection(1), 1, {8, 8}),
                      ContainsSubstring("three-dimensional"));
  LatticeConnection open3;
  open3.N = 2;
  open3.box = torus_box(3);
  open3.box.periodic[1] = 0;
  open3.coeff = flat_connection(2, torus_box(3)).coeff;
  REQUIRE_THROWS_WITH(cs_explicit(open3, 1, {8, 8, 8}),
                      ContainsSubstring("closed domain"));
  REQUIRE_THROWS_WITH(axis_rule(sphere_chart_box(), 0, 7),
                      ContainsSubstring("even interval count"));
}

TEST_CASE("box quadrature: exactness, Simpson accuracy, determinism") {
  // trapezoid is exact on band-limited periodic integrands
  double t = integrate_box(torus_box(2), {8, 8}, [](const VecD& p) {
    return 1.0 + std::sin(2 * M_PI * p[0]) * std::cos(2 * M_PI * p[1]) +
           std::cos(2 * M_PI * (p[0] + p[1]));
  });
  REQUIRE(std::abs(t - 1.0) <= 1e-14);
  // Simpson on the polar direction: integral of sin(theta) over the chart
  double s = integrate_box(sphere_chart_box(), {64, 16},
                           [](const VecD& p) { return std::sin(p[0]); });
  REQUIRE(std::abs(s - 2.0 * 2 * M_PI) <= 1e-6);
  // threaded reduction is bitwise identical to the serial sweep
  auto f = [](const VecD& p) {
    return std::exp(std::sin(2 * M_PI * p[0])) * std::cos(2 * M_PI * p[1] * 3) +
           p[2] * 0.0;
  };
  double a = integrate_box(torus_box(3), {12, 12, 12}, f, 1);
  double b = integrate_box(torus_box(3), {12, 12, 12}, f, 4);
  REQUIRE(a == b);
}

TEST_CASE("curvature of flat and constant connections") {
  CurvatureField F0 = curvature_2form(flat_connection(3, torus_box(3)));
  VecD p{0.3, 0.7, 0.1};
  VecD ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
  REQUIRE(F0.eval(p, ex, ey).norm() == 0.0);

  Mat X = su2_alg(0.4, 0, 0), Y = su2_alg(0, 0.3, 0), Z = su2_alg(0.1, 0.2, 0.5);
  CurvatureField F = curvature_2form(constant_connection(X, Y, Z));
  REQUIRE((F.eval(p, ex, ey) - Mat(X * Y - Y * X)).norm() <= 1e-15);
  REQUIRE((F.eval(p, ex, ez) - Mat(X * Z - Z * X)).norm() <= 1e-15);
  REQUIRE((F.eval(p, ey, ez) - Mat(Y * Z - Z * Y)).norm() <= 1e-15);
  // antisymmetry and bilinearity on generic tangents
  VecD u{0.2, -1.3, 0.8}, v{1.1, 0.4, -0.6};
  REQUIRE((F.eval(p, u, v) + Mat(F.eval(p, v, u))).norm() <= 1e-14);
}

TEST_CASE("finite-difference jets match analytic ones") {
  LatticeConnection A = su2_wave_connection(0.4);
  LatticeConnection B = A;
  B.dcoeff = nullptr;
  CurvatureField FA = curvature_2form(A), FB = curvature_2form(B);
  Rng rng(3);
  for (int s = 0; s < 10; ++s) {
    VecD p = box_sample(A.box, rng);
    std::array<Mat, 6> fa, fb;
    FA.components(p, fa);
    FB.components(p, fb);
    for (int k = 0; k < 3; ++k) REQUIRE((fa[k] - fb[k]).norm() <= 5e-7);
  }
}

TEST_CASE("monopole flux equals the charge") {
  const Cplx sc(0.0, 1.0 / (2 * M_PI));
  for (int n : {0, 1, 2, 3}) {
    CurvatureField F = curvature_2form(monopole_connection(n));
    auto dens = [&](const VecD& p) {
      std::array<Mat, 6> f;
      F.components(p, f);
      return (sc * f[0](0, 0)).real();
    };
    double flux = integrate_box(sphere_chart_box(), {64, 64}, dens);
    REQUIRE(std::abs(flux - n) <= 1e-6);
  }
}

TEST_CASE("Bianchi residual vanishes at the quadrature scale") {
  LatticeConnection A = su2_wave_connection(0.4);
  CurvatureField F = curvature_2form(A);
  REQUIRE(bianchi_residual(A, F, 20, 17) <= 1e-5);  // analytic jets
  LatticeConnection B = A;
  B.dcoeff = nullptr;
  CurvatureField G = curvature_2form(B);
  REQUIRE(bianchi_residual(B, G, 20, 17) <= 1e-3);  // finite-difference jets
}

TEST_CASE("product monopole periods are products of charges") {
  std::vector<int> ns{32, 32, 32, 32};
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {0, 2}}) {
    double v = chern_weil_period(product_monopole_connection(n, m), kPhi, ns);
    REQUIRE(std::abs(v - double(n) * double(m)) <= 1e-4);
    REQUIRE(std::abs(v - double(n) * double(m)) <= 5e-6);  // measured margin
  }
  // flat connection: the four-form vanishes identically
  FormField w = chern_weil_4form(flat_connection(2, torus_box(4)), kPhi);
  Rng rng(41);
  VecD p = box_sample(torus_box(4), rng);
  std::vector<VecD> t(4, VecD(4, 0.0));
  for (auto& v : t)
    for (auto& x : v) x = rng.uniform(-1, 1);
  REQUIRE(w.eval(p, t) == 0.0);
}

TEST_CASE("the four-form is closed and is the derivative of the path form") {
  LatticeConnection A = t4_wave_connection(0.3);
  FormField cw = chern_weil_4form(A, kPhi);
  // five alternated directions in four dimensions vanish identically, so this
  // only exercises the evaluator's antisymmetric structure
  FormField dcw = box_fd_derivative(cw, 1e-3);
  Rng rng(23);
  std::vector<VecD> t5(5, VecD(4, 0.0));
  VecD p = box_sample(A.box, rng);
  for (auto& v : t5)
    for (auto& x : v) x = rng.uniform(-1, 1);
  REQUIRE(std::abs(dcw.eval(p, t5)) <= 1e-4);

  // the real content: d(path form) equals the Chern-Weil form
  FormField dcs = box_fd_derivative(cs_form_path(A, kPhi), 1e-3);
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    VecD q = box_sample(A.box, rng);
    std::vector<VecD> t(4, VecD(4, 0.0));
    for (auto& v : t)
      for (auto& x : v) x = rng.uniform(-1, 1);
    worst = std::max(worst, std::abs(dcs.eval(q, t) - cw.eval(q, t)));
  }
  REQUIRE(worst <= 1e-3);
}

TEST_CASE("path functional closed forms on abelian fields") {
  for (double lam : {0.7, 1.0}) {
    LatticeConnection A = abelian_helical_connection(lam);
    double exact = -lam * lam / (2 * M_PI);
    REQUIRE(std::abs(cs_path_functional(A, kPhi, {8, 8, 8}) - exact) <= 1e-12);
    REQUIRE(std::abs(cs_explicit(A, 1, {8, 8, 8}) - exact) <= 1e-12);
  }
  // pointwise: for traceless abelian fields the path form reduces to the
  // quadratic term alone, the closed-form t-integral of 2t dt
  LatticeConnection A = abelian_helical_connection(0.9);
  FormField cs3 = cs_form_path(A, kPhi);
  Rng rng(7);
  for (int s = 0; s < 5; ++s) {
    VecD p = box_sample(A.box, rng);
    std::vector<VecD> t(3, VecD(3, 0.0));
    for (auto& v : t)
      for (auto& x : v) x = rng.uniform(-1, 1);
    MatFrame a;
    A.coeff(p, a);
    MatJet j;
    A.dcoeff(p, j);
    auto cont = [&](const VecD& v) {
      Mat m = mat_zero(2);
      for (int i = 0; i < 3; ++i) m += v[i] * a[i];
      return m;
    };
    auto dform = [&](const VecD& u, const VecD& v) {
      Mat m = mat_zero(2);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m += (u[r] * v[c]) * (j[r][c] - j[c][r]);
      return m;
    };
    Cplx tr = (cont(t[0]) * dform(t[1], t[2])).trace() -
              (cont(t[1]) * dform(t[0], t[2])).trace() +
              (cont(t[2]) * dform(t[0], t[1])).trace();
    double want = tr.real() / (8 * M_PI * M_PI);
    REQUIRE(std::abs(cs3.eval(p, t) - want) <= 1e-12);
  }
}

TEST_CASE("path and explicit functionals: shipped five and the cubic gap") {
  std::vector<int> ns{16, 16, 16};
  std::vector<LatticeConnection> shipped;
  shipped.push_back(flat_connection(2, torus_box(3)));
  shipped.push_back(abelian_helical_connection(1.0));
  shipped.push_back(abelian_helical_connection(0.7));
  shipped.push_back(su2_wave_connection(0.4));
  shipped.push_back(small_constant());
  for (const auto& A : shipped) {
    double path = cs_path_functional(A, kPhi, ns);
    double expl = cs_explicit(A, 1, ns);
    INFO(A.name);
    REQUIRE(std::abs(path - expl) <= 1e-4);
  }
  // the gap is exactly the extra third of the cubic term: on constants the
  // path value doubles the explicit one, and Tr(X[Y,Z]) = 4abc on the su(2)
  // coordinate triple
  LatticeConnection C = big_constant();
  double path = cs_path_functional(C, kPhi, {4, 4, 4});
  double expl = cs_explicit(C, 1, {4, 4, 4});
  double pred = 4.0 * 0.31 * 0.17 * 0.23 / (8 * M_PI * M_PI);
  REQUIRE(std::abs(expl - pred) <= 1e-12);
  REQUIRE(std::abs(path - 2.0 * expl) <= 1e-12);
  REQUIRE(std::abs((path - expl) - pred) <= 1e-12);
}

TEST_CASE("explicit functional: constants, level additivity") {
  REQUIRE(cs_explicit(flat_connection(2, torus_box(3)), 1, {4, 4, 4}) == 0.0);
  Mat D1 = su2_alg(0, 0, 0.3), D2 = su2_alg(0, 0, 0.1), D3 = su2_alg(0, 0, 0.7);
  REQUIRE(std::abs(cs_explicit(constant_connection(D1, D2, D3), 1, {4, 4, 4})) <=
          1e-8);
  LatticeConnection A = abelian_helical_connection(0.8);
  double one = cs_explicit(A, 1, {8, 8, 8});
  REQUIRE(cs_explicit(A, 5, {8, 8, 8}) == 5.0 * one);  // exact by construction
  REQUIRE(cs_explicit(A, -2, {8, 8, 8}) == -2.0 * one);
}

TEST_CASE("winding oracle counts bump degrees") {
  for (int w : {-1, 0, 1, 2}) {
    double d = gauge_degree(bump_gauge(w), 48);
    REQUIRE(std::abs(d - w) <= 1e-4);
    REQUIRE(std::llround(d) == w);
  }
  REQUIRE(std::abs(gauge_degree(abelian_exponential_gauge(2), 16)) <= 1e-12);
  REQUIRE_THROWS_WITH(gauge_degree(constant_gauge(mat_id(3), torus_box(3))),
                      ContainsSubstring("2x2"));
}

TEST_CASE("pure-gauge values freeze rho = 2 at level one") {
  std::vector<int> ns{32, 32, 32};
  for (int w : {-1, 1, 2}) {
    LatticeConnection ag =
        gauge_transform(flat_connection(2, torus_box(3)), bump_gauge(w));
    double expl = cs_explicit(ag, 1, ns);
    double path = cs_path_functional(ag, kPhi, ns);
    INFO("w = " << w);
    REQUIRE(std::abs(expl - 2.0 * w) <= 2e-5);  // the verbatim cubic, rho = 2
    REQUIRE(std::abs(path - 1.0 * w) <= 2e-5);  // the path normalization
  }
}

TEST_CASE("grid convergence of the non-band-limited pure-gauge field") {
  LatticeConnection ag =
      gauge_transform(flat_connection(2, torus_box(3)), bump_gauge(1));
  double c24 = cs_explicit(ag, 1, {24, 24, 24});
  double c32 = cs_explicit(ag, 1, {32, 32, 32});
  REQUIRE(std::abs(c24 - 2.0) <= 5e-6);
  REQUIRE(std::abs(c32 - c24) <= 5e-6);
}

TEST_CASE("gauge transformation laws") {
  std::vector<int> ns{16, 16, 16};
  LatticeConnection A = su2_wave_connection(0.4);
  Rng rng(19);
  Mat U = random_unitary(2, rng);
  LatticeConnection Ac = gauge_transform(A, constant_gauge(U, torus_box(3)));
  // constant maps conjugate pointwise and leave the functional unchanged
  VecD p = box_sample(A.box, rng);
  MatFrame fa, fc;
  A.coeff(p, fa);
  Ac.coeff(p, fc);
  for (int i = 0; i < 3; ++i)
    REQUIRE((fc[i] - Mat(Mat(U.adjoint()) * fa[i] * U)).norm() <= 1e-14);
  REQUIRE(std::abs(cs_explicit(Ac, 1, ns) - cs_explicit(A, 1, ns)) <= 1e-8);

  // abelian exponential against a commuting constant background
  LatticeConnection D = constant_connection(su2_alg(0, 0, 0.3), su2_alg(0, 0, 0.1),
                                            su2_alg(0, 0, 0.7));
  GaugeShiftReport s =
      gauge_shift_check(D, abelian_exponential_gauge(2), kPhi, ns);
  REQUIRE(std::abs(s.shift) <= 1e-6);
  REQUIRE(s.pass);

  // winding gauge against a wave background: the explicit shift stays the
  // frozen integer rho * degree here, and the path shift is level * degree
  GaugeShiftReport r = gauge_shift_check(A, bump_gauge(1), kPhi, {32, 32, 32});
  REQUIRE(r.nearest == 2);
  REQUIRE(r.defect <= 1e-3);
  REQUIRE(r.pass);
  double p0 = cs_path_functional(A, kPhi, {32, 32, 32});
  double p1 = cs_path_functional(gauge_transform(A, bump_gauge(1)), kPhi,
                                 {32, 32, 32});
  REQUIRE(std::abs((p1 - p0) - 1.0) <= 1e-3);
  InvariantPolynomial phi2{2};
  double q0 = cs_path_functional(A, phi2, {32, 32, 32});
  double q1 = cs_path_functional(gauge_transform(A, bump_gauge(1)), phi2,
                                 {32, 32, 32});
  REQUIRE(std::abs((q1 - q0) - 2.0) <= 1e-3);
}

TEST_CASE("cycle integration carries orientation and multiplicity") {
  FormField vol = constant_coordinate_form(3, {{{0, 1, 2}, 0.4}});
  std::vector<int> ns{4, 4, 4};
  REQUIRE(std::abs(cycle_integrate(vol, fundamental_cycle3(), ns) - 0.4) <= 1e-14);
  Cycle3 dbl{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}}};
  REQUIRE(std::abs(cycle_integrate(vol, dbl, ns) - 0.8) <= 1e-14);
  Cycle3 swap{{{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}};
  REQUIRE(std::abs(cycle_integrate(vol, swap, ns) + 0.4) <= 1e-14);
  REQUIRE(dbl.det() == 2);
  REQUIRE(swap.det() == -1);
}

TEST_CASE("functoriality under torus self-maps") {
  LatticeConnection A = abelian_helical_connection(0.8);
  std::vector<int> ns{16, 16, 16};
  double base = cs_explicit(A, 1, ns);
  LatticeConnection B = connection_pullback(A, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}});
  LatticeConnection C = connection_pullback(A, {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}});
  REQUIRE(std::abs(cs_explicit(B, 1, ns) - 2.0 * base) <= 1e-10);
  REQUIRE(std::abs(cs_explicit(C, 1, ns) + base) <= 1e-10);
}

TEST_CASE("C-field action: identity, integral shifts, rejection") {
  CField cf;
  cf.A = abelian_helical_connection(0.6);
  cf.c = constant_coordinate_form(3, {{{0, 1, 2}, 0.4}});
  std::vector<int> ns{16, 16, 16};

  CField same = cfield_act(trivial_cfield_gauge(2), cf, kPhi, ns);
  for (const Cycle3& cyc : five_cycles()) {
    double a = cfield_holonomy_exponent(cf, cyc, kPhi, ns);
    double b = cfield_holonomy_exponent(same, cyc, kPhi, ns);
    REQUIRE(std::abs(a - b) <= 1e-15);
  }

  // a character with curvature 2 * volume shifts the exponent by exactly the
  // period, which the circle defect cannot see
  CFieldGauge shift{flat_connection(2, torus_box(3)),
                    constant_coordinate_form(3, {{{0, 1, 2}, 2.0}})};
  CField acted = cfield_act(shift, cf, kPhi, ns);
  double d0 = cfield_holonomy_exponent(cf, fundamental_cycle3(), kPhi, ns);
  double d1 = cfield_holonomy_exponent(acted, fundamental_cycle3(), kPhi, ns);
  REQUIRE(std::abs((d1 - d0) - 2.0) <= 1e-12);
  auto rep = cfield_equivalence_check(cf, shift, five_cycles(), kPhi, ns);
  REQUIRE(rep.pass);
  REQUIRE(rep.worst <= 1e-12);

  CFieldGauge frac{flat_connection(2, torus_box(3)),
                   constant_coordinate_form(3, {{{0, 1, 2}, 0.5}})};
  REQUIRE_THROWS_WITH(cfield_act(frac, cf, kPhi, ns),
                      ContainsSubstring("non-integral"));
}

TEST_CASE("gauge-equivalent C-fields share holonomy on five cycles") {
  CField cf;
  cf.A = abelian_helical_connection(0.6);
  cf.c = constant_coordinate_form(3, {{{0, 1, 2}, 0.4}});
  CFieldGauge a{overlap_alpha(), zero_form(3)};
  auto rep1 = cfield_equivalence_check(cf, a, five_cycles(), kPhi, {16, 16, 16});
  REQUIRE(rep1.pass);
  REQUIRE(rep1.worst <= 1e-4);
  CFieldGauge b{gauge_transform(flat_connection(2, torus_box(3)), bump_gauge(1)),
                zero_form(3)};
  auto rep2 = cfield_equivalence_check(cf, b, five_cycles(), kPhi, {24, 24, 24});
  REQUIRE(rep2.pass);
  REQUIRE(rep2.worst <= 1e-4);
}
