// Local cochain data: cocycle residuals, coboundaries, curvature and the
// integer characteristic class, exercised on sphere and torus covers.

#include <catch2/catch_amalgamated.hpp>

#include "dlg/cochain.hpp"
#include "dlg/meshes.hpp"

using namespace dlg;

TEST_CASE("volume tower closes on box torus covers") {
  for (int d : {2, 3}) {
    BoxTorusCover U(d);
    for (long long b : {1LL, 2LL}) {
      CocycleCheckOpts opts;
      opts.max_tuples = 150;
      CocycleReport rep;
      bool ok = is_cocycle(torus_volume_cocycle(U, b), 1e-9, opts, &rep);
      CAPTURE(d, b, rep.max_residual());
      REQUIRE(ok);
    }
  }
  BoxTorusCover U4(4);
  CocycleCheckOpts opts;
  opts.max_tuples = 40;
  opts.samples = 3;
  CocycleReport rep;
  bool ok = is_cocycle(torus_volume_cocycle(U4, 1), 1e-9, opts, &rep);
  CAPTURE(rep.max_residual());
  REQUIRE(ok);

  BoxTorusCover U2(2);
  CocycleReport zero_rep = deligne_differential(torus_volume_cocycle(U2, 0));
  REQUIRE(zero_rep.max_residual() == 0.0);
}

TEST_CASE("monopole data closes on both sphere covers") {
  SphereCover two = SphereCover::two_chart();
  for (int n : {0, 1, 2, 3}) {
    CocycleReport rep;
    bool ok = is_cocycle(monopole(two, n), 1e-9, {}, &rep);
    CAPTURE(n, rep.max_residual());
    REQUIRE(ok);
  }

  SphereCover six = SphereCover::six_chart();
  CoverRefinement R{&six, &two, {0, 1, 0, 0, 0, 0}};
  Rng rng(5);
  R.verify(20, rng);
  CocycleReport rep;
  bool ok = is_cocycle(pullback_cochain(R, monopole(two, 2)), 1e-9, {}, &rep);
  CAPTURE(rep.max_residual());
  REQUIRE(ok);
}

TEST_CASE("planted defects are caught by the right rung") {
  SphereCover two = SphereCover::two_chart();
  DeligneCochain mono = monopole(two, 1);

  // constant 1-form on the north chart breaks the connection rung
  FormField bump{1, [](const VecD&, const std::vector<VecD>& t) { return 0.01 * t[0][0]; },
                 nullptr};
  CocycleReport rep;
  REQUIRE_FALSE(is_cocycle(with_form_bump(mono, 1, {0}, bump), 1e-4, {}, &rep));
  REQUIRE(rep.rungs[0].r == 1);
  REQUIRE(rep.rungs[0].max_residual > 1e-3);

  // constant 2-form on one torus chart breaks the top rung
  BoxTorusCover T2(2);
  FormField bump2{2, [](const VecD&, const std::vector<VecD>& t) {
                    return 0.02 * coordinate_minor(t, {0, 1});
                  },
                  nullptr};
  DeligneCochain bad = with_form_bump(flat_gerbe(T2, 0.5), 2, {3}, bump2);
  CocycleReport rep2;
  REQUIRE_FALSE(is_cocycle(bad, 1e-4, {}, &rep2));
  REQUIRE(rep2.rungs[0].r == 2);

  // locally constant shift of one transition angle only trips integrality
  SphereCover six = SphereCover::six_chart();
  CoverRefinement R{&six, &two, {0, 1, 0, 0, 0, 0}};
  DeligneCochain fine = pullback_cochain(R, monopole(two, 1));
  AngleProvider old_g = fine.g;
  DeligneCochain base = fine;
  fine.g = [base, old_g](const VKey& t, const VecD& x) {
    Angle a = base.g_at(t, x);
    if (t == VKey{2, 3}) a = a + Angle::real(0.3);
    return a;
  };
  CocycleReport rep3;
  REQUIRE_FALSE(is_cocycle(fine, 1e-4, {}, &rep3));
  for (const auto& rr : rep3.rungs) {
    if (rr.r == 0) REQUIRE(rr.max_residual > 0.25);
    if (rr.r == 1) REQUIRE(rr.max_residual < 1e-6);
  }
}

TEST_CASE("coboundaries of arbitrary potentials close") {
  CocycleCheckOpts opts;
  opts.samples = 3;
  opts.tangent_sets = 1;
  opts.max_tuples = 60;

  BoxTorusCover T2(2);
  for (int k = 0; k < 50; ++k) {
    CocycleReport rep;
    bool ok = is_cocycle(coboundary(random_potential(1, T2, 1000 + k)), 1e-9, opts, &rep);
    CAPTURE(k, rep.max_residual());
    REQUIRE(ok);
  }

  BoxTorusCover T3(3);
  for (int k = 0; k < 35; ++k) {
    CocycleReport rep;
    bool ok = is_cocycle(coboundary(random_potential(2, T3, 2000 + k)), 1e-9, opts, &rep);
    CAPTURE(k, rep.max_residual());
    REQUIRE(ok);
  }

  BoxTorusCover T4(4);
  CocycleCheckOpts small = opts;
  small.max_tuples = 25;
  small.samples = 2;
  for (int k = 0; k < 5; ++k) {
    CocycleReport rep;
    bool ok = is_cocycle(coboundary(random_potential(3, T4, 3000 + k)), 1e-9, small, &rep);
    CAPTURE(k, rep.max_residual());
    REQUIRE(ok);
  }

  SphereCover six = SphereCover::six_chart();
  for (int k = 0; k < 10; ++k) {
    CocycleReport rep;
    bool ok = is_cocycle(coboundary(random_potential(1, six, 4000 + k)), 1e-9, opts, &rep);
    CAPTURE(k, rep.max_residual());
    REQUIRE(ok);
  }
}

TEST_CASE("curvature is global and integrates to the charge") {
  SphereCover two = SphereCover::two_chart();
  for (int n : {1, 2, 3}) {
    Curvature c = curvature(monopole(two, n));
    REQUIRE(c.max_mismatch < 1e-12);
    OctaMesh M = sphere_octa_mesh(2);
    double flux = integrate_chain(c.form, M.mesh, M.mesh.fundamental);
    CAPTURE(n, flux);
    REQUIRE(flux == Catch::Approx(double(n)).margin(1e-7));
  }

  BoxTorusCover T2(2);
  Curvature c2 = curvature(torus_volume_cocycle(T2, 3));
  REQUIRE(c2.max_mismatch < 1e-12);
  SimplicialComplex K2 = torus_mesh(2, 3);
  REQUIRE(integrate_chain(c2.form, K2, K2.fundamental) == Catch::Approx(3.0).margin(1e-10));

  BoxTorusCover T3(3);
  Curvature c3 = curvature(torus_volume_cocycle(T3, 2));
  REQUIRE(c3.max_mismatch < 1e-12);
  SimplicialComplex K3 = torus_mesh(3, 3);
  REQUIRE(integrate_chain(c3.form, K3, K3.fundamental) == Catch::Approx(2.0).margin(1e-10));

  // top-degree data has identically vanishing curvature
  Curvature cf = curvature(flat_3form(T3, 0.25));
  REQUIRE(cf.max_mismatch == 0.0);
}

TEST_CASE("characteristic class counts the monopole charge") {
  SphereCover two = SphereCover::two_chart();
  SphereCover six = SphereCover::six_chart();
  CoverRefinement R{&six, &two, {0, 1, 0, 0, 0, 0}};
  Chain cyc = sphere_nerve_2cycle();

  for (long long n : {0LL, 1LL, 2LL, 3LL}) {
    double defect = 0.0;
    DeligneCochain xi = pullback_cochain(R, monopole(two, (int)n));
    long long got = pair_class_with_cycle(characteristic_class(xi), cyc, &defect);
    CAPTURE(n, got, defect);
    REQUIRE(defect < 1e-8);
    REQUIRE(got == n);
  }

  // additivity of classes under cochain addition
  DeligneCochain a = pullback_cochain(R, monopole(two, 2));
  DeligneCochain b = pullback_cochain(R, monopole(two, 3));
  REQUIRE(pair_class_with_cycle(characteristic_class(add_cochains(a, b)), cyc) == 5);

  // coboundaries carry no class
  for (std::uint64_t s : {11ULL, 12ULL, 13ULL}) {
    double defect = 0.0;
    long long got = pair_class_with_cycle(
        characteristic_class(coboundary(random_potential(1, six, s))), cyc, &defect);
    CAPTURE(s, defect);
    REQUIRE(defect < 1e-6);
    REQUIRE(got == 0);
  }

  // the pairing does not depend on which real branches were picked
  DeligneCochain xi = pullback_cochain(R, monopole(two, 3));
  for (std::uint64_t s : {1ULL, 2ULL, 3ULL}) {
    BranchRule rule;
    rule.offset_seed = s;
    REQUIRE(pair_class_with_cycle(characteristic_class(xi, rule), cyc) == 3);
  }
}

TEST_CASE("characteristic class reads the volume period") {
  BoxTorusCover T2(2);
  Chain cyc2 = torus_nerve_cycle(2);
  for (long long b : {0LL, 1LL, 2LL, -1LL}) {
    double defect = 0.0;
    long long got = pair_class_with_cycle(
        characteristic_class(torus_volume_cocycle(T2, b)), cyc2, &defect);
    CAPTURE(b, got, defect);
    REQUIRE(defect < 1e-8);
    REQUIRE(got == b);
  }

  BoxTorusCover T3(3);
  Chain cyc3 = torus_nerve_cycle(3);
  double defect = 0.0;
  long long got = pair_class_with_cycle(
      characteristic_class(torus_volume_cocycle(T3, 1)), cyc3, &defect);
  CAPTURE(got, defect);
  REQUIRE(defect < 1e-8);
  REQUIRE(got == 1);

  BranchRule rule;
  rule.offset_seed = 7;
  REQUIRE(pair_class_with_cycle(
              characteristic_class(torus_volume_cocycle(T3, 1), rule), cyc3) == 1);
}

TEST_CASE("cochain arithmetic cancels") {
  BoxTorusCover T2(2);
  DeligneCochain xi = torus_volume_cocycle(T2, 2);
  DeligneCochain zero = add_cochains(xi, negate_cochain(xi));
  CocycleReport rep = deligne_differential(zero);
  REQUIRE(rep.max_residual() < 1e-12);
  REQUIRE(curvature(zero).max_mismatch < 1e-12);
  REQUIRE(pair_class_with_cycle(characteristic_class(zero), torus_nerve_cycle(2)) == 0);

  // alternation of accessors
  SphereCover two = SphereCover::two_chart();
  DeligneCochain mono = monopole(two, 1);
  VecD pt{1.0, 0.0, 0.0};
  VecD probe = normalize3({0.3, 0.4, 0.1});
  REQUIRE((mono.g_at({1, 0}, probe) + mono.g_at({0, 1}, probe)).defect() < 1e-12);
  REQUIRE(mono.g_at({0, 0}, probe).value() == 0.0);
  FormField w = mono.omega_at(1, {0});
  REQUIRE(!form_is_zero(w));
  REQUIRE(form_is_zero(mono.omega_at(1, {2, 2})));
}
