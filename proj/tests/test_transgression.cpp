#include <catch2/catch_amalgamated.hpp>
#include <complex>

#include "dlg/character.hpp"
#include "dlg/meshes.hpp"

using namespace dlg;

namespace {

std::complex<double> phase(double t) { return std::polar(1.0, 2 * M_PI * t); }

Chain slab_chain(const SimplicialComplex& K, double hi) {
  Chain out;
  for (const auto& [key, coef] : K.fundamental) {
    bool in = true;
    for (const VecD& c : K.geom(key).corners) in = in && c[0] <= hi + 1e-9;
    if (in) chain_add(out, key, coef);
  }
  return out;
}

}  // namespace

TEST_CASE("flat product data transgresses to flat phases") {
  BoxTorusCover base(2);
  ProductCover P(&base);
  SimplicialComplex K = torus_mesh(2, 3);
  Subordination sub = greedy_subordination(K, base);
  Rng rng(5);
  for (double b : {0.0, 0.25, 1.0 / 3, 0.5}) {
    DeligneCochain xi = flat_3form(P, b);
    DifferentialCharacter chi = transgress_over_circle(xi);
    REQUIRE(chi.p == 2);
    REQUIRE(chi.cover == &base);
    std::complex<double> h = chi.hol(K, sub, K.fundamental);
    REQUIRE(std::abs(h - phase(b)) < 1e-9);
    if (!form_is_zero(chi.curvature)) {
      for (int s = 0; s < 10; ++s) {
        VecD x = base.ambient_uniform(rng);
        REQUIRE(std::abs(chi.curvature.eval(x, base.tangent_frame(x))) < 1e-12);
      }
    }
  }
  // the zero class gives the constant character
  DifferentialCharacter triv = transgress_over_circle(flat_3form(P, 0.0));
  REQUIRE(std::abs(triv.hol(K, sub, K.fundamental) - 1.0) < 1e-12);
  REQUIRE(character_group_defect(triv, K, sub, {K.fundamental, Chain{}}) < 1e-12);
}

TEST_CASE("volume tower transgresses to the mirrored base tower") {
  BoxTorusCover base(3);
  ProductCover P(&base);
  for (long long b : {1LL, 2LL}) {
    DeligneCochain xi = torus_volume_cocycle(P, b);
    DifferentialCharacter chi = transgress_over_circle(xi);
    DeligneCochain mirror = torus_volume_cocycle(base, -b);
    for (double c : {0.37, 0.52}) {
      SimplicialComplex Z = subtorus_mesh(3, {1, 2}, {c}, 3);
      Subordination sz = greedy_subordination(Z, base);
      std::complex<double> h = chi.hol(Z, sz, Z.fundamental);
      CAPTURE(b, c, h.real(), h.imag());
      REQUIRE(std::abs(h - phase(-double(b) * c)) < 1e-9);
      REQUIRE(std::abs(h - holonomy(mirror, Z, sz, Z.fundamental)) < 1e-9);
    }
    Rng rng(7);
    for (int s = 0; s < 10; ++s) {
      VecD x = base.ambient_uniform(rng);
      REQUIRE(std::abs(chi.curvature.eval(x, base.tangent_frame(x)) + double(b)) <
              1e-10);
    }
  }
}

TEST_CASE("transgressed characters obey the curvature law") {
  BoxTorusCover base(3);
  ProductCover P(&base);
  DeligneCochain xi = torus_volume_cocycle(P, 1);
  DifferentialCharacter chi = transgress_over_circle(xi);
  SimplicialComplex K = torus_mesh(3, 9);
  Subordination sub = greedy_subordination(K, base);
  Chain slab = slab_chain(K, 1.0 / 3);
  REQUIRE(!slab.empty());
  REQUIRE(character_property_defect(chi, K, sub, slab) < 1e-9);

  SimplicialComplex Z1 = subtorus_mesh(3, {1, 2}, {0.37}, 3);
  SimplicialComplex Z2 = subtorus_mesh(3, {1, 2}, {0.52}, 3);
  Subordination s1 = greedy_subordination(Z1, base);
  REQUIRE(character_group_defect(chi, Z1, s1, {Z1.fundamental, Chain{}}) < 1e-9);
  // homologous loops differ exactly by the enclosed curvature
  std::complex<double> r = chi.hol(Z1, s1, Z1.fundamental) *
                           std::conj(chi.hol(Z2, greedy_subordination(Z2, base),
                                             Z2.fundamental));
  REQUIRE(std::abs(r - phase(-(0.37 - 0.52))) < 1e-9);
}

TEST_CASE("curvature diagram commutes at sample points") {
  BoxTorusCover base(3);
  ProductCover P(&base);
  for (long long b : {0LL, 2LL}) {
    DeligneCochain xi = torus_volume_cocycle(P, b);
    DifferentialCharacter chi = transgress_over_circle(xi);
    FormField kap = curvature(xi).form;
    Rng rng(11 + (std::uint64_t)b);
    for (int s = 0; s < 100; ++s) {
      VecD x = base.ambient_uniform(rng);
      std::vector<VecD> tans(3, VecD(3, 0.0));
      for (VecD& t : tans)
        for (double& v : t) v = rng.uniform(-1.0, 1.0);
      double lhs = form_is_zero(chi.curvature) ? 0.0 : chi.curvature.eval(x, tans);
      // independent fiber quadrature: offset trapezoid grid, boundary sign
      double rhs = 0.0;
      if (!form_is_zero(kap)) {
        std::vector<VecD> lift(4, VecD(4, 0.0));
        lift[0][0] = 1.0;
        for (int m = 0; m < 3; ++m)
          for (int k = 0; k < 3; ++k) lift[m + 1][k + 1] = tans[m][k];
        VecD p(4);
        std::copy(x.begin(), x.end(), p.begin() + 1);
        int nodes = 100;
        for (int k = 0; k < nodes; ++k) {
          p[0] = (k + 0.5) / nodes;
          rhs -= kap.eval(p, lift);
        }
        rhs /= nodes;
      }
      REQUIRE(std::abs(lhs - rhs) < 1e-6);
    }
  }
}

TEST_CASE("class slant matches the transgressed class") {
  BoxTorusCover base(3);
  ProductCover P(&base);
  long long b = 1;
  DeligneCochain xi = torus_volume_cocycle(P, b);
  CharacteristicClass cls = characteristic_class(xi);

  auto comp = [&](const std::vector<int>& dg) {
    return P.chart_id(dg[0], dg[1] + 3 * dg[2] + 9 * dg[3]);
  };
  double defect = 0.0;
  REQUIRE(pair_class_with_cycle(cls, torus_nerve_cycle(4, comp), &defect) == b);
  REQUIRE(defect < 1e-9);

  long long paired = 0;
  double sd = 0.0;
  for (const auto& [key, coef] : torus_nerve_cycle(3)) {
    SlantResult r = circle_slant(cls, P, key);
    paired += coef * r.value;
    sd = std::max(sd, r.defect);
  }
  REQUIRE(paired == -b);
  REQUIRE(sd < 1e-9);

  // the slant is a cocycle on the base nerve: alternating sums over sampled
  // five chart tuples vanish
  auto quads = base.nerve_tuples(4);
  Rng rng(3);
  for (int trial = 0; trial < 12 && !quads.empty(); ++trial) {
    const VKey& t = quads[rng.next_int((int)quads.size())];
    long long alt = 0;
    for (int m = 0; m < (int)t.size(); ++m) {
      SlantResult r = circle_slant(cls, P, key_drop(t, m));
      alt += (m % 2 == 0 ? 1 : -1) * r.value;
    }
    REQUIRE(alt == 0);
  }
}

TEST_CASE("coboundary shifts do not move the transgressed character") {
  BoxTorusCover base(3);
  ProductCover P(&base);
  DeligneCochain xi = torus_volume_cocycle(P, 1);
  SimplicialComplex Z = subtorus_mesh(3, {1, 2}, {0.37}, 3);
  Subordination sz = greedy_subordination(Z, base);
  TransgressOpts opts;
  opts.quad = QuadOpts{3, 1e-9, 6};  // trig shifts need quadrature below the bound
  DifferentialCharacter chi = transgress_over_circle(xi, opts);
  std::complex<double> h0 = chi.hol(Z, sz, Z.fundamental);
  for (std::uint64_t s = 61; s < 81; ++s) {
    DeligneCochain shifted = add_cochains(xi, coboundary(random_potential(3, P, s)));
    DifferentialCharacter chs = transgress_over_circle(shifted, opts);
    std::complex<double> h = chs.hol(Z, sz, Z.fundamental);
    CAPTURE(s, std::abs(h - h0));
    REQUIRE(std::abs(h - h0) < 1e-6);
  }
}

TEST_CASE("transgression rejects non-product covers") {
  BoxTorusCover flat4(4);
  DeligneCochain xi = torus_volume_cocycle(flat4, 1);
  REQUIRE(xi.p == 3);
  REQUIRE_THROWS_AS(transgress_over_circle(xi), Failure);
  // degree mismatch is refused before any cover inspection
  BoxTorusCover t3(3);
  REQUIRE_THROWS_AS(transgress_over_circle(torus_volume_cocycle(t3, 1)), Failure);
}
