#pragma once

// Differential characters and integration over the circle factor. A character
// is the (holonomy oracle, curvature form) view of a degree p class; that
// pair determines the class, so equality of characters is what downstream
// consumers check. Transgression consumes degree 3 data on a product cover
// S^1 x N and produces the degree 2 character on N whose holonomy over a
// base cycle is the input holonomy over the prism product of the cycle with
// the circle. The prism operator anticommutes with the boundary once the
// circle closes, so the output curvature compatible with the character
// property is MINUS the fiber average of the input curvature contracted with
// the circle direction in the first slot.

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "dlg/cochain.hpp"
#include "dlg/holonomy.hpp"

namespace dlg {

struct DifferentialCharacter {
  int p = 0;
  const Cover* cover = nullptr;  // cycles fed to hol live on this cover
  std::function<std::complex<double>(const SimplicialComplex&, const Subordination&,
                                     const Chain&)>
      hol;
  FormField curvature;  // degree p+1, ambient evaluation on the base
};

// the character carried by explicit local data
inline DifferentialCharacter cochain_character(const DeligneCochain& xi,
                                               const QuadOpts& quad = {}) {
  DifferentialCharacter chi;
  chi.p = xi.p;
  chi.cover = xi.cover;
  chi.curvature = curvature(xi).form;
  chi.hol = [xi, quad](const SimplicialComplex& K, const Subordination& sub,
                       const Chain& z) { return holonomy(xi, K, sub, z, quad); };
  return chi;
}

// |hol(boundary w) - exp(2 pi i integral_w curvature)| for a (p+1)-chain w
inline double character_property_defect(const DifferentialCharacter& chi,
                                        const SimplicialComplex& K,
                                        const Subordination& sub, const Chain& w,
                                        const QuadOpts& quad = {}) {
  std::complex<double> lhs = chi.hol(K, sub, boundary(w));
  double flux = form_is_zero(chi.curvature) ? 0.0
                                            : integrate_chain(chi.curvature, K, w, quad);
  return std::abs(lhs - Angle::real(flux).unit());
}

// worst |hol(a+b) - hol(a) hol(b)| over pairs, unions included
inline double character_group_defect(const DifferentialCharacter& chi,
                                     const SimplicialComplex& K,
                                     const Subordination& sub,
                                     const std::vector<Chain>& cycles) {
  std::vector<std::complex<double>> h;
  for (const Chain& c : cycles) h.push_back(chi.hol(K, sub, c));
  double worst = 0.0;
  for (size_t a = 0; a < cycles.size(); ++a)
    for (size_t b = a; b < cycles.size(); ++b) {
      std::complex<double> lhs = chi.hol(K, sub, chain_sum(cycles[a], cycles[b]));
      worst = std::max(worst, std::abs(lhs - h[a] * h[b]));
    }
  return worst;
}

// degree drop by one: average the form over the circle fiber with the fiber
// direction contracted into the first slot; plain node average is the
// trapezoid rule here because the integrand is periodic
inline FormField fiber_average(const FormField& w, int nodes = 48) {
  if (form_is_zero(w)) return zero_form(w.degree - 1);
  FormField out;
  out.degree = w.degree - 1;
  FormEval base = w.eval;
  out.eval = [base, nodes](const VecD& x, const std::vector<VecD>& tans) {
    std::vector<VecD> lift(tans.size() + 1, VecD(x.size() + 1, 0.0));
    lift[0][0] = 1.0;
    for (size_t m = 0; m < tans.size(); ++m)
      for (size_t k = 0; k < tans[m].size(); ++k) lift[m + 1][k + 1] = tans[m][k];
    double acc = 0.0;
    VecD p(x.size() + 1);
    std::copy(x.begin(), x.end(), p.begin() + 1);
    for (int s = 0; s < nodes; ++s) {
      p[0] = double(s) / nodes;
      acc += base(p, lift);
    }
    return acc / nodes;
  };
  return out;
}

struct TransgressOpts {
  int n_circle = 9;      // prism segments per fiber; each must fit in an arc
  int fiber_nodes = 48;  // trapezoid nodes for the curvature average
  QuadOpts quad;
  CocycleCheckOpts curv;  // finite difference step for the input curvature
};

inline DifferentialCharacter transgress_over_circle(const DeligneCochain& xi,
                                                    const TransgressOpts& opts = {}) {
  require(xi.p == 3, "transgression consumes degree 3 data");
  const auto* PU = dynamic_cast<const ProductCover*>(xi.cover);
  require(PU != nullptr, "transgression needs a circle product cover");
  DifferentialCharacter chi;
  chi.p = 2;
  chi.cover = PU->base();
  chi.curvature =
      scaled_form(-1.0, fiber_average(curvature(xi, opts.curv).form, opts.fiber_nodes));
  // capture by value so the character may outlive the caller's cochain
  chi.hol = [xi, PU, opts](const SimplicialComplex& K, const Subordination&,
                           const Chain& sigma) {
    // the base assignment does not constrain the prisms; rebuild greedily
    SimplicialComplex k = restrict_to_chain(K, sigma);
    SimplicialComplex P = product_with_circle(k, opts.n_circle);
    Subordination ps = greedy_subordination(P, *PU);
    return holonomy(xi, P, ps, P.fundamental, opts.quad);
  };
  return chi;
}

// Integer slant of the nerve class along the circle factor: evaluate the
// class on the shuffle prisms of the arc edge cycle [01]+[12]-[02] with the
// base tuple, signs (-1)^k per shuffle cut. Matches the transgressed
// character: the product volume class with coefficient b slants to the base
// class pairing to -b, the same sign the prism boundary identity forces on
// the output curvature.
struct SlantResult {
  long long value = 0;
  double defect = 0.0;  // worst integrality defect among the prisms read
};

inline SlantResult circle_slant(const CharacteristicClass& cls,
                                const ProductCover& PU, const VKey& base_tuple) {
  struct Edge {
    int lo, hi;
    long long coef;
  };
  static const Edge kEdges[3] = {{0, 1, 1}, {1, 2, 1}, {0, 2, -1}};
  int q = (int)base_tuple.size() - 1;
  SlantResult out;
  for (const Edge& e : kEdges)
    for (int k = 0; k <= q; ++k) {
      VKey t;
      for (int j = 0; j <= k; ++j) t.push_back(PU.chart_id(e.lo, base_tuple[j]));
      for (int j = k; j <= q; ++j) t.push_back(PU.chart_id(e.hi, base_tuple[j]));
      auto [v, d] = cls.at(t);
      out.defect = std::max(out.defect, d);
      long long s = k % 2 == 0 ? 1 : -1;
      out.value += e.coef * s * v;
    }
  return out;
}

}  // namespace dlg
