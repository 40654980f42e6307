#pragma once

// Holonomy of degree p local data over p-cycles of a triangulated manifold
// subordinate to the cover.  Each oriented cell contributes an amplitude
// summed over descending face flags: the form of degree p-j is integrated
// over the depth-j face against the chart tuple collected along the flag,
// deepest chart first, and complete flags end in a transition angle at the
// vertex.  Flag signs multiply (-1)^(deletion position) per step; the depth
// weights follow mu_j = -mu_{j-1} (-1)^(p-j+1) from mu_0 = 1.

#include <complex>
#include <map>
#include <vector>

#include "dlg/cochain.hpp"
#include "dlg/forms.hpp"
#include "dlg/simplicial.hpp"

namespace dlg {

namespace detail {

struct AmplitudeContext {
  const DeligneCochain* xi;
  const SimplicialComplex* K;
  const Subordination* sub;
  QuadOpts quad;
  std::vector<double> mu;
  // integrals repeat across flags that reach one face through one tuple
  std::map<std::pair<VKey, VKey>, double> cache;

  int chart_of(const VKey& face) const {
    auto it = sub->find(face);
    require(it != sub->end(), "cell missing from the subordination");
    return it->second;
  }

  double form_integral(const VKey& face, const VKey& charts) {
    auto key = std::make_pair(face, charts);
    auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;
    int r = (int)face.size() - 1;
    FormField w = xi->omega_at(r, charts);
    double v = form_is_zero(w) ? 0.0 : integrate_form(w, K->geom(face), quad);
    cache.emplace(key, v);
    return v;
  }

  double descend(const VKey& face, double eps, const VKey& charts) {
    int p = xi->p;
    int j = p - ((int)face.size() - 1);
    double total = 0.0;
    if (face.size() == 1) {
      VecD v = K->geom(face).corner_pos(0);
      return mu[p] * eps * xi->g_at(charts, v).value();
    }
    total += mu[j] * eps * form_integral(face, charts);
    for (size_t m = 0; m < face.size(); ++m) {
      VKey child = key_drop(face, (int)m);
      VKey deeper{chart_of(child)};
      deeper.insert(deeper.end(), charts.begin(), charts.end());
      double flip = m % 2 == 0 ? 1.0 : -1.0;
      total += descend(child, eps * flip, deeper);
    }
    return total;
  }
};

}  // namespace detail

// amplitude of one p-cell taken with its stored (sorted key) orientation
inline double cell_amplitude(const DeligneCochain& xi, const SimplicialComplex& K,
                             const Subordination& sub, const VKey& cell,
                             const QuadOpts& quad = {}) {
  require((int)cell.size() == xi.p + 1, "cell dimension must equal the degree");
  detail::AmplitudeContext ctx{&xi, &K, &sub, quad, {}, {}};
  ctx.mu.assign(xi.p + 1, 1.0);
  for (int j = 1; j <= xi.p; ++j) {
    double s = (xi.p - j + 1) % 2 == 0 ? 1.0 : -1.0;
    ctx.mu[j] = -ctx.mu[j - 1] * s;
  }
  return ctx.descend(cell, 1.0, {ctx.chart_of(cell)});
}

// total angle sum(n_sigma Theta(sigma)) mod 1; the chain must be a cycle
inline Angle holonomy_angle(const DeligneCochain& xi, const SimplicialComplex& K,
                            const Subordination& sub, const Chain& cycle,
                            const QuadOpts& quad = {}) {
  require(K.boundary_checked(cycle).empty(), "holonomy needs a cycle");
  double total = 0.0;
  for (const auto& [key, coef] : cycle) {
    if (coef == 0) continue;
    total += double(coef) * cell_amplitude(xi, K, sub, key, quad);
  }
  return Angle::real(total);
}

inline std::complex<double> holonomy(const DeligneCochain& xi,
                                     const SimplicialComplex& K,
                                     const Subordination& sub, const Chain& cycle,
                                     const QuadOpts& quad = {}) {
  return holonomy_angle(xi, K, sub, cycle, quad).unit();
}

// worst group-law defect |hol(a+b) - hol(a) hol(b)| over all cycle pairs
inline double character_defect(const DeligneCochain& xi, const SimplicialComplex& K,
                               const Subordination& sub,
                               const std::vector<Chain>& cycles,
                               const QuadOpts& quad = {}) {
  std::vector<std::complex<double>> h;
  for (const Chain& c : cycles) h.push_back(holonomy(xi, K, sub, c, quad));
  double worst = 0.0;
  for (size_t a = 0; a < cycles.size(); ++a)
    for (size_t b = a; b < cycles.size(); ++b) {
      Chain joint = chain_sum(cycles[a], cycles[b]);
      std::complex<double> lhs = holonomy(xi, K, sub, joint, quad);
      worst = std::max(worst, std::abs(lhs - h[a] * h[b]));
    }
  return worst;
}

}  // namespace dlg
