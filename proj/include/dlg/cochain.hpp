#pragma once

// Degree-p Deligne cochains on a covered manifold: a circle-valued Cech
// cochain g of degree p together with form towers omega^1..omega^p, with
// omega^r attached to (p-r+1)-element chart tuples.  Components are closures
// keyed by sorted tuples; unsorted lookups resolve through alternation and
// repeated indices read as zero.
//
// Conventions fixed here and relied on throughout:
//   (delta c)_{i0..iq+1} = sum_m (-1)^m c_{..drop m..}
//   rung r:   delta omega^r = (-1)^r d omega^{r-1}   with omega^0 = angle(g)
//   coboundary of a potential (h, eta^1..eta^{p-1}):
//       g = delta h,  omega^r = delta eta^r + (-1)^r d eta^{r-1},
//       omega^p = (-1)^p d eta^{p-1}

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dlg/angle.hpp"
#include "dlg/base.hpp"
#include "dlg/forms.hpp"
#include "dlg/geometry.hpp"
#include "dlg/simplicial.hpp"

namespace dlg {

using AngleProvider = std::function<Angle(const VKey&, const VecD&)>;
using FormProvider = std::function<FormField(const VKey&)>;

struct DeligneCochain {
  int p = 1;
  const Cover* cover = nullptr;
  AngleProvider g;                   // sorted (p+1)-tuples
  FormProvider g_d;                  // optional analytic d(angle g), degree 1
  std::vector<FormProvider> omega;   // omega[r-1]: r-forms on sorted (p-r+1)-tuples

  // alternation-aware accessors; any index order, repeats give zero
  Angle g_at(VKey tuple, const VecD& amb) const {
    int sign = sort_key_sign(tuple);
    if (sign == 0 || !g) return Angle();
    Angle a = g(tuple, amb);
    return sign > 0 ? a : -a;
  }

  FormField g_d_at(VKey tuple) const {
    int sign = sort_key_sign(tuple);
    if (sign == 0 || !g_d) return zero_form(1);
    FormField f = g_d(tuple);
    f.degree = 1;
    return sign > 0 ? f : scaled_form(-1.0, f);
  }

  FormField omega_at(int r, VKey tuple) const {
    require(r >= 1 && r <= p, "form index outside cochain tower");
    int sign = sort_key_sign(tuple);
    const FormProvider& prov = omega[r - 1];
    if (sign == 0 || !prov) return zero_form(r);
    FormField f = prov(tuple);
    f.degree = r;
    return sign > 0 ? f : scaled_form(-1.0, f);
  }
};

inline DeligneCochain make_cochain(int p, const Cover& U) {
  require(p >= 1 && p <= 3, "supported degrees are 1, 2, 3");
  DeligneCochain xi;
  xi.p = p;
  xi.cover = &U;
  xi.omega.assign(p, nullptr);
  return xi;
}

// ---------------------------------------------------------------- arithmetic

inline DeligneCochain add_cochains(const DeligneCochain& a, const DeligneCochain& b) {
  require(a.p == b.p && a.cover == b.cover, "cochain shapes differ");
  DeligneCochain out = make_cochain(a.p, *a.cover);
  AngleProvider ga = a.g, gb = b.g;
  out.g = [ga, gb](const VKey& t, const VecD& x) {
    Angle s;
    if (ga) s = s + ga(t, x);
    if (gb) s = s + gb(t, x);
    return s;
  };
  bool da_ok = !a.g || a.g_d, db_ok = !b.g || b.g_d;
  if (da_ok && db_ok) {
    FormProvider pa = a.g_d, pb = b.g_d;
    out.g_d = [pa, pb](const VKey& t) {
      return sum_forms(1, {{1.0, pa ? pa(t) : zero_form(1)},
                           {1.0, pb ? pb(t) : zero_form(1)}});
    };
  }
  for (int r = 1; r <= a.p; ++r) {
    FormProvider pa = a.omega[r - 1], pb = b.omega[r - 1];
    out.omega[r - 1] = [pa, pb, r](const VKey& t) {
      return sum_forms(r, {{1.0, pa ? pa(t) : zero_form(r)},
                           {1.0, pb ? pb(t) : zero_form(r)}});
    };
  }
  return out;
}

inline DeligneCochain scale_cochain(long long n, const DeligneCochain& a) {
  DeligneCochain out = make_cochain(a.p, *a.cover);
  AngleProvider ga = a.g;
  if (ga)
    out.g = [ga, n](const VKey& t, const VecD& x) { return ga(t, x).scaled(n); };
  if (a.g_d) {
    FormProvider pd = a.g_d;
    out.g_d = [pd, n](const VKey& t) { return scaled_form(double(n), pd(t)); };
  }
  for (int r = 1; r <= a.p; ++r) {
    FormProvider pa = a.omega[r - 1];
    if (pa)
      out.omega[r - 1] = [pa, n](const VKey& t) {
        return scaled_form(double(n), pa(t));
      };
  }
  return out;
}

inline DeligneCochain negate_cochain(const DeligneCochain& a) {
  return scale_cochain(-1, a);
}

// add a form on one specific tuple; used to build deliberate defects
inline DeligneCochain with_form_bump(const DeligneCochain& a, int r, VKey tuple,
                                     const FormField& extra) {
  require(sort_key_sign(tuple) > 0, "bump tuple must be sorted");
  DeligneCochain out = a;
  FormProvider pa = a.omega[r - 1];
  out.omega[r - 1] = [pa, tuple, extra, r](const VKey& t) {
    FormField base = pa ? pa(t) : zero_form(r);
    if (t != tuple) return base;
    return sum_forms(r, {{1.0, base}, {1.0, extra}});
  };
  return out;
}

// pull a cochain back along a refinement of covers; component on a fine
// tuple is the coarse component on the mapped tuple, with alternation
inline DeligneCochain pullback_cochain(const CoverRefinement& R,
                                       const DeligneCochain& xi) {
  require(xi.cover == R.coarse, "cochain does not live on the coarse cover");
  DeligneCochain out = make_cochain(xi.p, *R.fine);
  std::vector<int> cmap = R.chart_map;
  DeligneCochain base = xi;
  out.g = [base, cmap](const VKey& t, const VecD& x) {
    VKey mt;
    for (int c : t) mt.push_back(cmap[c]);
    return base.g_at(mt, x);
  };
  if (xi.g_d)
    out.g_d = [base, cmap](const VKey& t) {
      VKey mt;
      for (int c : t) mt.push_back(cmap[c]);
      return base.g_d_at(mt);
    };
  for (int r = 1; r <= xi.p; ++r)
    out.omega[r - 1] = [base, cmap, r](const VKey& t) {
      VKey mt;
      for (int c : t) mt.push_back(cmap[c]);
      return base.omega_at(r, mt);
    };
  return out;
}

// ------------------------------------------------------------------ builtins

// charge-n connection on the two-cap sphere cover: transition n*phi on the
// equatorial band and the standard chart potentials with analytic curvature
inline DeligneCochain monopole(const SphereCover& U, int n) {
  DeligneCochain xi = make_cochain(1, U);
  xi.g = [n](const VKey& t, const VecD& p) {
    require(t == VKey{0, 1}, "two-cap transition tuple");
    return Angle::real(n * std::atan2(p[1], p[0]) / (2 * M_PI));
  };
  xi.g_d = [n](const VKey&) {
    FormField f{1, nullptr, nullptr};
    f.eval = [n](const VecD& p, const std::vector<VecD>& tans) {
      double q = p[0] * p[0] + p[1] * p[1];
      return n / (2 * M_PI) * (p[0] * tans[0][1] - p[1] * tans[0][0]) / q;
    };
    f.d_eval = [](const VecD&, const std::vector<VecD>&) { return 0.0; };
    return f;
  };
  const SphereCover* cov = &U;
  xi.omega[0] = [cov, n](const VKey& t) -> FormField {
    int chart = t.at(0);
    double sgn = chart == 0 ? 1.0 : -1.0;
    FormField f{1, nullptr, nullptr};
    f.eval = [cov, n, chart, sgn](const VecD& p, const std::vector<VecD>& tans) {
      VecD x = cov->to_chart(chart, p);
      JacRows rows = cov->chart_jacobian(chart, p);
      double tx = dot(rows[0], tans[0]), ty = dot(rows[1], tans[0]);
      double r2 = x[0] * x[0] + x[1] * x[1];
      return sgn * n / (2 * M_PI) * (x[0] * ty - x[1] * tx) / (1 + r2);
    };
    f.d_eval = [cov, n, chart, sgn](const VecD& p, const std::vector<VecD>& tans) {
      VecD x = cov->to_chart(chart, p);
      JacRows rows = cov->chart_jacobian(chart, p);
      double ax = dot(rows[0], tans[0]), ay = dot(rows[1], tans[0]);
      double bx = dot(rows[0], tans[1]), by = dot(rows[1], tans[1]);
      double r2 = x[0] * x[0] + x[1] * x[1];
      return sgn * n / M_PI * (ax * by - ay * bx) / ((1 + r2) * (1 + r2));
    };
    return f;
  };
  return xi;
}

// top-degree cochain whose only datum is a constant multiple of the volume
// form; a cocycle on any cover, with vanishing transitions
inline DeligneCochain flat_volume_cochain(const Cover& U, double b) {
  int p = U.dim();
  DeligneCochain xi = make_cochain(p, U);
  int d = U.ambient_dim();
  std::vector<int> axes;
  for (int k = 0; k < d; ++k) axes.push_back(k);
  xi.omega[p - 1] = [b, axes, p](const VKey&) -> FormField {
    FormField f{p, nullptr, nullptr};
    if (b == 0.0) return f;
    f.eval = [b, axes](const VecD&, const std::vector<VecD>& tans) {
      return b * coordinate_minor(tans, axes);
    };
    f.d_eval = [](const VecD&, const std::vector<VecD>&) { return 0.0; };
    return f;
  };
  return xi;
}

inline DeligneCochain flat_gerbe(const Cover& U, double b) {
  require(U.dim() == 2, "flat_gerbe lives on a surface");
  return flat_volume_cochain(U, b);
}

inline DeligneCochain flat_3form(const Cover& U, double c) {
  require(U.dim() == 3, "flat_3form lives on a threefold");
  return flat_volume_cochain(U, c);
}

// degree (d-1) cocycle on a torus-like cover with integer chart shifts whose
// curvature is b times the volume form.  Components follow the telescoping
// tower: level q attaches to coordinate q with the product of the shift
// integers of coordinates 1..q read along consecutive pairs of the tuple.
inline DeligneCochain torus_volume_cocycle(const Cover& U, long long b) {
  int d = U.dim();
  require(d >= 2 && d <= 4, "tower supports dimensions 2..4");
  int p = d - 1;
  DeligneCochain xi = make_cochain(p, U);
  const Cover* cov = &U;

  // product over t=1..q of the integer shift of coordinate t-1 between the
  // charts in positions (q-t, q-t+1); evaluated at the tuple's base point
  auto shift_product = [cov](const VKey& t) -> double {
    int q = (int)t.size() - 1;
    VecD base = cov->overlap_base(t);
    double prod = 1.0;
    for (int k = 1; k <= q; ++k) {
      int a = t[q - k], bch = t[q - k + 1];
      double m = cov->to_chart(bch, base)[k - 1] - cov->to_chart(a, base)[k - 1];
      double mr = std::round(m);
      require(std::abs(m - mr) < 1e-9, "cover transitions are not integer shifts");
      prod *= mr;
    }
    return prod;
  };
  auto level_sign = [p](int q) {
    return ((p * q + q * (q - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  };

  for (int r = 1; r <= p; ++r) {
    int q = p - r;
    xi.omega[r - 1] = [cov, b, q, r, shift_product, level_sign](const VKey& t) -> FormField {
      FormField f{r, nullptr, nullptr};
      if (b == 0) return f;
      double coef = level_sign(q) * double(b) * shift_product(t);
      if (coef == 0.0) return f;
      int chart = t[0];
      int d = cov->dim();
      std::vector<int> tail, full;
      for (int k = q + 1; k < d; ++k) tail.push_back(k);
      for (int k = q; k < d; ++k) full.push_back(k);
      f.eval = [cov, coef, chart, q, tail](const VecD& p_, const std::vector<VecD>& tans) {
        return coef * cov->to_chart(chart, p_)[q] * coordinate_minor(tans, tail);
      };
      f.d_eval = [coef, full](const VecD&, const std::vector<VecD>& tans) {
        return coef * coordinate_minor(tans, full);
      };
      return f;
    };
  }
  xi.g = [cov, b, p, shift_product, level_sign](const VKey& t, const VecD& x) {
    double coef = level_sign(p) * double(b) * shift_product(t);
    return Angle::real(coef * cov->to_chart(t[0], x)[p]);
  };
  xi.g_d = [b, p, shift_product, level_sign](const VKey& t) {
    FormField f{1, nullptr, nullptr};
    double coef = level_sign(p) * double(b) * shift_product(t);
    if (coef == 0.0) return f;
    f.eval = [coef, p](const VecD&, const std::vector<VecD>& tans) {
      return coef * tans[0][p];
    };
    f.d_eval = [](const VecD&, const std::vector<VecD>&) { return 0.0; };
    return f;
  };
  return xi;
}

// ------------------------------------------------------------- coboundaries

struct DelignePotential {
  int p = 1;  // degree of the resulting coboundary
  const Cover* cover = nullptr;
  AngleProvider h;                 // sorted p-tuples
  FormProvider h_d;                // optional analytic d(angle h)
  std::vector<FormProvider> eta;   // eta[r-1]: r-forms on sorted (p-r)-tuples, r < p

  Angle h_at(VKey tuple, const VecD& amb) const {
    int sign = sort_key_sign(tuple);
    if (sign == 0 || !h) return Angle();
    Angle a = h(tuple, amb);
    return sign > 0 ? a : -a;
  }

  FormField h_d_at(VKey tuple) const {
    int sign = sort_key_sign(tuple);
    if (sign == 0 || !h_d) return zero_form(1);
    FormField f = h_d(tuple);
    f.degree = 1;
    return sign > 0 ? f : scaled_form(-1.0, f);
  }

  FormField eta_at(int r, VKey tuple) const {
    int sign = sort_key_sign(tuple);
    if (r < 1 || r > (int)eta.size()) return zero_form(r);
    const FormProvider& prov = eta[r - 1];
    if (sign == 0 || !prov) return zero_form(r);
    FormField f = prov(tuple);
    f.degree = r;
    return sign > 0 ? f : scaled_form(-1.0, f);
  }
};

inline DelignePotential make_potential(int p, const Cover& U) {
  DelignePotential eta;
  eta.p = p;
  eta.cover = &U;
  eta.eta.assign(std::max(0, p - 1), nullptr);
  return eta;
}

// deterministic smooth potential; every component is an independent short
// trigonometric series keyed by (seed, tuple)
inline DelignePotential random_potential(int p, const Cover& U, std::uint64_t seed,
                                         double amplitude = 0.05) {
  DelignePotential eta = make_potential(p, U);
  int ad = U.ambient_dim();
  eta.h = [seed, ad, amplitude](const VKey& t, const VecD& x) {
    std::uint64_t s = hash_combine(seed, hash_combine(77, hash_ints(t)));
    return random_trig_angle(ad, s, amplitude)(x);
  };
  eta.h_d = [seed, ad, amplitude](const VKey& t) {
    std::uint64_t s = hash_combine(seed, hash_combine(77, hash_ints(t)));
    FormField f = random_trig_form(0, ad, s, amplitude);
    return FormField{1, f.d_eval,
                     [](const VecD&, const std::vector<VecD>&) { return 0.0; }};
  };
  for (int r = 1; r <= p - 1; ++r)
    eta.eta[r - 1] = [seed, ad, amplitude, r](const VKey& t) {
      std::uint64_t s = hash_combine(seed, hash_combine(1000 + r, hash_ints(t)));
      return random_trig_form(r, ad, s, amplitude);
    };
  return eta;
}

inline DeligneCochain coboundary(const DelignePotential& eta, double fd_step = 1e-4) {
  DeligneCochain out = make_cochain(eta.p, *eta.cover);
  int p = eta.p;
  const Cover* cov = eta.cover;
  DelignePotential src = eta;

  out.g = [src](const VKey& t, const VecD& x) {
    Angle s;
    for (size_t m = 0; m < t.size(); ++m) {
      Angle term = src.h_at(key_drop(t, (int)m), x);
      s = (m % 2 == 0) ? s + term : s - term;
    }
    return s;
  };
  for (int r = 1; r <= p; ++r) {
    out.omega[r - 1] = [src, cov, r, p, fd_step](const VKey& t) -> FormField {
      std::vector<std::pair<double, FormField>> terms;
      if (r < p)
        for (size_t m = 0; m < t.size(); ++m)
          terms.push_back({m % 2 == 0 ? 1.0 : -1.0, src.eta_at(r, key_drop(t, (int)m))});
      double ds = r % 2 == 0 ? 1.0 : -1.0;
      if (r == 1) {
        if (src.h_d) {
          terms.push_back({ds, src.h_d_at(t)});
        } else {
          DelignePotential inner = src;
          VKey tt = t;
          AngleFn fn = [inner, tt](const VecD& x) { return inner.h_at(tt, x); };
          terms.push_back({ds, d_of_angle(*cov, fn, t[0], fd_step)});
        }
      } else {
        terms.push_back({ds, fd_derivative(*cov, src.eta_at(r - 1, t), t[0], fd_step)});
      }
      return sum_forms(r, std::move(terms));
    };
  }
  if (src.h_d)
    out.g_d = [src](const VKey& t) {
      std::vector<std::pair<double, FormField>> terms;
      for (size_t m = 0; m < t.size(); ++m)
        terms.push_back({m % 2 == 0 ? 1.0 : -1.0, src.h_d_at(key_drop(t, (int)m))});
      return sum_forms(1, std::move(terms));
    };
  return out;
}

// ------------------------------------------------------------ cocycle check

struct CocycleCheckOpts {
  int samples = 5;        // points per tuple
  int tangent_sets = 2;   // tangent draws per point
  int max_tuples = 400;   // cap per rung, deterministic subsample
  double fd_step = 1e-4;
  std::uint64_t seed = 2026;
};

struct RungResidual {
  int r;  // 0 is the pure Cech integrality rung
  double max_residual = 0.0;
  VKey worst;
};

struct CocycleReport {
  std::vector<RungResidual> rungs;
  double max_residual() const {
    double m = 0.0;
    for (const auto& r : rungs) m = std::max(m, r.max_residual);
    return m;
  }
};

namespace detail {
inline std::vector<VKey> capped_tuples(const Cover& U, int q, int cap, Rng& rng) {
  std::vector<VKey> all = U.nerve_tuples(q);
  if ((int)all.size() <= cap) return all;
  for (size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.next_int((int)i)]);
  all.resize(cap);
  std::sort(all.begin(), all.end());
  return all;
}

inline std::vector<VecD> random_tangents(const Cover& U, const VecD& amb, int r,
                                         Rng& rng) {
  std::vector<VecD> frame = U.tangent_frame(amb);
  std::vector<VecD> out;
  for (int i = 0; i < r; ++i) {
    VecD v(U.ambient_dim(), 0.0);
    for (const VecD& f : frame) v = v + rng.uniform(-1.0, 1.0) * f;
    out.push_back(v);
  }
  return out;
}
}  // namespace detail

// residuals of the full differential, rung by rung
inline CocycleReport deligne_differential(const DeligneCochain& xi,
                                          const CocycleCheckOpts& opts = {}) {
  const Cover& U = *xi.cover;
  int p = xi.p;
  Rng rng(opts.seed);
  CocycleReport rep;

  for (int r = p; r >= 1; --r) {
    RungResidual rr{r, 0.0, {}};
    for (const VKey& t : detail::capped_tuples(U, p - r + 1, opts.max_tuples, rng)) {
      FormField dlow;
      if (r == 1 && xi.g_d) {
        dlow = xi.g_d_at(t);
      } else if (r == 1) {
        DeligneCochain inner = xi;
        VKey tt = t;
        AngleFn fn = [inner, tt](const VecD& x) { return inner.g_at(tt, x); };
        dlow = d_of_angle(U, fn, t[0], opts.fd_step);
      } else {
        dlow = fd_derivative(U, xi.omega_at(r - 1, t), t[0], opts.fd_step);
      }
      double rsign = r % 2 == 0 ? 1.0 : -1.0;
      for (const VecD& x : U.overlap_samples(t, opts.samples, rng)) {
        for (int ts = 0; ts < opts.tangent_sets; ++ts) {
          std::vector<VecD> tans = detail::random_tangents(U, x, r, rng);
          double lhs = 0.0;
          for (size_t m = 0; m < t.size(); ++m) {
            FormField w = xi.omega_at(r, key_drop(t, (int)m));
            if (form_is_zero(w)) continue;
            lhs += (m % 2 == 0 ? 1.0 : -1.0) * w.eval(x, tans);
          }
          double rhs = rsign * (form_is_zero(dlow) ? 0.0 : dlow.eval(x, tans));
          double res = std::abs(lhs - rhs);
          if (res > rr.max_residual) {
            rr.max_residual = res;
            rr.worst = t;
          }
        }
      }
    }
    rep.rungs.push_back(rr);
  }

  RungResidual cech{0, 0.0, {}};
  for (const VKey& t : detail::capped_tuples(U, p + 1, opts.max_tuples, rng)) {
    for (const VecD& x : U.overlap_samples(t, opts.samples, rng)) {
      Angle s;
      for (size_t m = 0; m < t.size(); ++m) {
        Angle term = xi.g_at(key_drop(t, (int)m), x);
        s = (m % 2 == 0) ? s + term : s - term;
      }
      double res = s.defect();
      if (res > cech.max_residual) {
        cech.max_residual = res;
        cech.worst = t;
      }
    }
  }
  rep.rungs.push_back(cech);
  return rep;
}

inline bool is_cocycle(const DeligneCochain& xi, double tol = 1e-6,
                       const CocycleCheckOpts& opts = {},
                       CocycleReport* out = nullptr) {
  CocycleReport rep = deligne_differential(xi, opts);
  if (out) *out = rep;
  return rep.max_residual() <= tol;
}

// -------------------------------------------------------------- curvature

struct Curvature {
  FormField form;           // degree p+1, evaluated in the first chart found
  double max_mismatch = 0;  // disagreement of chart curvatures on overlaps
  VKey worst;
};

inline Curvature curvature(const DeligneCochain& xi,
                           const CocycleCheckOpts& opts = {}) {
  const Cover& U = *xi.cover;
  int p = xi.p;
  auto charts = std::make_shared<std::vector<FormField>>();
  for (int i = 0; i < U.num_charts(); ++i)
    charts->push_back(fd_derivative(U, xi.omega_at(p, {i}), i, opts.fd_step));

  Curvature out;
  const Cover* cov = &U;
  out.form.degree = p + 1;
  out.form.eval = [charts, cov](const VecD& x, const std::vector<VecD>& tans) {
    for (int i = 0; i < cov->num_charts(); ++i)
      if (cov->contains(i, x)) {
        const FormField& f = (*charts)[i];
        return form_is_zero(f) ? 0.0 : f.eval(x, tans);
      }
    throw Failure("point escapes the cover");
  };

  Rng rng(opts.seed);
  for (const VKey& t : detail::capped_tuples(U, 1, opts.max_tuples, rng)) {
    const FormField& fa = (*charts)[t[0]];
    const FormField& fb = (*charts)[t[1]];
    for (const VecD& x : U.overlap_samples(t, opts.samples, rng)) {
      for (int ts = 0; ts < opts.tangent_sets; ++ts) {
        std::vector<VecD> tans = detail::random_tangents(U, x, p + 1, rng);
        double va = form_is_zero(fa) ? 0.0 : fa.eval(x, tans);
        double vb = form_is_zero(fb) ? 0.0 : fb.eval(x, tans);
        if (std::abs(va - vb) > out.max_mismatch) {
          out.max_mismatch = std::abs(va - vb);
          out.worst = t;
        }
      }
    }
  }
  return out;
}

// --------------------------------------------------- characteristic class

struct BranchRule {
  std::uint64_t offset_seed = 0;  // nonzero shifts each branch by an integer
  int path_nodes = 96;
};

// real lift of angle g on the tuple's overlap, continued along the
// canonical path from the tuple's base point; steps must stay small
inline double branch_value(const DeligneCochain& xi, const VKey& tuple,
                           const VecD& amb, const BranchRule& rule = {}) {
  const Cover& U = *xi.cover;
  int n = rule.path_nodes;
  for (int attempt = 0;; ++attempt) {
    std::vector<VecD> path = U.overlap_path(tuple, amb, n);
    double v = xi.g_at(tuple, path[0]).value();
    if (rule.offset_seed != 0) {
      std::uint64_t s = hash_combine(rule.offset_seed, hash_ints(tuple));
      Rng r(s);
      v += double(r.next_int(7) - 3);
    }
    double max_step = 0.0;
    Angle prev = xi.g_at(tuple, path[0]);
    for (size_t k = 1; k < path.size(); ++k) {
      Angle cur = xi.g_at(tuple, path[k]);
      double step = angle_delta(prev, cur);
      max_step = std::max(max_step, std::abs(step));
      v += step;
      prev = cur;
    }
    if (max_step < 0.35 || attempt >= 3) {
      require(max_step < 0.45, "transition too wild along continuation path");
      return v;
    }
    n *= 2;
  }
}

struct CharacteristicClass {
  // value on a sorted nerve (p+2)-tuple with its integrality defect
  std::function<std::pair<long long, double>(const VKey&)> at;
};

inline CharacteristicClass characteristic_class(const DeligneCochain& xi,
                                                const BranchRule& rule = {}) {
  DeligneCochain base = xi;
  CharacteristicClass cls;
  cls.at = [base, rule](const VKey& t) {
    const Cover& U = *base.cover;
    VecD x = U.overlap_base(t);
    double s = 0.0;
    for (size_t m = 0; m < t.size(); ++m) {
      double v = branch_value(base, key_drop(t, (int)m), x, rule);
      s += (m % 2 == 0 ? 1.0 : -1.0) * v;
    }
    long long k = (long long)std::llround(s);
    return std::pair<long long, double>{k, std::abs(s - double(k))};
  };
  return cls;
}

// integer pairing of the class with a nerve cycle; defect reports how far
// individual values sat from integers
inline long long pair_class_with_cycle(const CharacteristicClass& cls,
                                       const Chain& cycle,
                                       double* max_defect = nullptr) {
  long long total = 0;
  double defect = 0.0;
  for (const auto& [key, coef] : cycle) {
    if (coef == 0) continue;
    auto [v, d] = cls.at(key);
    total += coef * v;
    defect = std::max(defect, d);
  }
  if (max_defect) *max_defect = defect;
  return total;
}

}  // namespace dlg
