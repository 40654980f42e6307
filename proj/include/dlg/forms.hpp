#pragma once

// Differential forms on covered manifolds.  A FormField evaluates on an
// ambient point and a list of ambient tangent vectors; components defined in
// chart coordinates convert internally.  An empty eval means the zero form,
// which integration and arithmetic skip outright.

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "dlg/angle.hpp"
#include "dlg/base.hpp"
#include "dlg/geometry.hpp"
#include "dlg/quadrature.hpp"
#include "dlg/simplicial.hpp"

namespace dlg {

using FormEval = std::function<double(const VecD&, const std::vector<VecD>&)>;

struct FormField {
  int degree = 0;
  FormEval eval;    // null means identically zero
  FormEval d_eval;  // optional analytic exterior derivative
};

inline bool form_is_zero(const FormField& w) { return !w.eval; }

inline FormField zero_form(int degree) { return FormField{degree, nullptr, nullptr}; }

// determinant by partial pivoting; rows.size() up to ambient dimension
inline double det_small(std::vector<VecD> m) {
  int n = (int)m.size();
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      double f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// value of dx_{axes[0]} ^ ... ^ dx_{axes[r-1]} on ambient tangents
inline double coordinate_minor(const std::vector<VecD>& tans,
                               const std::vector<int>& axes) {
  std::vector<VecD> m(axes.size(), VecD(axes.size(), 0.0));
  for (size_t i = 0; i < axes.size(); ++i)
    for (size_t j = 0; j < axes.size(); ++j) m[i][j] = tans[i][axes[j]];
  return det_small(std::move(m));
}

inline FormField scaled_form(double a, const FormField& w) {
  if (form_is_zero(w) || a == 0.0) return zero_form(w.degree);
  FormField out{w.degree, nullptr, nullptr};
  FormEval base = w.eval;
  out.eval = [a, base](const VecD& p, const std::vector<VecD>& t) {
    return a * base(p, t);
  };
  if (w.d_eval) {
    FormEval db = w.d_eval;
    out.d_eval = [a, db](const VecD& p, const std::vector<VecD>& t) {
      return a * db(p, t);
    };
  }
  return out;
}

// signed sum of same-degree forms; terms with zero forms are dropped
inline FormField sum_forms(int degree,
                           std::vector<std::pair<double, FormField>> terms) {
  std::vector<std::pair<double, FormField>> live;
  for (auto& t : terms)
    if (t.first != 0.0 && !form_is_zero(t.second)) live.push_back(std::move(t));
  if (live.empty()) return zero_form(degree);
  bool all_d = true;
  for (const auto& t : live) all_d = all_d && bool(t.second.d_eval);
  FormField out{degree, nullptr, nullptr};
  auto shared = std::make_shared<std::vector<std::pair<double, FormField>>>(std::move(live));
  out.eval = [shared](const VecD& p, const std::vector<VecD>& t) {
    double s = 0.0;
    for (const auto& term : *shared) s += term.first * term.second.eval(p, t);
    return s;
  };
  if (all_d)
    out.d_eval = [shared](const VecD& p, const std::vector<VecD>& t) {
      double s = 0.0;
      for (const auto& term : *shared) s += term.first * term.second.d_eval(p, t);
      return s;
    };
  return out;
}

// exterior derivative by central differences in the coordinates of one chart;
// valid at points that chart contains.  Analytic derivative wins when present.
inline FormField fd_derivative(const Cover& U, const FormField& w, int chart,
                               double h = 1e-4) {
  if (form_is_zero(w)) return zero_form(w.degree + 1);
  if (w.d_eval)  // the derivative of a derivative is exactly zero
    return FormField{w.degree + 1, w.d_eval,
                     [](const VecD&, const std::vector<VecD>&) { return 0.0; }};
  FormEval base = w.eval;
  const Cover* cov = &U;
  int r = w.degree;
  FormField out{r + 1, nullptr, nullptr};
  out.eval = [base, cov, chart, h, r](const VecD& amb, const std::vector<VecD>& tans) {
    require((int)tans.size() == r + 1, "tangent count does not match form degree");
    VecD x = cov->to_chart(chart, amb);
    JacRows rows = cov->chart_jacobian(chart, amb);
    std::vector<VecD> s;
    for (const VecD& t : tans) {
      VecD sk(rows.size());
      for (size_t k = 0; k < rows.size(); ++k) sk[k] = dot(rows[k], t);
      s.push_back(sk);
    }
    // evaluate the chart-coordinate pullback of w at coordinate point y on
    // the coordinate frame vectors listed in keep
    auto pull = [&](const VecD& y, const std::vector<int>& keep) {
      VecD p = cov->to_ambient(chart, y);
      std::vector<VecD> cols = cov->ambient_jacobian(chart, y);
      std::vector<VecD> at;
      for (int l : keep) {
        VecD v(p.size(), 0.0);
        for (size_t k = 0; k < cols.size(); ++k) v = v + s[l][k] * cols[k];
        at.push_back(v);
      }
      return base(p, at);
    };
    double total = 0.0;
    for (int m = 0; m <= r; ++m) {
      std::vector<int> keep;
      for (int l = 0; l <= r; ++l)
        if (l != m) keep.push_back(l);
      VecD yp = x, ym = x;
      for (size_t k = 0; k < x.size(); ++k) {
        yp[k] += h * s[m][k];
        ym[k] -= h * s[m][k];
      }
      double diff = (pull(yp, keep) - pull(ym, keep)) / (2 * h);
      total += (m % 2 == 0 ? 1.0 : -1.0) * diff;
    }
    return total;
  };
  return out;
}

// signed circle distance b - a lifted to (-1/2, 1/2]
inline double angle_delta(const Angle& a, const Angle& b) {
  double d = (b - a).value();
  d -= std::floor(d);
  if (d > 0.5) d -= 1.0;
  return d;
}

using AngleFn = std::function<Angle(const VecD&)>;

// d of a circle-valued function, as a 1-form; branch-safe for small h
inline FormField d_of_angle(const Cover& U, const AngleFn& g, int chart,
                            double h = 1e-4) {
  if (!g) return zero_form(1);
  const Cover* cov = &U;
  FormField out{1, nullptr, nullptr};
  out.eval = [g, cov, chart, h](const VecD& amb, const std::vector<VecD>& tans) {
    require(tans.size() == 1, "a 1-form takes one tangent");
    VecD x = cov->to_chart(chart, amb);
    JacRows rows = cov->chart_jacobian(chart, amb);
    VecD s(rows.size());
    for (size_t k = 0; k < rows.size(); ++k) s[k] = dot(rows[k], tans[0]);
    VecD yp = x, ym = x;
    for (size_t k = 0; k < x.size(); ++k) {
      yp[k] += h * s[k];
      ym[k] -= h * s[k];
    }
    Angle gp = g(cov->to_ambient(chart, yp));
    Angle gm = g(cov->to_ambient(chart, ym));
    return angle_delta(gm, gp) / (2 * h);
  };
  return out;
}

// integral of w over one parameterized cell; degree must match the cell
inline double integrate_form(const FormField& w, const GeomCell& geo,
                             const QuadOpts& opts = {}) {
  require(geo.geometric(), "cannot integrate over a combinatorial cell");
  require(w.degree == geo.dim(), "form degree does not match cell dimension");
  if (form_is_zero(w)) return 0.0;
  if (geo.dim() == 0) return w.eval(geo.corner_pos(0), {});
  auto f = [&](const VecD& lam) { return w.eval(geo.pos(lam), geo.jac(lam)); };
  return integrate_unit_simplex(geo.dim(), f, opts);
}

// integral over an r-chain of the complex, weighted by chain coefficients
inline double integrate_chain(const FormField& w, const SimplicialComplex& K,
                              const Chain& chain, const QuadOpts& opts = {}) {
  double total = 0.0;
  for (const auto& [key, coef] : chain) {
    if (coef == 0) continue;
    auto it = K.cells[w.degree].find(key);
    require(it != K.cells[w.degree].end(), "chain cell missing from complex");
    total += double(coef) * integrate_form(w, it->second, opts);
  }
  return total;
}

// constant-coefficient combination of coordinate minors dx_{axes}; exact to
// integrate, identically closed
inline FormField constant_coordinate_form(
    int degree, std::vector<std::pair<std::vector<int>, double>> terms) {
  for (const auto& t : terms)
    require((int)t.first.size() == degree, "axis tuple does not match form degree");
  auto shared = std::make_shared<std::vector<std::pair<std::vector<int>, double>>>(
      std::move(terms));
  FormField out{degree, nullptr, nullptr};
  out.eval = [shared](const VecD&, const std::vector<VecD>& tans) {
    double s = 0.0;
    for (const auto& [axes, coef] : *shared) s += coef * coordinate_minor(tans, axes);
    return s;
  };
  out.d_eval = [](const VecD&, const std::vector<VecD>&) { return 0.0; };
  return out;
}

// deterministic smooth test data: short trigonometric series with integer
// frequencies (so torus seams stay smooth) and random constant covector
// frames.  Same seed, same field.
inline FormField random_trig_form(int degree, int ambient_dim, std::uint64_t seed,
                                  double amplitude) {
  struct Term {
    double a, phase;
    VecD freq;
    std::vector<VecD> frame;
  };
  Rng rng(seed);
  auto terms = std::make_shared<std::vector<Term>>();
  for (int j = 0; j < 3; ++j) {
    Term t;
    t.a = amplitude * rng.uniform(-1.0, 1.0);
    t.phase = rng.uniform(0.0, 2 * M_PI);
    t.freq = VecD(ambient_dim);
    for (int k = 0; k < ambient_dim; ++k) t.freq[k] = double(rng.next_int(5) - 2);
    for (int l = 0; l < degree; ++l) {
      VecD u(ambient_dim);
      double n2 = 0.0;
      for (int k = 0; k < ambient_dim; ++k) {
        u[k] = rng.uniform(-1.0, 1.0);
        n2 += u[k] * u[k];
      }
      for (int k = 0; k < ambient_dim; ++k) u[k] /= std::sqrt(std::max(n2, 1e-12));
      t.frame.push_back(u);
    }
    terms->push_back(std::move(t));
  }
  FormField out{degree, nullptr, nullptr};
  out.eval = [terms, degree](const VecD& p, const std::vector<VecD>& tans) {
    double s = 0.0;
    for (const auto& t : *terms) {
      double minor = 1.0;
      if (degree > 0) {
        std::vector<VecD> m(degree, VecD(degree, 0.0));
        for (int i = 0; i < degree; ++i)
          for (int l = 0; l < degree; ++l) m[i][l] = dot(tans[i], t.frame[l]);
        minor = det_small(std::move(m));
      }
      s += t.a * std::cos(2 * M_PI * dot(t.freq, p) + t.phase) * minor;
    }
    return s;
  };
  // d of (a cos(2 pi k.x + phi) u^1^...^u^r) wedges the gradient in front
  out.d_eval = [terms, degree](const VecD& p, const std::vector<VecD>& tans) {
    double s = 0.0;
    for (const auto& t : *terms) {
      std::vector<VecD> m(degree + 1, VecD(degree + 1, 0.0));
      for (int i = 0; i <= degree; ++i) {
        m[i][0] = dot(tans[i], t.freq);
        for (int l = 0; l < degree; ++l) m[i][l + 1] = dot(tans[i], t.frame[l]);
      }
      s += t.a * (-2 * M_PI) * std::sin(2 * M_PI * dot(t.freq, p) + t.phase) *
           det_small(std::move(m));
    }
    return s;
  };
  return out;
}

inline AngleFn random_trig_angle(int ambient_dim, std::uint64_t seed,
                                 double amplitude) {
  FormField f = random_trig_form(0, ambient_dim, seed, amplitude);
  FormEval base = f.eval;
  return [base](const VecD& p) { return Angle::real(base(p, {})); };
}

}  // namespace dlg
