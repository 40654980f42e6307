#pragma once
// Curvature, Chern-Weil forms, the degree-three form obtained by integrating
// along a straight path of connections, the explicit cubic level-k functional,
// gauge-transformation laws, and the gauge action on pairs (connection, 3-form).

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "dlg/angle.hpp"
#include "dlg/forms.hpp"
#include "dlg/lattice.hpp"

namespace dlg {

// level-k trace-square family: pairing(X,Y) = k (Tr X Tr Y - Tr XY) / 2, the
// polarization of the second Chern polynomial scaled by the level
struct InvariantPolynomial {
  int level = 1;

  Cplx pairing(const Mat& x, const Mat& y) const {
    return 0.5 * double(level) * (x.trace() * y.trace() - (x * y).trace());
  }
  double on_matrix(const Mat& x) const { return pairing(x, x).real(); }
};

inline double ad_invariance_defect(const InvariantPolynomial& phi, int N,
                                   int samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Mat x = random_anti_hermitian(N, rng);
    Mat g = random_unitary(N, rng);
    Mat y = g * x * Mat(g.adjoint());
    worst = std::max(worst, std::abs(phi.on_matrix(y) - phi.on_matrix(x)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// curvature F = dA + A ^ A

inline int pair_slot(int i, int j, int dim) {
  int k = 0;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      if (a == i && b == j) return k;
      ++k;
    }
  require(false, "coordinate pair out of range");
  return -1;
}

struct CurvatureField {
  int N = 2;
  int dim = 3;
  // slot k holds F_{ij} for the k-th pair i<j in lexicographic order
  std::function<void(const VecD&, std::array<Mat, 6>&)> components;

  Mat eval(const VecD& p, const VecD& u, const VecD& v) const {
    std::array<Mat, 6> f;
    components(p, f);
    Mat out = mat_zero(N);
    int k = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        out += (u[i] * v[j] - u[j] * v[i]) * f[k++];
    return out;
  }
};

// full derivative of the component frame: analytic when shipped, else central
// differences (the evaluators are global formulas, so stepping past a chart
// edge is harmless)
inline MatJet connection_jet(const LatticeConnection& A, const VecD& p,
                             double h) {
  MatJet out;
  if (A.dcoeff) {
    A.dcoeff(p, out);
    return out;
  }
  MatFrame fp, fm;
  for (int j = 0; j < A.box.dim; ++j) {
    VecD a = p, b = p;
    a[j] += h;
    b[j] -= h;
    A.coeff(a, fp);
    A.coeff(b, fm);
    for (int i = 0; i < A.box.dim; ++i) out[j][i] = (fp[i] - fm[i]) / (2 * h);
  }
  return out;
}

inline CurvatureField curvature_2form(const LatticeConnection& A,
                                      double h = 1e-4) {
  validate_connection(A);
  CurvatureField F;
  F.N = A.N;
  F.dim = A.box.dim;
  auto coeff = A.coeff;
  LatticeConnection hold = A;  // keeps the evaluators alive inside the closure
  int dim = A.box.dim;
  F.components = [hold, dim, h](const VecD& p, std::array<Mat, 6>& out) {
    MatFrame a;
    hold.coeff(p, a);
    MatJet j = connection_jet(hold, p, h);
    int k = 0;
    for (int r = 0; r < dim; ++r)
      for (int c = r + 1; c < dim; ++c)
        out[k++] = j[r][c] - j[c][r] + a[r] * a[c] - a[c] * a[r];
  };
  return F;
}

// max norm over samples of dF(u,v,w) - (F^A - A^F)(u,v,w); the first term is
// finite-differenced through the curvature evaluator, so nothing cancels by
// construction
inline double bianchi_residual(const LatticeConnection& A,
                               const CurvatureField& F, int samples = 12,
                               std::uint64_t seed = 17, double h = 2e-4) {
  Rng rng(seed);
  int dim = A.box.dim;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    VecD p(dim);
    for (int i = 0; i < dim; ++i)
      p[i] = A.box.lo[i] + (0.2 + 0.6 * rng.next_double()) * A.box.side(i);
    std::vector<VecD> t(3, VecD(dim, 0.0));
    for (auto& v : t)
      for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-1.0, 1.0);
    auto dir = [&](const VecD& v, const VecD& a, const VecD& b) {
      VecD pp = p, pm = p;
      for (int i = 0; i < dim; ++i) {
        pp[i] += h * v[i];
        pm[i] -= h * v[i];
      }
      return Mat((F.eval(pp, a, b) - F.eval(pm, a, b)) / (2 * h));
    };
    Mat df = dir(t[0], t[1], t[2]) - dir(t[1], t[0], t[2]) + dir(t[2], t[0], t[1]);
    MatFrame af;
    A.coeff(p, af);
    auto contract = [&](const VecD& v) {
      Mat m = mat_zero(A.N);
      for (int i = 0; i < dim; ++i) m += v[i] * af[i];
      return m;
    };
    Mat a0 = contract(t[0]), a1 = contract(t[1]), a2 = contract(t[2]);
    Mat f01 = F.eval(p, t[0], t[1]), f02 = F.eval(p, t[0], t[2]),
        f12 = F.eval(p, t[1], t[2]);
    Mat wedge = f01 * a2 - f02 * a1 + f12 * a0  // F ^ A
                - (a0 * f12 - a1 * f02 + a2 * f01);  // A ^ F
    worst = std::max(worst, (df - wedge).norm());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Chern-Weil 4-form Phi(i/2pi F)

inline FormField chern_weil_4form(const LatticeConnection& A,
                                  const InvariantPolynomial& phi,
                                  double h = 1e-4) {
  CurvatureField F = curvature_2form(A, h);
  FormField w{4, nullptr, nullptr};
  const Cplx scale(0.0, 1.0 / (2 * M_PI));
  w.eval = [F, phi, scale](const VecD& p, const std::vector<VecD>& t) {
    require((int)t.size() == 4, "tangent count does not match form degree");
    auto X = [&](int a, int b) { return Mat(scale * F.eval(p, t[a], t[b])); };
    Cplx v = phi.pairing(X(0, 1), X(2, 3)) - phi.pairing(X(0, 2), X(1, 3)) +
             phi.pairing(X(0, 3), X(1, 2));
    return 2.0 * v.real();
  };
  return w;
}

// frame-specialized sweep for period integrals over the whole box
inline double chern_weil_period(const LatticeConnection& A,
                                const InvariantPolynomial& phi,
                                const std::vector<int>& ns, double h = 1e-4,
                                int threads = 1) {
  require(A.box.dim == 4, "period sweep wants a four-dimensional box");
  CurvatureField F = curvature_2form(A, h);
  const Cplx scale(0.0, 1.0 / (2 * M_PI));
  auto density = [&](const VecD& p) {
    std::array<Mat, 6> f;
    F.components(p, f);
    // pairs in lex order: 01 02 03 12 13 23
    Cplx v = phi.pairing(Mat(scale * f[0]), Mat(scale * f[5])) -
             phi.pairing(Mat(scale * f[1]), Mat(scale * f[4])) +
             phi.pairing(Mat(scale * f[2]), Mat(scale * f[3]));
    return 2.0 * v.real();
  };
  return integrate_box(A.box, ns, density, threads);
}

// ---------------------------------------------------------------------------
// degree-three forms from a straight path of connections

// integrand bookkeeping for one tangent pair: F_t(a,b) = P0 + t P1 + t^2 P2
struct PathPair {
  Mat p0, p1, p2;
  Mat at(double t) const { return p0 + t * p1 + (t * t) * p2; }
};

// the 3-form obtained by integrating Phi(i/2pi F) over the straight path
// A + t alpha, t in [0,1]; with A = 0 this is the form whose d equals the
// Chern-Weil 4-form of alpha
inline FormField cs_relative_form(const LatticeConnection& A,
                                  const LatticeConnection& alpha,
                                  const InvariantPolynomial& phi,
                                  double h = 1e-4) {
  require(A.box.dim == alpha.box.dim && A.N == alpha.N,
          "path endpoints live on different lattices");
  validate_connection(A);
  validate_connection(alpha);
  LatticeConnection base = A, step = alpha;
  int dim = A.box.dim;
  int N = A.N;
  FormField w{3, nullptr, nullptr};
  // 3-point Gauss on [0,1], exact for the quadratic t-dependence
  static const double gx[3] = {0.5 - std::sqrt(0.15), 0.5, 0.5 + std::sqrt(0.15)};
  static const double gw[3] = {5.0 / 18, 8.0 / 18, 5.0 / 18};
  w.eval = [base, step, phi, dim, N, h](const VecD& p,
                                        const std::vector<VecD>& tans) {
    require((int)tans.size() == 3, "tangent count does not match form degree");
    MatFrame af, sf;
    base.coeff(p, af);
    step.coeff(p, sf);
    MatJet aj = connection_jet(base, p, h);
    MatJet sj = connection_jet(step, p, h);
    auto contract = [&](const MatFrame& f, const VecD& v) {
      Mat m = mat_zero(N);
      for (int i = 0; i < dim; ++i) m += v[i] * f[i];
      return m;
    };
    auto dform = [&](const MatJet& j, const VecD& u, const VecD& v) {
      Mat m = mat_zero(N);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          if (u[a] * v[b] != 0.0) m += (u[a] * v[b]) * (j[a][b] - j[b][a]);
      return m;
    };
    Mat av[3], sv[3];
    for (int c = 0; c < 3; ++c) {
      av[c] = contract(af, tans[c]);
      sv[c] = contract(sf, tans[c]);
    }
    auto pair_data = [&](int a, int b) {
      PathPair pp;
      pp.p0 = dform(aj, tans[a], tans[b]) + av[a] * av[b] - av[b] * av[a];
      pp.p1 = dform(sj, tans[a], tans[b]) + av[a] * sv[b] - av[b] * sv[a] +
              sv[a] * av[b] - sv[b] * av[a];
      pp.p2 = sv[a] * sv[b] - sv[b] * sv[a];
      return pp;
    };
    PathPair f12 = pair_data(1, 2), f02 = pair_data(0, 2), f01 = pair_data(0, 1);
    double total = 0.0;
    for (int q = 0; q < 3; ++q) {
      double t = gx[q];
      Cplx v = phi.pairing(sv[0], f12.at(t)) - phi.pairing(sv[1], f02.at(t)) +
               phi.pairing(sv[2], f01.at(t));
      total += gw[q] * 2.0 * v.real();
    }
    return total * (-1.0 / (4 * M_PI * M_PI));
  };
  return w;
}

inline FormField cs_form_path(const LatticeConnection& A,
                              const InvariantPolynomial& phi, double h = 1e-4) {
  return cs_relative_form(flat_connection(A.N, A.box), A, phi, h);
}

// integral of a degree = dim form over the whole box on the coordinate frame
inline double integrate_frame_form(const FormField& w, const BoxDomain& box,
                                   const std::vector<int>& ns) {
  require(w.degree == box.dim, "form degree does not match the box dimension");
  if (form_is_zero(w)) return 0.0;
  std::vector<VecD> frame;
  for (int i = 0; i < box.dim; ++i) {
    VecD e(box.dim, 0.0);
    e[i] = 1.0;
    frame.push_back(e);
  }
  return integrate_box(box, ns,
                       [&](const VecD& p) { return w.eval(p, frame); });
}

inline double cs_path_functional(const LatticeConnection& A,
                                 const InvariantPolynomial& phi,
                                 const std::vector<int>& ns, double h = 1e-4) {
  require(A.box.dim == 3 && A.box.closed(),
          "path functional needs a closed 3-torus domain");
  return integrate_frame_form(cs_form_path(A, phi, h), A.box, ns);
}

// ---------------------------------------------------------------------------
// the explicit cubic functional (k/8pi^2) Tr(A dA + 1/3 A A A), kept verbatim
// with the 1/3 coefficient; see the gauge-law tests for how it relates to the
// path functional, whose cubic coefficient is 2/3

inline double cs_explicit(const LatticeConnection& A, int level,
                          const std::vector<int>& ns, double h = 1e-4) {
  require(A.box.dim == 3, "explicit functional wants a three-dimensional domain");
  require(A.box.closed(),
          "explicit functional needs a closed domain: boundary terms are unsupported");
  validate_connection(A);
  LatticeConnection hold = A;
  auto density = [hold, h](const VecD& p) {
    MatFrame a;
    hold.coeff(p, a);
    MatJet j = connection_jet(hold, p, h);
    Mat d01 = j[0][1] - j[1][0], d02 = j[0][2] - j[2][0], d12 = j[1][2] - j[2][1];
    Cplx tr_ada = (a[0] * d12).trace() - (a[1] * d02).trace() + (a[2] * d01).trace();
    Cplx tr_aaa = (a[0] * a[1] * a[2]).trace() - (a[0] * a[2] * a[1]).trace() +
                  (a[1] * a[2] * a[0]).trace() - (a[1] * a[0] * a[2]).trace() +
                  (a[2] * a[0] * a[1]).trace() - (a[2] * a[1] * a[0]).trace();
    return (tr_ada + tr_aaa / 3.0).real();
  };
  double base = integrate_box(A.box, ns, density) / (8 * M_PI * M_PI);
  return level * base;  // level enters as an exact integer multiplier
}

// ---------------------------------------------------------------------------
// gauge transformations

inline LatticeConnection gauge_transform(const LatticeConnection& A,
                                         const GaugeTransformation& g,
                                         double h = 1e-4) {
  require(A.box.dim == g.box.dim && A.N == g.N,
          "gauge map does not match the connection lattice");
  validate_gauge(g);
  LatticeConnection out;
  out.N = A.N;
  out.box = A.box;
  out.name = A.name + "." + g.name;
  LatticeConnection baseA = A;
  GaugeTransformation hold = g;
  int dim = A.box.dim;
  out.coeff = [baseA, hold, dim, h](const VecD& p, MatFrame& f) {
    Mat G = hold.value(p);
    Mat Gd = G.adjoint();
    MatFrame a, dg;
    baseA.coeff(p, a);
    if (hold.dvalue) {
      hold.dvalue(p, dg);
    } else {
      for (int i = 0; i < dim; ++i) {
        VecD pp = p, pm = p;
        pp[i] += h;
        pm[i] -= h;
        dg[i] = (hold.value(pp) - hold.value(pm)) / (2 * h);
      }
    }
    for (int i = 0; i < dim; ++i) {
      Mat m = Gd * a[i] * G + Gd * dg[i];
      // the exact value is anti-Hermitian; projecting strips finite-difference noise
      f[i] = 0.5 * (m - Mat(m.adjoint()));
    }
  };
  return out;
}

struct GaugeShiftReport {
  double before = 0.0, after = 0.0, shift = 0.0;
  long long nearest = 0;
  double defect = 0.0;
  bool pass = false;
};

// integrates the transformation law over the closed domain: the exact term
// drops out and the winding term contributes an integer
inline GaugeShiftReport gauge_shift_check(const LatticeConnection& A,
                                          const GaugeTransformation& g,
                                          const InvariantPolynomial& phi,
                                          const std::vector<int>& ns,
                                          double tol = 1e-3, double h = 1e-4) {
  GaugeShiftReport r;
  r.before = cs_explicit(A, phi.level, ns, h);
  r.after = cs_explicit(gauge_transform(A, g, h), phi.level, ns, h);
  r.shift = r.after - r.before;
  r.nearest = (long long)std::llround(r.shift);
  r.defect = std::abs(r.shift - double(r.nearest));
  r.pass = r.defect <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// exterior derivative in box coordinates by central differences (flat-chart
// counterpart of the covered-manifold version)

inline FormField box_fd_derivative(const FormField& w, double h = 1e-3) {
  if (form_is_zero(w)) return zero_form(w.degree + 1);
  if (w.d_eval)
    return FormField{w.degree + 1, w.d_eval,
                     [](const VecD&, const std::vector<VecD>&) { return 0.0; }};
  FormEval base = w.eval;
  int r = w.degree;
  FormField out{r + 1, nullptr, nullptr};
  out.eval = [base, r, h](const VecD& p, const std::vector<VecD>& tans) {
    require((int)tans.size() == r + 1, "tangent count does not match form degree");
    double total = 0.0;
    for (int m = 0; m <= r; ++m) {
      std::vector<VecD> keep;
      for (int l = 0; l <= r; ++l)
        if (l != m) keep.push_back(tans[l]);
      VecD pp = p, pm = p;
      for (size_t k = 0; k < p.size(); ++k) {
        pp[k] += h * tans[m][k];
        pm[k] -= h * tans[m][k];
      }
      double diff = (base(pp, keep) - base(pm, keep)) / (2 * h);
      total += (m % 2 == 0 ? 1.0 : -1.0) * diff;
    }
    return total;
  };
  return out;
}

// ---------------------------------------------------------------------------
// integer cycles in the 3-torus and the gauge action on (connection, 3-form)

struct Cycle3 {
  std::array<std::array<long long, 3>, 3> m;  // rows of the linear map

  long long det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
};

inline Cycle3 fundamental_cycle3() {
  return Cycle3{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
}

// integral of a periodic 3-form over the image cycle x -> Mx, tangents pushed
// through the map so the covering multiplicity comes out automatically
inline double cycle_integrate(const FormField& w, const Cycle3& cyc,
                              const std::vector<int>& ns) {
  require(w.degree == 3, "cycle integration wants a degree-three form");
  if (form_is_zero(w)) return 0.0;
  BoxDomain box = torus_box(3);
  std::vector<VecD> pushed(3, VecD(3, 0.0));
  for (int i = 0; i < 3; ++i)
    for (int r = 0; r < 3; ++r) pushed[i][r] = double(cyc.m[r][i]);
  return integrate_box(box, ns, [&](const VecD& p) {
    VecD q(3, 0.0);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) q[r] += double(cyc.m[r][c]) * p[c];
      q[r] -= std::floor(q[r]);
    }
    return w.eval(q, pushed);
  });
}

struct CField {
  LatticeConnection A;
  FormField c;  // degree 3 on the base
};

struct CFieldGauge {
  LatticeConnection alpha;  // Lie-algebra-valued 1-form on the base
  FormField character_curvature;  // closed 3-form with integral periods
};

inline CFieldGauge trivial_cfield_gauge(int N) {
  return CFieldGauge{flat_connection(N, torus_box(3)), zero_form(3)};
}

// (alpha, D) . (A, c) = (A + alpha, c + relative path form + curv D)
inline CField cfield_act(const CFieldGauge& gauge, const CField& cf,
                         const InvariantPolynomial& phi,
                         const std::vector<int>& ns, double int_tol = 1e-6,
                         double h = 1e-4) {
  validate_connection(gauge.alpha);
  require(gauge.alpha.box.dim == 3 && gauge.alpha.N == cf.A.N,
          "gauge 1-form does not match the connection lattice");
  if (!form_is_zero(gauge.character_curvature)) {
    require(gauge.character_curvature.degree == 3,
            "character curvature must be a 3-form");
    double period =
        cycle_integrate(gauge.character_curvature, fundamental_cycle3(), ns);
    require(std::abs(period - std::llround(period)) <= int_tol,
            "character curvature has a non-integral period");
  }
  CField out;
  LatticeConnection base = cf.A, step = gauge.alpha;
  out.A.N = cf.A.N;
  out.A.box = cf.A.box;
  out.A.name = cf.A.name + "+alpha";
  int dim = cf.A.box.dim;
  out.A.coeff = [base, step, dim](const VecD& p, MatFrame& f) {
    MatFrame a, b;
    base.coeff(p, a);
    step.coeff(p, b);
    for (int i = 0; i < dim; ++i) f[i] = a[i] + b[i];
  };
  if (base.dcoeff && step.dcoeff) {
    auto da = base.dcoeff, db = step.dcoeff;
    out.A.dcoeff = [da, db, dim](const VecD& p, MatJet& j) {
      MatJet x, y;
      da(p, x);
      db(p, y);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) j[r][c] = x[r][c] + y[r][c];
    };
  }
  FormField rel = cs_relative_form(cf.A, gauge.alpha, phi, h);
  out.c = sum_forms(3, {{1.0, cf.c}, {1.0, rel}, {1.0, gauge.character_curvature}});
  return out;
}

// degree-3 holonomy exponent of (A, c) over a cycle, mod-1 meaningful; the
// sign pairs the shipped action with invariance (see the equivalence check)
inline double cfield_holonomy_exponent(const CField& cf, const Cycle3& cyc,
                                       const InvariantPolynomial& phi,
                                       const std::vector<int>& ns,
                                       double h = 1e-4) {
  FormField total = sum_forms(3, {{1.0, cf.c}, {-1.0, cs_form_path(cf.A, phi, h)}});
  return cycle_integrate(total, cyc, ns);
}

struct CFieldEquivalenceItem {
  Cycle3 cycle;
  double before = 0.0, after = 0.0, defect = 0.0;
};

struct CFieldEquivalenceReport {
  std::vector<CFieldEquivalenceItem> items;
  double worst = 0.0;
  bool pass = false;
};

inline CFieldEquivalenceReport cfield_equivalence_check(
    const CField& cf, const CFieldGauge& gauge,
    const std::vector<Cycle3>& cycles, const InvariantPolynomial& phi,
    const std::vector<int>& ns, double tol = 1e-4, double h = 1e-4) {
  CField acted = cfield_act(gauge, cf, phi, ns, 1e-6, h);
  CFieldEquivalenceReport rep;
  for (const Cycle3& cyc : cycles) {
    CFieldEquivalenceItem item;
    item.cycle = cyc;
    item.before = cfield_holonomy_exponent(cf, cyc, phi, ns, h);
    item.after = cfield_holonomy_exponent(acted, cyc, phi, ns, h);
    item.defect = int_defect(item.after - item.before);
    rep.worst = std::max(rep.worst, item.defect);
    rep.items.push_back(item);
  }
  rep.pass = rep.worst <= tol;
  return rep;
}

}  // namespace dlg
