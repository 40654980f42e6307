#pragma once
// Trivialized-bundle lattice fields: anti-Hermitian matrix-valued 1-forms on
// coordinate boxes (periodic tori, sphere charts), unitary gauge maps, named
// smooth families, box quadrature, and a signed-Jacobian winding oracle.

#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "dlg/base.hpp"

namespace dlg {

// dense complex matrices, dynamic size capped at 4x4 so storage stays on the stack
using Mat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using Cplx = std::complex<double>;

inline Mat mat_zero(int n) { return Mat::Zero(n, n); }
inline Mat mat_id(int n) { return Mat::Identity(n, n); }

inline bool anti_hermitian_within(const Mat& x, double tol) {
  return (x + Mat(x.adjoint())).norm() <= tol;
}

inline bool unitary_within(const Mat& g, double tol) {
  Mat r = g.adjoint() * g;
  return (r - mat_id((int)g.rows())).norm() <= tol;
}

inline Mat pauli(int i) {
  Mat s = mat_zero(2);
  const Cplx I(0.0, 1.0);
  if (i == 1) { s(0, 1) = 1.0; s(1, 0) = 1.0; }
  if (i == 2) { s(0, 1) = -I; s(1, 0) = I; }
  if (i == 3) { s(0, 0) = 1.0; s(1, 1) = -1.0; }
  return s;
}

// i(a s1 + b s2 + c s3), the generic traceless anti-Hermitian 2x2
inline Mat su2_alg(double a, double b, double c) {
  const Cplx I(0.0, 1.0);
  return I * (a * pauli(1) + b * pauli(2) + c * pauli(3));
}

// exp(su2_alg(a,b,c)) in closed form; the series branch keeps it smooth at 0
inline Mat su2_exp(double a, double b, double c) {
  double th = std::sqrt(a * a + b * b + c * c);
  double sc = th < 1e-6 ? 1.0 - th * th / 6.0 : std::sin(th) / th;
  return std::cos(th) * mat_id(2) + sc * su2_alg(a, b, c);
}

inline Mat random_anti_hermitian(int n, Rng& rng, double scale = 1.0) {
  Mat m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m(r, c) = Cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return scale * 0.5 * (m - Mat(m.adjoint()));
}

inline Mat random_unitary(int n, Rng& rng) {
  Eigen::MatrixXcd x = random_anti_hermitian(n, rng);
  return Mat(x.exp());
}

// ---------------------------------------------------------------------------
// coordinate boxes

struct BoxDomain {
  int dim = 3;
  VecD lo, hi;
  std::vector<uint8_t> periodic;  // per direction

  double side(int i) const { return hi[i] - lo[i]; }
  bool closed() const {
    for (uint8_t p : periodic)
      if (!p) return false;
    return true;
  }
};

inline BoxDomain torus_box(int dim) {
  return BoxDomain{dim, VecD(dim, 0.0), VecD(dim, 1.0),
                   std::vector<uint8_t>(dim, 1)};
}

// polar chart of the round sphere: theta in [0,pi], phi periodic in [0,2pi]
inline BoxDomain sphere_chart_box() {
  return BoxDomain{2, {0.0, 0.0}, {M_PI, 2 * M_PI}, {0, 1}};
}

inline BoxDomain sphere_product_box() {
  return BoxDomain{4,
                   {0.0, 0.0, 0.0, 0.0},
                   {M_PI, 2 * M_PI, M_PI, 2 * M_PI},
                   {0, 1, 0, 1}};
}

// ---------------------------------------------------------------------------
// connections and gauge maps

using MatFrame = std::array<Mat, 4>;          // coordinate components, slots [0,dim)
using MatJet = std::array<std::array<Mat, 4>, 4>;  // jet[j][i] = d_j of component i

struct LatticeConnection {
  int N = 2;
  BoxDomain box;
  std::function<void(const VecD&, MatFrame&)> coeff;  // anti-Hermitian components
  std::function<void(const VecD&, MatJet&)> dcoeff;   // optional analytic derivative
  std::string name = "connection";
};

struct GaugeTransformation {
  int N = 2;
  BoxDomain box;
  std::function<Mat(const VecD&)> value;              // unitary at every point
  std::function<void(const VecD&, MatFrame&)> dvalue; // optional analytic derivative
  std::optional<int> winding_hint;
  std::string name = "gauge";
};

inline VecD box_sample(const BoxDomain& box, Rng& rng) {
  VecD p(box.dim);
  for (int i = 0; i < box.dim; ++i) p[i] = rng.uniform(box.lo[i], box.hi[i]);
  return p;
}

// anti-Hermitian within 1e-12 at samples; periodic seams agree within 1e-10
inline void validate_connection(const LatticeConnection& A, int samples = 32,
                                std::uint64_t seed = 5) {
  require(bool(A.coeff), "connection has no evaluator");
  require(A.N >= 1 && A.N <= 4, "connection matrix size out of range");
  Rng rng(seed);
  MatFrame f, g;
  for (int s = 0; s < samples; ++s) {
    VecD p = box_sample(A.box, rng);
    A.coeff(p, f);
    for (int i = 0; i < A.box.dim; ++i)
      require(anti_hermitian_within(f[i], 1e-12),
              "connection component is not anti-Hermitian");
    for (int i = 0; i < A.box.dim; ++i) {
      if (!A.box.periodic[i]) continue;
      VecD a = p, b = p;
      a[i] = A.box.lo[i];
      b[i] = A.box.hi[i];
      A.coeff(a, f);
      A.coeff(b, g);
      for (int j = 0; j < A.box.dim; ++j)
        require((f[j] - g[j]).norm() <= 1e-10,
                "connection breaks on a periodic seam");
    }
  }
}

inline void validate_gauge(const GaugeTransformation& g, int samples = 32,
                           std::uint64_t seed = 7) {
  require(bool(g.value), "gauge map has no evaluator");
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    VecD p = box_sample(g.box, rng);
    require(unitary_within(g.value(p), 1e-12), "gauge map is not unitary");
    for (int i = 0; i < g.box.dim; ++i) {
      if (!g.box.periodic[i]) continue;
      VecD a = p, b = p;
      a[i] = g.box.lo[i];
      b[i] = g.box.hi[i];
      require((g.value(a) - g.value(b)).norm() <= 1e-10,
              "gauge map breaks on a periodic seam");
    }
  }
}

// ---------------------------------------------------------------------------
// named smooth families

inline LatticeConnection flat_connection(int N, BoxDomain box) {
  LatticeConnection A;
  A.N = N;
  A.box = box;
  int dim = box.dim;
  A.coeff = [N, dim](const VecD&, MatFrame& out) {
    for (int i = 0; i < dim; ++i) out[i] = mat_zero(N);
  };
  A.dcoeff = [N, dim](const VecD&, MatJet& out) {
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i) out[j][i] = mat_zero(N);
  };
  A.name = "flat";
  return A;
}

inline LatticeConnection constant_connection(const Mat& X, const Mat& Y,
                                             const Mat& Z) {
  int N = (int)X.rows();
  require((int)Y.rows() == N && (int)Z.rows() == N,
          "constant components must share one size");
  LatticeConnection A;
  A.N = N;
  A.box = torus_box(3);
  A.coeff = [X, Y, Z](const VecD&, MatFrame& out) {
    out[0] = X;
    out[1] = Y;
    out[2] = Z;
  };
  A.dcoeff = [N](const VecD&, MatJet& out) {
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) out[j][i] = mat_zero(N);
  };
  A.name = "constant";
  return A;
}

// diagonal helical field lam*H*(sin(2 pi z) dx + cos(2 pi z) dy);
// its explicit level-k functional is -k lam^2 / (2 pi) in closed form
inline LatticeConnection abelian_helical_connection(double lam) {
  LatticeConnection A;
  A.N = 2;
  A.box = torus_box(3);
  Mat H = su2_alg(0.0, 0.0, lam);
  A.coeff = [H](const VecD& p, MatFrame& out) {
    double w = 2 * M_PI * p[2];
    out[0] = std::sin(w) * H;
    out[1] = std::cos(w) * H;
    out[2] = mat_zero(2);
  };
  A.dcoeff = [H](const VecD& p, MatJet& out) {
    double w = 2 * M_PI * p[2];
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) out[j][i] = mat_zero(2);
    out[2][0] = 2 * M_PI * std::cos(w) * H;
    out[2][1] = -2 * M_PI * std::sin(w) * H;
  };
  A.name = "abelian_helical";
  return A;
}

inline LatticeConnection su2_wave_connection(double eps) {
  LatticeConnection A;
  A.N = 2;
  A.box = torus_box(3);
  Mat s1 = su2_alg(eps, 0, 0), s2 = su2_alg(0, eps, 0), s3 = su2_alg(0, 0, eps);
  A.coeff = [s1, s2, s3](const VecD& p, MatFrame& out) {
    out[0] = std::sin(2 * M_PI * p[2]) * s3;
    out[1] = std::sin(2 * M_PI * p[0]) * s1;
    out[2] = std::sin(2 * M_PI * p[1]) * s2;
  };
  A.dcoeff = [s1, s2, s3](const VecD& p, MatJet& out) {
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) out[j][i] = mat_zero(2);
    out[2][0] = 2 * M_PI * std::cos(2 * M_PI * p[2]) * s3;
    out[0][1] = 2 * M_PI * std::cos(2 * M_PI * p[0]) * s1;
    out[1][2] = 2 * M_PI * std::cos(2 * M_PI * p[1]) * s2;
  };
  A.name = "su2_wave";
  return A;
}

// four-torus relative of the wave family, used to probe four-dimensional identities
inline LatticeConnection t4_wave_connection(double eps) {
  LatticeConnection A;
  A.N = 2;
  A.box = torus_box(4);
  Mat s1 = su2_alg(eps, 0, 0), s2 = su2_alg(0, eps, 0), s3 = su2_alg(0, 0, eps);
  A.coeff = [s1, s2, s3](const VecD& p, MatFrame& out) {
    out[0] = std::cos(2 * M_PI * p[3]) * s1;
    out[1] = std::sin(2 * M_PI * p[0]) * s1;
    out[2] = std::sin(2 * M_PI * p[1]) * s2;
    out[3] = std::sin(2 * M_PI * p[2]) * s3;
  };
  A.dcoeff = [s1, s2, s3](const VecD& p, MatJet& out) {
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) out[j][i] = mat_zero(2);
    out[3][0] = -2 * M_PI * std::sin(2 * M_PI * p[3]) * s1;
    out[0][1] = 2 * M_PI * std::cos(2 * M_PI * p[0]) * s1;
    out[1][2] = 2 * M_PI * std::cos(2 * M_PI * p[1]) * s2;
    out[2][3] = 2 * M_PI * std::cos(2 * M_PI * p[2]) * s3;
  };
  A.name = "t4_wave";
  return A;
}

// charge-n monopole on the polar chart; the (0,0) curvature entry carries flux n
inline LatticeConnection monopole_connection(int n) {
  LatticeConnection A;
  A.N = 2;
  A.box = sphere_chart_box();
  Mat H = su2_alg(0.0, 0.0, -0.5 * n);
  A.coeff = [H](const VecD& p, MatFrame& out) {
    out[0] = mat_zero(2);
    out[1] = (1.0 - std::cos(p[0])) * H;
  };
  A.dcoeff = [H](const VecD& p, MatJet& out) {
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) out[j][i] = mat_zero(2);
    out[0][1] = std::sin(p[0]) * H;
  };
  A.name = "monopole(" + std::to_string(n) + ")";
  return A;
}

// independent charge-n and charge-m monopoles on the two sphere factors,
// placed in the two diagonal u(2) slots
inline LatticeConnection product_monopole_connection(int n, int m) {
  LatticeConnection A;
  A.N = 2;
  A.box = sphere_product_box();
  const Cplx I(0.0, 1.0);
  A.coeff = [n, m, I](const VecD& p, MatFrame& out) {
    for (int i = 0; i < 4; ++i) out[i] = mat_zero(2);
    out[1](0, 0) = -I * (0.5 * n * (1.0 - std::cos(p[0])));
    out[3](1, 1) = -I * (0.5 * m * (1.0 - std::cos(p[2])));
  };
  A.dcoeff = [n, m, I](const VecD& p, MatJet& out) {
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) out[j][i] = mat_zero(2);
    out[0][1](0, 0) = -I * (0.5 * n * std::sin(p[0]));
    out[2][3](1, 1) = -I * (0.5 * m * std::sin(p[2]));
  };
  A.name = "product_monopole(" + std::to_string(n) + "," + std::to_string(m) + ")";
  return A;
}

inline GaugeTransformation constant_gauge(const Mat& U, BoxDomain box) {
  GaugeTransformation g;
  g.N = (int)U.rows();
  g.box = box;
  int dim = box.dim;
  int N = g.N;
  g.value = [U](const VecD&) { return U; };
  g.dvalue = [N, dim](const VecD&, MatFrame& out) {
    for (int i = 0; i < dim; ++i) out[i] = mat_zero(N);
  };
  g.winding_hint = 0;
  g.name = "constant";
  return g;
}

// diag(exp(2 pi i w x), exp(-2 pi i w x)) on the 3-torus
inline GaugeTransformation abelian_exponential_gauge(int w) {
  GaugeTransformation g;
  g.N = 2;
  g.box = torus_box(3);
  const Cplx I(0.0, 1.0);
  g.value = [w, I](const VecD& p) {
    Mat m = mat_zero(2);
    m(0, 0) = std::exp(I * (2 * M_PI * w * p[0]));
    m(1, 1) = std::exp(-I * (2 * M_PI * w * p[0]));
    return m;
  };
  g.dvalue = [w, I](const VecD& p, MatFrame& out) {
    for (int i = 0; i < 3; ++i) out[i] = mat_zero(2);
    out[0](0, 0) = I * (2 * M_PI * w) * std::exp(I * (2 * M_PI * w * p[0]));
    out[0](1, 1) = -I * (2 * M_PI * w) * std::exp(-I * (2 * M_PI * w * p[0]));
  };
  g.winding_hint = 0;
  g.name = "abelian_exponential(" + std::to_string(w) + ")";
  return g;
}

// C-infinity step: 0 for t <= 0, 1 for t >= 1, flat to all orders at both ends
inline double bump_step(double t) {
  auto f = [](double u) { return u <= 0.0 ? 0.0 : std::exp(-1.0 / u); };
  double a = f(t), b = f(1.0 - t);
  return a / (a + b);
}

// degree-w map T^3 -> SU(2): a radial suspension profile inside the ball of
// radius 0.45 around the cell center, the identity outside, so the periodic
// extension is smooth.  The winding oracle below pins the sign convention.
inline GaugeTransformation bump_gauge(int w) {
  GaugeTransformation g;
  g.N = 2;
  g.box = torus_box(3);
  g.value = [w](const VecD& p) {
    double ux = (p[0] - 0.5) / 0.45, uy = (p[1] - 0.5) / 0.45,
           uz = (p[2] - 0.5) / 0.45;
    double r = std::sqrt(ux * ux + uy * uy + uz * uz);
    if (r >= 1.0) return mat_id(2);
    double ang = w * M_PI * (1.0 - bump_step(r));
    if (r < 1e-12) return Mat(std::cos(ang) * mat_id(2));
    return su2_exp(ang * ux / r, ang * uy / r, ang * uz / r);
  };
  g.winding_hint = w;
  g.name = "bump_degree(" + std::to_string(w) + ")";
  return g;
}

// ---------------------------------------------------------------------------
// box quadrature: trapezoid on periodic directions (spectral for smooth
// periodic fields), composite Simpson on chart directions

struct AxisRule {
  VecD x, w;
};

inline AxisRule axis_rule(const BoxDomain& box, int i, int n) {
  require(n >= 2, "axis rule wants at least two nodes");
  AxisRule r;
  double span = box.side(i);
  if (box.periodic[i]) {
    double h = span / n;
    for (int j = 0; j < n; ++j) {
      r.x.push_back(box.lo[i] + j * h);
      r.w.push_back(h);
    }
    return r;
  }
  require(n % 2 == 0, "Simpson rule wants an even interval count");
  double h = span / n;
  for (int j = 0; j <= n; ++j) {
    r.x.push_back(box.lo[i] + j * h);
    double c = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    r.w.push_back(c * h / 3.0);
  }
  return r;
}

// compensated sweep of the sub-box below the first axis, in lexicographic order
inline double integrate_box_slice(const std::vector<AxisRule>& rules, int dim,
                                  double w0, VecD& p,
                                  const std::function<double(const VecD&)>& f) {
  std::vector<size_t> idx(dim, 0);
  double total = 0.0, comp = 0.0;
  for (;;) {
    double w = w0;
    for (int i = 1; i < dim; ++i) {
      p[i] = rules[i].x[idx[i]];
      w *= rules[i].w[idx[i]];
    }
    double y = w * f(p) - comp;
    double t = total + y;
    comp = (t - total) - y;
    total = t;
    int i = dim - 1;
    while (i >= 1 && ++idx[i] == rules[i].x.size()) idx[i--] = 0;
    if (i < 1) break;
  }
  return total;
}

// deterministic reduction: one partial per first-axis node, filled by any
// number of workers, then combined in node order; the result is bitwise
// independent of the thread count
inline double integrate_box(const BoxDomain& box, const std::vector<int>& ns,
                            const std::function<double(const VecD&)>& f,
                            int threads = 1) {
  require((int)ns.size() == box.dim, "one node count per direction");
  std::vector<AxisRule> rules;
  for (int i = 0; i < box.dim; ++i) rules.push_back(axis_rule(box, i, ns[i]));
  size_t n0 = rules[0].x.size();
  std::vector<double> partial(n0, 0.0);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    VecD p(box.dim);
    for (;;) {
      size_t j = next.fetch_add(1);
      if (j >= n0) return;
      p[0] = rules[0].x[j];
      partial[j] = integrate_box_slice(rules, box.dim, rules[0].w[j], p, f);
    }
  };
  if (threads <= 1 || n0 < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(threads, (int)n0); ++t)
      pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  double total = 0.0, comp = 0.0;
  for (double v : partial) {
    double y = v - comp;
    double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  return total;
}

// ---------------------------------------------------------------------------
// winding oracle: writes g through the quaternion chart of SU(2) = S^3 and
// integrates the normalized signed Jacobian (1/2 pi^2) det[q, d1 q, d2 q, d3 q]

inline double gauge_degree(const GaugeTransformation& g, int n = 48,
                           double h = 1e-4) {
  require(g.N == 2, "winding oracle needs 2x2 unitaries");
  require(g.box.dim == 3 && g.box.closed(), "winding oracle needs a 3-torus");
  auto quat = [&](const VecD& p) {
    Mat u = g.value(p);
    require(std::abs(u.determinant() - Cplx(1.0, 0.0)) <= 1e-8,
            "winding oracle needs determinant-one values");
    return Eigen::Vector4d(u(0, 0).real(), u(0, 0).imag(), u(0, 1).real(),
                           u(0, 1).imag());
  };
  auto density = [&](const VecD& p) {
    Eigen::Matrix4d m;
    m.col(0) = quat(p);
    for (int i = 0; i < 3; ++i) {
      VecD a = p, b = p;
      a[i] += h;
      b[i] -= h;
      m.col(i + 1) = (quat(a) - quat(b)) / (2 * h);
    }
    return m.determinant();
  };
  double vol = integrate_box(g.box, {n, n, n}, density);
  return vol / (2 * M_PI * M_PI);
}

// pullback along the linear torus map x -> Lx; multiplies the explicit
// functional by det L, which is the functoriality check uses
inline LatticeConnection connection_pullback(
    const LatticeConnection& A, const std::array<std::array<long long, 3>, 3>& L) {
  require(A.box.dim == 3 && A.box.closed(), "pullback wants a 3-torus field");
  LatticeConnection B;
  B.N = A.N;
  B.box = A.box;
  B.name = A.name + ".pullback";
  auto apply = [L](const VecD& p) {
    VecD q(3, 0.0);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) q[r] += double(L[r][c]) * p[c];
      q[r] -= std::floor(q[r]);
    }
    return q;
  };
  auto base = A.coeff;
  B.coeff = [L, apply, base](const VecD& p, MatFrame& out) {
    MatFrame f;
    base(apply(p), f);
    for (int i = 0; i < 3; ++i) {
      out[i] = double(L[0][i]) * f[0];
      out[i] += double(L[1][i]) * f[1];
      out[i] += double(L[2][i]) * f[2];
    }
  };
  if (A.dcoeff) {
    auto dbase = A.dcoeff;
    B.dcoeff = [L, apply, dbase](const VecD& p, MatJet& out) {
      MatJet dj;
      dbase(apply(p), dj);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i) {
          Mat s = mat_zero((int)dj[0][0].rows());
          for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
              s += double(L[j][i]) * double(L[l][k]) * dj[l][j];
          out[k][i] = s;
        }
    };
  }
  return B;
}

}  // namespace dlg
