#pragma once
#include <array>
#include <functional>
#include <map>
#include <vector>

#include "dlg/simplicial.hpp"

// Mesh builders for the model manifolds, plus the abstract nerve cycles that
// winding extraction pairs against. Torus meshes use the standard path
// triangulation of each grid cube (one simplex per permutation, signed by its
// parity), which is boundary free on the torus and has positive total volume.

namespace dlg {

namespace detail {

template <typename F>
void for_each_multi(int d, int n, F&& f) {
  std::vector<int> idx(d, 0);
  while (true) {
    f(idx);
    int k = 0;
    while (k < d && ++idx[k] == n) idx[k++] = 0;
    if (k == d) break;
  }
}

}  // namespace detail

// T^d, n subdivisions per axis, n^d * d! top cells, coordinates i/n
inline SimplicialComplex torus_mesh(int d, int n) {
  // n = 2 lets distinct Kuhn cells share one sorted vertex key and cancel
  require(n >= 3, "torus mesh needs n >= 3");
  SimplicialComplex K;
  auto vid = [&](const std::vector<int>& p) {
    int id = 0;
    for (int k = d - 1; k >= 0; --k) id = id * n + ((p[k] % n + n) % n);
    return id;
  };
  std::vector<int> perm(d);
  detail::for_each_multi(d, n, [&](const std::vector<int>& base) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> p = base;
      std::vector<int> verts{vid(p)};
      std::vector<VecD> corners;
      corners.emplace_back(p.begin(), p.end());
      for (int t = 0; t < d; ++t) {
        ++p[perm[t]];
        verts.push_back(vid(p));
        corners.emplace_back(p.begin(), p.end());
      }
      for (VecD& c : corners) c = (1.0 / n) * c;
      K.add_top(verts, perm_parity(perm), GeomCell{ParamKind::WrapAll, corners});
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return K;
}

// k-dimensional coordinate subtorus of T^D along `axes`, the remaining
// coordinates frozen at the `fix` values (one per non-axis coordinate, in
// increasing coordinate order); cells carry full D-dimensional corners
inline SimplicialComplex subtorus_mesh(int D, const std::vector<int>& axes,
                                       const VecD& fix, int n) {
  require(n >= 3, "subtorus mesh needs n >= 3");
  int d = (int)axes.size();
  require((int)fix.size() == D - d,
          "subtorus mesh wants one frozen value per non-axis coordinate");
  VecD base(D, 0.0);
  {
    std::vector<char> on_axis(D, 0);
    for (int a : axes) on_axis[a] = 1;
    int f = 0;
    for (int k = 0; k < D; ++k)
      if (!on_axis[k]) base[k] = fix[f++];
  }
  SimplicialComplex K;
  auto vid = [&](const std::vector<int>& p) {
    int id = 0;
    for (int k = d - 1; k >= 0; --k) id = id * n + ((p[k] % n + n) % n);
    return id;
  };
  std::vector<int> perm(d);
  detail::for_each_multi(d, n, [&](const std::vector<int>& base_idx) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> p = base_idx;
      auto corner = [&](const std::vector<int>& q) {
        VecD c = base;
        for (int k = 0; k < d; ++k) c[axes[k]] = double(q[k]) / n;
        return c;
      };
      std::vector<int> verts{vid(p)};
      std::vector<VecD> corners{corner(p)};
      for (int t = 0; t < d; ++t) {
        ++p[perm[t]];
        verts.push_back(vid(p));
        corners.push_back(corner(p));
      }
      K.add_top(verts, perm_parity(perm), GeomCell{ParamKind::WrapAll, corners});
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return K;
}

// S^2 as the radially projected octahedron with 2^level subdivisions per
// edge: 8 * 4^level curved triangles oriented outward. Vertices are keyed by
// their integer pre-projection points, so faces share them exactly.
struct OctaMesh {
  SimplicialComplex mesh;
  std::map<std::array<int, 3>, int> ids;
  int N = 1;

  int vid(const std::array<int, 3>& p) const { return ids.at(p); }
};

inline OctaMesh sphere_octa_mesh(int level) {
  require(level >= 0 && level <= 6, "octa mesh level in 0..6");
  OctaMesh M;
  M.N = 1 << level;
  auto vid = [&](const std::array<int, 3>& p) {
    auto [it, fresh] = M.ids.emplace(p, (int)M.ids.size());
    (void)fresh;
    return it->second;
  };
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        std::array<int, 3> a{sx, 0, 0}, b{0, sy, 0}, c{0, 0, sz};
        if (sx * sy * sz < 0) std::swap(a, b);  // keep det[a b c] positive
        auto P = [&](int i, int j) {
          int k = M.N - i - j;
          return std::array<int, 3>{i * a[0] + j * b[0] + k * c[0],
                                    i * a[1] + j * b[1] + k * c[1],
                                    i * a[2] + j * b[2] + k * c[2]};
        };
        auto add = [&](std::array<int, 3> p0, std::array<int, 3> p1,
                       std::array<int, 3> p2) {
          std::vector<int> verts{vid(p0), vid(p1), vid(p2)};
          std::vector<VecD> corners{{(double)p0[0], (double)p0[1], (double)p0[2]},
                                    {(double)p1[0], (double)p1[1], (double)p1[2]},
                                    {(double)p2[0], (double)p2[1], (double)p2[2]}};
          M.mesh.add_top(verts, 1, GeomCell{ParamKind::NormalizeAll, corners});
        };
        for (int i = 0; i + 1 <= M.N; ++i)
          for (int j = 0; i + j + 1 <= M.N; ++j) {
            add(P(i, j), P(i + 1, j), P(i, j + 1));
            if (i + j + 2 <= M.N) add(P(i + 1, j), P(i + 1, j + 1), P(i, j + 1));
          }
      }
  return M;
}

// the z = 0 circle of the octa mesh, oriented counterclockwise seen from +z
inline SimplicialComplex equator_complex(const OctaMesh& M) {
  SimplicialComplex E;
  const std::array<std::array<int, 3>, 4> dirs{
      {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}}};
  for (int q = 0; q < 4; ++q) {
    auto u = dirs[q], v = dirs[(q + 1) % 4];
    for (int t = 0; t < M.N; ++t) {
      auto at = [&](int s) {
        return std::array<int, 3>{(M.N - s) * u[0] + s * v[0],
                                  (M.N - s) * u[1] + s * v[1], 0};
      };
      auto p0 = at(t), p1 = at(t + 1);
      std::vector<VecD> corners{{(double)p0[0], (double)p0[1], 0.0},
                                {(double)p1[0], (double)p1[1], 0.0}};
      E.add_top({M.vid(p0), M.vid(p1)}, 1,
                GeomCell{ParamKind::NormalizeAll, corners});
    }
  }
  return E;
}

// top cells lying in z >= 0 (sign +1) or z <= 0 (sign -1)
inline Chain hemisphere_chain(const OctaMesh& M, int sign) {
  Chain out;
  for (const auto& [key, coef] : M.mesh.fundamental) {
    const GeomCell& geo = M.mesh.geom(key);
    bool in = true;
    for (const VecD& c : geo.corners) in = in && sign * c[2] >= 0;
    if (in) out[key] = coef;
  }
  return out;
}

// Abstract fundamental cycle of the nerve of a torus-like cover, built as the
// shuffle product of the per axis three chart cycles [01] + [12] - [02];
// `composer` turns a digit vector into a chart id.  The global sign orients
// the cycle so pairing against data with curvature b dx_1..dx_d yields +b.
inline Chain torus_nerve_cycle(int d, const std::function<int(const std::vector<int>&)>& composer) {
  struct AxisEdge {
    int lo, hi, coef;
  };
  static const std::array<AxisEdge, 3> kEdges{{{0, 1, 1}, {1, 2, 1}, {0, 2, -1}}};
  long long orient = d % 2 == 0 ? 1 : -1;
  Chain out;
  std::vector<int> choice(d, 0), perm(d);
  while (true) {
    long long base_coef = orient;
    for (int k = 0; k < d; ++k) base_coef *= kEdges[choice[k]].coef;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> digits(d);
      for (int k = 0; k < d; ++k) digits[k] = kEdges[choice[k]].lo;
      std::vector<int> verts{composer(digits)};
      for (int t = 0; t < d; ++t) {
        digits[perm[t]] = kEdges[choice[perm[t]]].hi;
        verts.push_back(composer(digits));
      }
      chain_add(out, verts, base_coef * perm_parity(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    int k = 0;
    while (k < d && ++choice[k] == 3) choice[k++] = 0;
    if (k == d) break;
  }
  return out;
}

inline Chain torus_nerve_cycle(int d) {
  return torus_nerve_cycle(d, [](const std::vector<int>& digits) {
    int id = 0;
    for (int k = (int)digits.size() - 1; k >= 0; --k) id = id * 3 + digits[k];
    return id;
  });
}

// nerve 2-cycle of the caps-and-sectors sphere cover: the suspension of the
// sector square by the two caps, eight triangles
inline Chain sphere_nerve_2cycle() {
  struct Edge {
    int u, v;
    long long coef;
  };
  static const std::array<Edge, 4> square{{{2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {2, 5, -1}}};
  Chain out;
  for (const Edge& e : square) {
    chain_add(out, {0, e.u, e.v}, e.coef);
    chain_add(out, {1, e.u, e.v}, -e.coef);
  }
  return out;
}

}  // namespace dlg
