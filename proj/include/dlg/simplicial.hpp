#pragma once
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "dlg/base.hpp"
#include "dlg/geometry.hpp"
#include "dlg/quadrature.hpp"

// Simplicial chains keyed by sorted vertex ids, geometric cells carrying a
// parametrization of the unit simplex into ambient space, and the mesh
// surgery every holonomy computation relies on: boundaries, subordination to
// cover charts, barycentric subdivision, and products with a circle.

namespace dlg {

using VKey = std::vector<int>;  // strictly increasing vertex ids

// coefficients are stored against the sorted vertex order
using Chain = std::map<VKey, long long>;

inline int perm_parity(const std::vector<int>& perm) {
  int sign = 1;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

// sorts `verts`, returns the permutation sign, 0 when a vertex repeats
inline int sort_key_sign(std::vector<int>& verts) {
  int sign = 1;
  for (size_t i = 1; i < verts.size(); ++i) {
    size_t j = i;
    while (j > 0 && verts[j - 1] > verts[j]) {
      std::swap(verts[j - 1], verts[j]);
      sign = -sign;
      --j;
    }
  }
  for (size_t i = 1; i < verts.size(); ++i)
    if (verts[i] == verts[i - 1]) return 0;
  return sign;
}

inline void chain_add(Chain& c, std::vector<int> oriented, long long coef) {
  int sign = sort_key_sign(oriented);
  if (sign == 0 || coef == 0) return;
  long long& slot = c[oriented];
  slot += sign * coef;
  if (slot == 0) c.erase(oriented);
}

inline Chain chain_sum(const Chain& a, const Chain& b) {
  Chain out = a;
  for (const auto& [k, v] : b) {
    long long& slot = out[k];
    slot += v;
    if (slot == 0) out.erase(k);
  }
  return out;
}

inline VKey key_drop(const VKey& key, int m) {
  VKey f = key;
  f.erase(f.begin() + m);
  return f;
}

inline Chain boundary(const Chain& c) {
  Chain out;
  for (const auto& [key, coef] : c) {
    if (key.size() < 2) continue;
    long long s = 1;
    for (size_t m = 0; m < key.size(); ++m) {
      chain_add(out, key_drop(key, (int)m), s * coef);
      s = -s;
    }
  }
  return out;
}

// how a cell's affine corner combination maps to ambient space
enum class ParamKind {
  Affine,                  // ambient is the combination itself
  WrapAll,                 // torus: reduce every coordinate mod 1
  NormalizeAll,            // sphere: radial projection to the unit sphere
  WrapFirstNormalizeRest,  // circle times sphere products
};

// corners live in parameter space and follow the sorted vertex order of the
// owning key; they need not lie on the manifold (radial projection and mod 1
// reduction happen in pos), which keeps subdivision an exact retiling
struct GeomCell {
  ParamKind kind = ParamKind::Affine;
  std::vector<VecD> corners;

  bool geometric() const { return !corners.empty(); }
  int dim() const { return (int)corners.size() - 1; }

  VecD combo(const VecD& lam) const {
    VecD w = corners[0];
    for (size_t m = 0; m < lam.size(); ++m) w = w + lam[m] * (corners[m + 1] - corners[0]);
    return w;
  }

  VecD map_point(VecD w) const {
    switch (kind) {
      case ParamKind::Affine:
        return w;
      case ParamKind::WrapAll:
        for (double& x : w) x = dfrac(x);
        return w;
      case ParamKind::NormalizeAll:
        return normalize3(w);
      case ParamKind::WrapFirstNormalizeRest: {
        VecD tail = normalize3(VecD(w.begin() + 1, w.end()));
        VecD out{dfrac(w[0])};
        out.insert(out.end(), tail.begin(), tail.end());
        return out;
      }
    }
    return w;
  }

  VecD pos(const VecD& lam) const { return map_point(combo(lam)); }
  VecD corner_pos(int m) const { return map_point(corners[m]); }

  // ambient tangent columns d pos / d lam_m
  std::vector<VecD> jac(const VecD& lam) const {
    std::vector<VecD> cols;
    cols.reserve(lam.size());
    VecD w = combo(lam);
    for (size_t m = 0; m < lam.size(); ++m) {
      VecD e = corners[m + 1] - corners[0];
      switch (kind) {
        case ParamKind::Affine:
        case ParamKind::WrapAll:
          cols.push_back(e);
          break;
        case ParamKind::NormalizeAll: {
          double n = norm(w);
          VecD u = (1.0 / n) * w;
          cols.push_back((1.0 / n) * (e - dot(u, e) * u));
          break;
        }
        case ParamKind::WrapFirstNormalizeRest: {
          VecD wt(w.begin() + 1, w.end()), et(e.begin() + 1, e.end());
          double n = norm(wt);
          VecD u = (1.0 / n) * wt;
          VecD ct = (1.0 / n) * (et - dot(u, et) * u);
          VecD col{e[0]};
          col.insert(col.end(), ct.begin(), ct.end());
          cols.push_back(col);
          break;
        }
      }
    }
    return cols;
  }

  GeomCell face(int drop) const {
    GeomCell f{kind, corners};
    if (geometric()) f.corners.erase(f.corners.begin() + drop);
    return f;
  }
};

struct SimplicialComplex {
  const Cover* cover = nullptr;  // null for purely combinatorial complexes
  int top_dim = -1;
  std::vector<std::map<VKey, GeomCell>> cells;  // by dimension
  Chain fundamental;                            // signed top cells
  std::map<int, VecD> vert_pos;                 // ambient vertex positions

  bool has_cell(const VKey& key) const {
    int d = (int)key.size() - 1;
    return d >= 0 && d < (int)cells.size() && cells[d].count(key) > 0;
  }

  const GeomCell& geom(const VKey& key) const {
    int d = (int)key.size() - 1;
    require(d >= 0 && d < (int)cells.size(), "no cells of this dimension");
    auto it = cells[d].find(key);
    require(it != cells[d].end(), "unknown cell key");
    return it->second;
  }

  // registers the oriented top simplex with coefficient coef; corners of geo
  // follow the order of `oriented`; all faces are registered too
  void add_top(std::vector<int> oriented, long long coef, GeomCell geo) {
    int d = (int)oriented.size() - 1;
    require(top_dim < 0 || top_dim == d, "mixed top dimensions");
    top_dim = d;
    if ((int)cells.size() < d + 1) cells.resize(d + 1);
    // co-sort corners with the vertex ids
    if (geo.geometric()) {
      std::vector<int> order(oriented.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return oriented[a] < oriented[b]; });
      std::vector<VecD> sorted_corners;
      for (int idx : order) sorted_corners.push_back(geo.corners[idx]);
      geo.corners = std::move(sorted_corners);
    }
    int sign = sort_key_sign(oriented);
    require(sign != 0, "degenerate top simplex");
    long long& slot = fundamental[oriented];
    slot += sign * coef;
    if (slot == 0) fundamental.erase(oriented);
    register_cell(oriented, geo);
  }

  void register_cell(const VKey& key, const GeomCell& geo) {
    int d = (int)key.size() - 1;
    if ((int)cells.size() < d + 1) cells.resize(d + 1);
    auto [it, fresh] = cells[d].emplace(key, geo);
    if (!fresh) return;  // faces shared between tops agree by construction
    if (geo.geometric()) {
      for (size_t m = 0; m < key.size(); ++m)
        vert_pos.emplace(key[m], geo.corner_pos((int)m));
    }
    if (d > 0)
      for (size_t m = 0; m < key.size(); ++m)
        register_cell(key_drop(key, (int)m), geo.face((int)m));
  }

  long long euler_characteristic() const {
    long long chi = 0;
    long long sign = 1;
    for (const auto& level : cells) {
      chi += sign * (long long)level.size();
      sign = -sign;
    }
    return chi;
  }

  // boundary with key validation against this complex
  Chain boundary_checked(const Chain& c) const {
    for (const auto& [key, coef] : c)
      require(has_cell(key), "chain references a cell outside the complex");
    return boundary(c);
  }
};

using Subordination = std::map<VKey, int>;

// deterministic sample points of a cell: corners plus a symmetric rule
inline std::vector<VecD> cell_sample_points(const GeomCell& geo, int want) {
  std::vector<VecD> pts;
  int d = geo.dim();
  for (int m = 0; m <= d; ++m) pts.push_back(geo.corner_pos(m));
  if (d == 0) return pts;
  for (int s = 1; (int)pts.size() < want && s <= 4; ++s)
    for (const QuadNode& n : gm_rule(d, s)) pts.push_back(geo.pos(n.x));
  if ((int)pts.size() > want && want > 0) pts.resize(want);
  return pts;
}

// first chart whose membership test passes at every sample of every cell
inline Subordination greedy_subordination(const SimplicialComplex& K,
                                          const Cover& U, int samples = 12) {
  Subordination sub;
  for (const auto& level : K.cells) {
    for (const auto& [key, geo] : level) {
      require(geo.geometric(), "subordination needs geometric cells");
      auto pts = cell_sample_points(geo, samples);
      int pick = -1;
      for (int c = 0; c < U.num_charts() && pick < 0; ++c) {
        bool ok = true;
        for (const VecD& p : pts) ok = ok && U.contains(c, p);
        if (ok) pick = c;
      }
      require(pick >= 0, "no chart contains a cell; refine the mesh");
      sub[key] = pick;
    }
  }
  return sub;
}

struct SubordinationReport {
  struct Entry {
    VKey face;
    int chart;  // -1 when unassigned
    bool pass;
  };
  std::vector<Entry> entries;
  bool all_pass = true;
};

inline SubordinationReport verify_subordination(const SimplicialComplex& K,
                                                const Cover& U,
                                                const Subordination& sub,
                                                int samples) {
  require(samples >= 1, "need at least one sample");
  SubordinationReport rep;
  for (const auto& level : K.cells) {
    for (const auto& [key, geo] : level) {
      auto it = sub.find(key);
      if (it == sub.end()) {
        rep.entries.push_back({key, -1, false});
        rep.all_pass = false;
        continue;
      }
      bool ok = true;
      for (const VecD& p : cell_sample_points(geo, samples))
        ok = ok && U.contains(it->second, p);
      rep.entries.push_back({key, it->second, ok});
      rep.all_pass = rep.all_pass && ok;
    }
  }
  return rep;
}

// barycentric subdivision. New vertices are indexed by the faces of K in key
// order; each flag permutation of a top cell becomes one new top cell with
// the permutation sign, and corners are the parent-space barycenters of the
// flag faces, so the curved realization retiles the parent exactly. Faces
// inherit the chart of the largest face in their flag, the smallest original
// face containing them.
// complex whose top cells are exactly the cells of a chain, with the chain
// as its fundamental cycle; geometry is shared with the parent
inline SimplicialComplex restrict_to_chain(const SimplicialComplex& K,
                                           const Chain& chain) {
  SimplicialComplex out;
  out.cover = K.cover;
  for (const auto& [key, coef] : chain) {
    if (coef == 0) continue;
    out.add_top(key, coef, K.geom(key));
  }
  return out;
}

struct SubdivisionResult {
  SimplicialComplex complex;
  Subordination sub;
  std::map<VKey, int> face_vertex;  // original face -> new vertex id
};

inline SubdivisionResult barycentric_subdivide(const SimplicialComplex& K,
                                               const Subordination& sub) {
  SubdivisionResult R;
  R.complex.cover = K.cover;
  int next = 0;
  for (const auto& level : K.cells)
    for (const auto& [key, geo] : level) R.face_vertex[key] = next++;

  if (K.top_dim < 0) return R;  // empty stays empty
  std::vector<int> perm(K.top_dim + 1);

  for (const auto& [key, coef] : K.fundamental) {
    const GeomCell& geo = K.geom(key);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int sign = perm_parity(perm);
      std::vector<int> verts;
      std::vector<VecD> corners;
      VKey face;
      VecD bary;
      for (size_t k = 0; k < perm.size(); ++k) {
        face.push_back(key[perm[k]]);
        std::sort(face.begin(), face.end());
        verts.push_back(R.face_vertex.at(face));
        if (geo.geometric()) {
          if (k == 0)
            bary = geo.corners[perm[0]];
          else {  // running mean over the flag face corners
            bary = (double(k) / (k + 1)) * bary +
                   (1.0 / (k + 1)) * geo.corners[perm[k]];
          }
          corners.push_back(bary);
        }
      }
      R.complex.add_top(verts, coef * sign, GeomCell{geo.kind, corners});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  // chart inheritance for every face of the subdivided complex
  std::map<int, VKey> vertex_face;
  for (const auto& [face, vid] : R.face_vertex) vertex_face[vid] = face;
  for (const auto& level : R.complex.cells) {
    for (const auto& [key, geo] : level) {
      (void)geo;
      const VKey* largest = nullptr;
      for (int vid : key) {
        const VKey& f = vertex_face.at(vid);
        if (!largest || f.size() > largest->size()) largest = &f;
      }
      auto it = sub.find(*largest);
      require(it != sub.end(), "original face missing from subordination");
      R.sub[key] = it->second;
    }
  }
  return R;
}

// prism triangulation of S^1 x |K| with n_circle segments. Vertex (s, v)
// becomes s * stride + v; each top d-cell and segment s contribute d+1
// simplices with alternating signs, which is what makes the product of a
// cycle a cycle. Circle corners are lifted, not wrapped, inside each prism.
inline SimplicialComplex product_with_circle(const SimplicialComplex& K,
                                             int n_circle) {
  require(n_circle >= 3, "need at least three circle segments");
  SimplicialComplex P;
  int stride = 0;
  for (const auto& level : K.cells)
    for (const auto& [key, geo] : level) {
      (void)geo;
      for (int v : key) stride = std::max(stride, v + 1);
    }

  for (const auto& [key, coef] : K.fundamental) {
    const GeomCell& geo = K.geom(key);
    int d = (int)key.size() - 1;
    ParamKind kind = ParamKind::WrapAll;
    if (geo.geometric() && (geo.kind == ParamKind::NormalizeAll ||
                            geo.kind == ParamKind::WrapFirstNormalizeRest))
      kind = ParamKind::WrapFirstNormalizeRest;
    for (int s = 0; s < n_circle; ++s) {
      for (int m = 0; m <= d; ++m) {
        // (s,v_0) .. (s,v_m), (s+1,v_m) .. (s+1,v_d)
        std::vector<int> verts;
        std::vector<VecD> corners;
        auto push = [&](int lev, int j) {
          verts.push_back((lev % n_circle) * stride + key[j]);
          if (geo.geometric()) {
            VecD c{double(lev) / n_circle};
            c.insert(c.end(), geo.corners[j].begin(), geo.corners[j].end());
            corners.push_back(c);
          }
        };
        for (int j = 0; j <= m; ++j) push(s, j);
        for (int j = m; j <= d; ++j) push(s + 1, j);
        long long sgn = (m % 2 == 0) ? 1 : -1;
        P.add_top(verts, coef * sgn, GeomCell{kind, corners});
      }
    }
  }
  return P;
}

}  // namespace dlg
