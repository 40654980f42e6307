// JSON bridge: named input families, finite data tables, and report assembly.
// Values print as exact rationals when the backend is exact, otherwise as
// 12-significant-digit decimals, so equal inputs always serialize to equal
// bytes.

#pragma once

#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "dlg/chern_simons.hpp"
#include "dlg/group.hpp"
#include "dlg/statesum.hpp"

namespace dlg {

using Json = nlohmann::ordered_json;

inline std::string num_str(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  return format_double(x);
}

inline Json value_entry(double x) { return num_str(x); }
inline Json angle_entry(const Angle& a) { return a.str(); }

// nearest rational p/q with q <= max_den by the Stern-Brocot walk; used only
// to annotate floating angles, never to alter a reported value
inline std::optional<std::pair<long long, long long>> snap_rational(
    double x, long long max_den, double tol) {
  double f = x - std::floor(x);
  long long a = 0, b = 1, c = 1, d = 1;  // f in [a/b, c/d]
  for (int it = 0; it < 128; ++it) {
    long long mn = a + c, md = b + d;
    if (md > max_den) break;
    double m = double(mn) / double(md);
    if (std::abs(f - m) <= tol) return std::make_pair(mn, md);
    if (f < m) {
      c = mn;
      d = md;
    } else {
      a = mn;
      b = md;
    }
  }
  if (std::abs(f - double(a) / double(b)) <= tol) return std::make_pair(a, b);
  if (std::abs(f - double(c) / double(d)) <= tol) return std::make_pair(c, d);
  return std::nullopt;
}

// ---------------------------------------------------------------- finite data

inline FiniteGroupModel group_from_json(const Json& j) {
  require(j.is_object(), "group input must be an object");
  if (j.contains("builtin")) {
    std::string b = j.at("builtin").get<std::string>();
    if (b == "cyclic") return cyclic_group(j.at("n").get<int>());
    if (b == "klein4") return klein_four();
    throw std::runtime_error("unknown builtin group: " + b);
  }
  require(j.contains("order") && j.contains("table"),
          "group table input wants order and table fields");
  int n = j.at("order").get<int>();
  std::vector<int> flat;
  const Json& t = j.at("table");
  require(t.is_array(), "group table must be an array");
  for (const Json& row : t) {
    if (row.is_array())
      for (const Json& x : row) flat.push_back(x.get<int>());
    else
      flat.push_back(row.get<int>());
  }
  std::string name = j.value("name", "table_group");
  return FiniteGroupModel(name, n, std::move(flat));
}

inline GroupCochain group_cochain_from_json(const FiniteGroupModel& G,
                                            const Json& j) {
  require(j.is_object(), "cochain input must be an object");
  if (j.contains("builtin")) {
    std::string b = j.at("builtin").get<std::string>();
    if (b == "trivial") return trivial_group_cochain(G, j.value("degree", 3));
    if (b == "cyclic_cocycle") return cyclic_cocycle(G, j.at("k").get<int>());
    throw std::runtime_error("unknown builtin cochain: " + b);
  }
  // tabulated rational angles: numerators over one denominator, tuples in
  // lexicographic order
  int degree = j.at("degree").get<int>();
  long long den = j.at("den").get<long long>();
  require(den >= 1, "cochain denominator must be positive");
  const Json& tab = j.at("table");
  GroupCochain w(G, degree);
  size_t cells = 1;
  for (int q = 0; q < degree; ++q) cells *= (size_t)G.size();
  require(tab.is_array() && tab.size() == cells,
          "cochain table length must be |G|^degree");
  size_t ix = 0;
  VecI t(degree, 0);
  for (const Json& x : tab) {
    w.set(t, Angle::exact(x.get<long long>(), den));
    for (int q = degree - 1; q >= 0; --q) {
      if (++t[q] < G.size()) break;
      t[q] = 0;
    }
    ++ix;
  }
  return w;
}

inline Json complex_to_json(const DeltaComplex3& M) {
  Json j;
  j["vertices"] = M.n_vertices;
  j["edges"] = M.n_edges;
  Json faces = Json::array();
  for (const auto& f : M.faces) faces.push_back({f.e[0], f.e[1], f.e[2]});
  j["faces"] = faces;
  Json tets = Json::array();
  for (const auto& t : M.tets) {
    Json tj;
    tj["faces"] = {t.f[0], t.f[1], t.f[2], t.f[3]};
    tj["edges"] = {t.e[0], t.e[1], t.e[2], t.e[3], t.e[4], t.e[5]};
    tj["sign"] = t.sign;
    tets.push_back(tj);
  }
  j["tets"] = tets;
  return j;
}

inline DeltaComplex3 complex_from_json_obj(const Json& j) {
  DeltaComplex3 M;
  M.n_vertices = j.at("vertices").get<int>();
  M.n_edges = j.at("edges").get<int>();
  for (const Json& f : j.at("faces")) {
    require(f.is_array() && f.size() == 3, "face wants three edge slots");
    M.faces.push_back({{f[0].get<int>(), f[1].get<int>(), f[2].get<int>()}});
  }
  for (const Json& t : j.at("tets")) {
    DeltaComplex3::Tet tet;
    const Json& tf = t.at("faces");
    const Json& te = t.at("edges");
    require(tf.size() == 4 && te.size() == 6, "tet wants 4 faces and 6 edges");
    for (int i = 0; i < 4; ++i) tet.f[i] = tf[i].get<int>();
    for (int i = 0; i < 6; ++i) tet.e[i] = te[i].get<int>();
    tet.sign = t.value("sign", 1);
    M.tets.push_back(tet);
  }
  validate_complex(M);
  return M;
}

// builtin name, inline object, or sidecar file relative to base_dir
inline DeltaComplex3 complex_from_json(const Json& j, const std::string& base_dir) {
  require(j.is_object(), "manifold input must be an object");
  if (j.contains("builtin")) {
    std::string b = j.at("builtin").get<std::string>();
    if (b == "t3") return torus3_one_vertex();
    if (b == "s3") return sphere3_pentachoron();
    if (b == "s3_join") return sphere3_join(j.value("n", 3), j.value("m", 3));
    if (b == "lens") return lens_space(j.at("n").get<int>());
    throw std::runtime_error("unknown builtin manifold: " + b);
  }
  if (j.contains("file")) {
    std::string path = base_dir + "/" + j.at("file").get<std::string>();
    std::ifstream in(path);
    require(in.good(), "cannot open manifold file: " + path);
    Json mj = Json::parse(in);
    return complex_from_json_obj(mj);
  }
  return complex_from_json_obj(j);
}

// ------------------------------------------------------------ lattice inputs

inline Mat su2_from_json(const Json& j) {
  require(j.is_array() && j.size() == 3, "algebra element wants [a,b,c]");
  return su2_alg(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

inline LatticeConnection connection_from_json(const Json& j);

inline GaugeTransformation gauge_from_json(const Json& j) {
  require(j.is_object() && j.contains("family"), "gauge input wants a family");
  std::string f = j.at("family").get<std::string>();
  if (f == "bump_degree") return bump_gauge(j.at("w").get<int>());
  if (f == "exp_diag") return abelian_exponential_gauge(j.at("w").get<int>());
  if (f == "constant_seed") {
    Rng rng(j.value("seed", 1));
    int n = j.value("size", 2);
    return constant_gauge(random_unitary(n, rng), torus_box(3));
  }
  throw std::runtime_error("unknown gauge family: " + f);
}

inline LatticeConnection connection_from_json(const Json& j) {
  require(j.is_object() && j.contains("family"),
          "connection input wants a family");
  std::string f = j.at("family").get<std::string>();
  if (f == "flat") return flat_connection(j.value("size", 2), torus_box(j.value("dim", 3)));
  if (f == "constant")
    return constant_connection(su2_from_json(j.at("X")), su2_from_json(j.at("Y")),
                               su2_from_json(j.at("Z")));
  if (f == "helical") return abelian_helical_connection(j.at("lam").get<double>());
  if (f == "wave") return su2_wave_connection(j.at("eps").get<double>());
  if (f == "t4_wave") return t4_wave_connection(j.at("eps").get<double>());
  if (f == "abelian_flux") return monopole_connection(j.at("n").get<int>());
  if (f == "product_flux")
    return product_monopole_connection(j.at("n").get<int>(), j.at("m").get<int>());
  if (f == "pure_gauge") {
    GaugeTransformation g = gauge_from_json(j.at("gauge"));
    return gauge_transform(flat_connection(g.N, g.box), g);
  }
  throw std::runtime_error("unknown connection family: " + f);
}

inline FormField form3_from_json(const Json& j) {
  require(j.is_object() && j.contains("family"), "3-form input wants a family");
  std::string f = j.at("family").get<std::string>();
  if (f == "zero") return zero_form(3);
  if (f == "volume")
    return constant_coordinate_form(3, {{{0, 1, 2}, j.at("b").get<double>()}});
  throw std::runtime_error("unknown 3-form family: " + f);
}

inline Cycle3 cycle_from_json(const Json& j) {
  require(j.is_array() && j.size() == 3, "cycle wants a 3x3 integer matrix");
  Cycle3 c;
  for (int r = 0; r < 3; ++r) {
    require(j[r].is_array() && j[r].size() == 3, "cycle row wants 3 integers");
    for (int k = 0; k < 3; ++k) c.m[r][k] = j[r][k].get<long long>();
  }
  return c;
}

inline std::vector<int> grid_from_json(const Json& j, int dim, int fallback) {
  std::vector<int> ns(dim, fallback);
  if (j.is_number_integer()) {
    ns.assign(dim, j.get<int>());
  } else if (j.is_array()) {
    require((int)j.size() == dim, "grid length must match the domain dimension");
    for (int i = 0; i < dim; ++i) ns[i] = j[i].get<int>();
  }
  return ns;
}

}  // namespace dlg
