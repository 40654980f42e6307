// Scenario execution: one task per file, checks assembled into a JSON report
// and a CSV summary.  Reports carry no wall-clock data, so equal scenario and
// seed give byte-identical output; timings go to stderr in the driver.

#pragma once

#include <memory>

#include "dlg/character.hpp"
#include "dlg/io.hpp"
#include "dlg/meshes.hpp"
#include "dlg/multiplicative.hpp"

namespace dlg {

struct CheckRow {
  std::string group;  // task kind or suite name
  std::string name;
  std::string value;
  bool pass = true;
  Json extra = Json::object();
};

struct ScenarioRun {
  Json report;
  std::string csv;
  bool all_pass = true;
};

struct ScenarioOverrides {
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

namespace detail {

inline void push_row(std::vector<CheckRow>& rows, CheckRow row) {
  rows.push_back(std::move(row));
}

inline Angle complex_angle(std::complex<double> h) {
  return Angle::real(std::atan2(h.imag(), h.real()) / (2.0 * M_PI));
}

// expected angle: "p/q" string or plain number
inline double expected_value(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    require(slash != std::string::npos, "expected angle string wants p/q");
    long long p = std::stoll(s.substr(0, slash));
    long long q = std::stoll(s.substr(slash + 1));
    require(q != 0, "expected angle denominator is zero");
    return double(p) / double(q);
  }
  return j.get<double>();
}

// named cochain families with their covers held alive alongside
struct CochainBundle {
  std::unique_ptr<Cover> base;
  std::unique_ptr<ProductCover> prod;
  std::unique_ptr<DeligneCochain> xi;
  bool on_sphere = false;
};

inline CochainBundle cochain_bundle_from_json(const Json& j) {
  require(j.is_object() && j.contains("name"), "cocycle input wants a name");
  std::string name = j.at("name").get<std::string>();
  CochainBundle b;
  if (name == "monopole") {
    auto sphere = std::make_unique<SphereCover>(SphereCover::two_chart());
    b.xi = std::make_unique<DeligneCochain>(monopole(*sphere, j.at("n").get<int>()));
    b.base = std::move(sphere);
    b.on_sphere = true;
    return b;
  }
  if (name == "flat_gerbe") {
    auto torus = std::make_unique<BoxTorusCover>(j.value("dim", 2));
    b.xi = std::make_unique<DeligneCochain>(flat_gerbe(*torus, j.at("b").get<double>()));
    b.base = std::move(torus);
    return b;
  }
  if (name == "torus_volume") {
    auto torus = std::make_unique<BoxTorusCover>(j.value("dim", 2));
    b.xi = std::make_unique<DeligneCochain>(
        torus_volume_cocycle(*torus, j.at("b").get<long long>()));
    b.base = std::move(torus);
    return b;
  }
  if (name == "flat_3form") {
    auto torus = std::make_unique<BoxTorusCover>(j.value("base_dim", 2));
    b.prod = std::make_unique<ProductCover>(torus.get());
    b.xi = std::make_unique<DeligneCochain>(flat_3form(*b.prod, j.at("b").get<double>()));
    b.base = std::move(torus);
    return b;
  }
  throw std::runtime_error("unknown cocycle family: " + name);
}

// ------------------------------------------------------------------ tasks

inline std::vector<CheckRow> run_check_cocycle(const Json& in, double tol,
                                               std::uint64_t seed) {
  CochainBundle b = cochain_bundle_from_json(in.at("cocycle"));
  CocycleCheckOpts opts;
  opts.samples = in.value("samples", 8);
  opts.seed = seed;
  CocycleReport rep = deligne_differential(*b.xi, opts);
  std::vector<CheckRow> rows;
  for (const auto& r : rep.rungs) {
    CheckRow row;
    row.group = "check-cocycle";
    row.name = "rung " + std::to_string(r.r) + " residual";
    row.value = num_str(r.max_residual);
    row.pass = r.max_residual <= tol;
    rows.push_back(row);
  }
  Curvature cur = curvature(*b.xi, opts);
  CheckRow cm;
  cm.group = "check-cocycle";
  cm.name = "curvature chart agreement";
  cm.value = num_str(cur.max_mismatch);
  cm.pass = cur.max_mismatch <= tol;
  rows.push_back(cm);
  return rows;
}

inline std::vector<CheckRow> run_holonomy(const Json& in, double tol,
                                          std::uint64_t) {
  CochainBundle b = cochain_bundle_from_json(in.at("cocycle"));
  const Json& cyc = in.at("cycle");
  std::string kind = cyc.at("kind").get<std::string>();
  std::complex<double> h;
  if (kind == "equator") {
    require(b.on_sphere, "equator cycles live on the sphere cover");
    OctaMesh M = sphere_octa_mesh(cyc.value("level", 3));
    SimplicialComplex E = equator_complex(M);
    Subordination sub = greedy_subordination(E, *b.base);
    h = holonomy(*b.xi, E, sub, E.fundamental);
  } else if (kind == "torus") {
    require(!b.on_sphere, "torus cycles live on a torus cover");
    SimplicialComplex K = torus_mesh(b.base->ambient_dim(), cyc.value("n", 6));
    Subordination sub = greedy_subordination(K, *b.base);
    h = holonomy(*b.xi, K, sub, K.fundamental);
  } else {
    throw std::runtime_error("unknown cycle kind: " + kind);
  }
  Angle a = complex_angle(h);
  CheckRow row;
  row.group = "holonomy";
  row.name = "holonomy angle";
  row.value = a.str();
  row.extra["re"] = num_str(h.real());
  row.extra["im"] = num_str(h.imag());
  if (auto snap = snap_rational(a.value(), 64, std::max(tol, 1e-9)))
    row.extra["nearest_rational"] =
        std::to_string(snap->first) + "/" + std::to_string(snap->second);
  if (in.contains("expected")) {
    double want = expected_value(in.at("expected"));
    double defect = int_defect(a.value() - want);
    row.extra["expected_defect"] = num_str(defect);
    row.pass = defect <= tol;
  }
  return {row};
}

inline std::vector<CheckRow> run_transgress(const Json& in, double tol,
                                            std::uint64_t seed) {
  double bval = in.at("b").get<double>();
  BoxTorusCover base(2);
  ProductCover P(&base);
  DeligneCochain xi = flat_3form(P, bval);
  DifferentialCharacter chi = transgress_over_circle(xi);
  SimplicialComplex K = torus_mesh(2, in.value("n", 3));
  Subordination sub = greedy_subordination(K, base);
  std::complex<double> h = chi.hol(K, sub, K.fundamental);
  std::complex<double> want = Angle::real(bval).unit();

  std::vector<CheckRow> rows;
  CheckRow hw;
  hw.group = "transgress";
  hw.name = "flat holonomy phase";
  Angle a = complex_angle(h);
  hw.value = a.str();
  hw.extra["defect"] = num_str(std::abs(h - want));
  hw.pass = std::abs(h - want) <= tol;
  rows.push_back(hw);

  // the output of a flat input is flat
  Rng rng(seed);
  double worst = 0.0;
  int samples = in.value("samples", 20);
  if (!form_is_zero(chi.curvature))
    for (int s = 0; s < samples; ++s) {
      VecD x = base.ambient_uniform(rng);
      worst = std::max(worst,
                       std::abs(chi.curvature.eval(x, base.tangent_frame(x))));
    }
  CheckRow cv;
  cv.group = "transgress";
  cv.name = "output curvature vanishes";
  cv.value = num_str(worst);
  cv.pass = worst <= tol;
  rows.push_back(cv);
  return rows;
}

inline std::vector<CheckRow> run_dw(const Json& in, double tol, std::uint64_t,
                                    const std::string& base_dir) {
  FiniteGroupModel G = group_from_json(in.at("group"));
  GroupCochain omega = group_cochain_from_json(G, in.at("cocycle"));
  DeltaComplex3 M = complex_from_json(in.at("manifold"), base_dir);
  DwResult r = dw_invariant(M, G, omega);
  std::complex<double> v = r.value();
  CheckRow row;
  row.group = "dw";
  row.name = "dw value";
  row.value = num_str(v.real());
  row.extra["imag"] = num_str(v.imag());
  row.extra["colorings"] = r.colorings;
  Json hist = Json::object();
  for (auto& [q, c] : r.angle_histogram()) {
    std::ostringstream key;
    key << q.numerator() << "/" << q.denominator();
    hist[key.str()] = c;
  }
  row.extra["angle_histogram"] = hist;
  if (in.contains("expected")) {
    double want = expected_value(in.at("expected"));
    double defect = std::hypot(v.real() - want, v.imag());
    row.extra["expected_defect"] = num_str(defect);
    row.pass = defect <= tol;
  }
  return {row};
}

inline std::vector<CheckRow> run_triple(const Json& in, double, std::uint64_t) {
  FiniteGroupModel G = group_from_json(in.at("group"));
  GroupCochain omega = group_cochain_from_json(G, in.at("cocycle"));
  std::vector<CheckRow> rows;

  TripleCheck tc = check_triple(omega);
  CheckRow gr;
  gr.group = "triple";
  gr.name = "group cocycle identity";
  gr.value = tc.pass ? "0/1" : tc.defect.str();
  gr.pass = tc.pass;
  if (!tc.pass) gr.extra["witness"] = tc.witness;
  rows.push_back(gr);

  SimplicialSpace S = nerve_space(G);
  SimplicialCocycleTriple T = triple_from_group_cochain(S, omega);
  TripleReport tr = check_triple(T);
  CheckRow dr;
  dr.group = "triple";
  dr.name = "descent relations";
  dr.value = tr.pass ? "0/1" : tr.defect.str();
  dr.pass = tr.pass;
  if (!tr.pass) dr.extra["witness"] = tr.describe();
  rows.push_back(dr);
  return rows;
}

inline std::vector<CheckRow> run_cs(const Json& in, double tol, std::uint64_t,
                                    int threads) {
  LatticeConnection A = connection_from_json(in.at("connection"));
  InvariantPolynomial phi{in.value("level", 1)};
  std::vector<CheckRow> rows;
  const Cplx sc(0.0, 1.0 / (2.0 * M_PI));

  if (A.box.dim == 2) {
    CurvatureField F = curvature_2form(A);
    std::vector<int> ns = grid_from_json(in.value("grid", Json(64)), 2, 64);
    double flux = integrate_box(
        A.box, ns,
        [&](const VecD& p) {
          std::array<Mat, 6> f;
          F.components(p, f);
          return (sc * f[0](0, 0)).real();
        },
        threads);
    CheckRow row;
    row.group = "cs";
    row.name = "abelian flux";
    row.value = num_str(flux);
    if (in.contains("expected")) {
      double want = expected_value(in.at("expected"));
      row.extra["expected_defect"] = num_str(std::abs(flux - want));
      row.pass = std::abs(flux - want) <= tol;
    }
    rows.push_back(row);
    return rows;
  }

  if (A.box.dim == 4) {
    std::vector<int> ns = grid_from_json(in.value("grid", Json(24)), 4, 24);
    double period = chern_weil_period(A, phi, ns, 1e-4, threads);
    CheckRow row;
    row.group = "cs";
    row.name = "chern-weil period";
    row.value = num_str(period);
    if (in.contains("expected")) {
      double want = expected_value(in.at("expected"));
      row.extra["expected_defect"] = num_str(std::abs(period - want));
      row.pass = std::abs(period - want) <= tol;
    }
    rows.push_back(row);
    return rows;
  }

  require(A.box.dim == 3, "cs task wants a 2, 3 or 4 dimensional domain");
  std::vector<int> ns = grid_from_json(in.value("grid", Json(16)), 3, 16);
  double expl = cs_explicit(A, phi.level, ns);
  double path = cs_path_functional(A, phi, ns);

  CheckRow er;
  er.group = "cs";
  er.name = "explicit functional";
  er.value = num_str(expl);
  if (in.contains("expected")) {
    double want = expected_value(in.at("expected"));
    er.extra["expected_defect"] = num_str(std::abs(expl - want));
    er.pass = std::abs(expl - want) <= tol;
  }
  rows.push_back(er);

  CheckRow pr;
  pr.group = "cs";
  pr.name = "path functional";
  pr.value = num_str(path);
  rows.push_back(pr);

  CheckRow xr;
  xr.group = "cs";
  xr.name = "path minus explicit";
  xr.value = num_str(path - expl);
  if (in.contains("cross_tolerance"))
    xr.pass = std::abs(path - expl) <= in.at("cross_tolerance").get<double>();
  rows.push_back(xr);

  if (in.contains("gauge")) {
    GaugeTransformation g = gauge_from_json(in.at("gauge"));
    GaugeShiftReport rep = gauge_shift_check(A, g, phi, ns, tol);
    CheckRow sr;
    sr.group = "cs";
    sr.name = "gauge shift is an integer";
    sr.value = num_str(rep.shift);
    sr.extra["before"] = num_str(rep.before);
    sr.extra["after"] = num_str(rep.after);
    sr.extra["nearest"] = rep.nearest;
    sr.extra["defect"] = num_str(rep.defect);
    sr.pass = rep.pass;
    rows.push_back(sr);

    if (g.N == 2) {
      double deg = gauge_degree(g, in.value("degree_nodes", 32));
      CheckRow dg;
      dg.group = "cs";
      dg.name = "gauge degree";
      dg.value = num_str(deg);
      dg.extra["nearest"] = (long long)std::llround(deg);
      rows.push_back(dg);
    }

    double phase = std::abs(Angle::real(rep.after).unit() -
                            Angle::real(rep.before).unit());
    CheckRow ph;
    ph.group = "cs";
    ph.name = "holonomy phase invariance";
    ph.value = num_str(phase);
    ph.pass = phase <= 2.0 * M_PI * tol;
    rows.push_back(ph);
  }
  return rows;
}

inline std::vector<CheckRow> run_cfield(const Json& in, double tol,
                                        std::uint64_t) {
  CField cf;
  cf.A = connection_from_json(in.at("connection"));
  cf.c = form3_from_json(in.at("c"));
  InvariantPolynomial phi{in.value("level", 1)};
  const Json& gj = in.at("gauge");
  CFieldGauge gauge{connection_from_json(gj.at("alpha")),
                    form3_from_json(gj.value("curvature", Json{{"family", "zero"}}))};
  std::vector<Cycle3> cycles;
  for (const Json& cj : in.at("cycles")) cycles.push_back(cycle_from_json(cj));
  std::vector<int> ns = grid_from_json(in.value("grid", Json(16)), 3, 16);
  CFieldEquivalenceReport rep =
      cfield_equivalence_check(cf, gauge, cycles, phi, ns, tol);
  std::vector<CheckRow> rows;
  for (size_t i = 0; i < rep.items.size(); ++i) {
    const auto& it = rep.items[i];
    CheckRow row;
    row.group = "cfield";
    row.name = "cycle " + std::to_string(i) + " holonomy defect";
    row.value = num_str(it.defect);
    row.extra["det"] = it.cycle.det();
    row.extra["before"] = num_str(it.before);
    row.extra["after"] = num_str(it.after);
    row.pass = it.defect <= tol;
    rows.push_back(row);
  }
  CheckRow worst;
  worst.group = "cfield";
  worst.name = "worst defect";
  worst.value = num_str(rep.worst);
  worst.pass = rep.pass;
  rows.push_back(worst);
  return rows;
}

// ------------------------------------------------------------------ suites

inline std::vector<CheckRow> suite_invariance(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  SphereCover two = SphereCover::two_chart();
  OctaMesh M = sphere_octa_mesh(3);
  SimplicialComplex E = equator_complex(M);
  Subordination sub = greedy_subordination(E, two);
  for (int n : {1, 2}) {
    DeligneCochain xi = monopole(two, n);
    std::complex<double> h = holonomy(xi, E, sub, E.fundamental);
    std::complex<double> want = Angle::real(0.5 * n).unit();
    CheckRow row;
    row.group = "invariance";
    row.name = "monopole " + std::to_string(n) + " equator parity";
    row.value = num_str(std::abs(h - want));
    row.pass = std::abs(h - want) <= 1e-6;
    rows.push_back(row);

    DeligneCochain shifted =
        add_cochains(xi, coboundary(random_potential(1, two, seed + n)));
    std::complex<double> h2 = holonomy(shifted, E, sub, E.fundamental);
    CheckRow inv;
    inv.group = "invariance";
    inv.name = "monopole " + std::to_string(n) + " coboundary invariance";
    inv.value = num_str(std::abs(h - h2));
    inv.pass = std::abs(h - h2) <= 1e-6;
    rows.push_back(inv);
  }

  BoxTorusCover T2(2);
  SimplicialComplex K = torus_mesh(2, 6);
  Subordination ts = greedy_subordination(K, T2);
  DeligneCochain xi = flat_gerbe(T2, 1.0 / 3.0);
  std::complex<double> h = holonomy(xi, K, ts, K.fundamental);
  CheckRow flat;
  flat.group = "invariance";
  flat.name = "flat gerbe third phase";
  flat.value = num_str(std::abs(h - Angle::exact(1, 3).unit()));
  flat.pass = std::abs(h - Angle::exact(1, 3).unit()) <= 1e-9;
  rows.push_back(flat);

  DeligneCochain shifted =
      add_cochains(xi, coboundary(random_potential(2, T2, seed + 11)));
  std::complex<double> h2 = holonomy(shifted, K, ts, K.fundamental);
  CheckRow inv;
  inv.group = "invariance";
  inv.name = "flat gerbe coboundary invariance";
  inv.value = num_str(std::abs(h - h2));
  inv.pass = std::abs(h - h2) <= 1e-6;
  rows.push_back(inv);
  return rows;
}

inline std::vector<CheckRow> suite_transgression(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  BoxTorusCover base(2);
  ProductCover P(&base);
  SimplicialComplex K = torus_mesh(2, 3);
  Subordination sub = greedy_subordination(K, base);
  Rng rng(seed);
  const std::pair<long long, long long> bs[] = {{0, 1}, {1, 4}, {1, 3}, {1, 2}};
  for (auto [p, q] : bs) {
    Angle b = Angle::exact(p, q);
    DeligneCochain xi = flat_3form(P, b.value());
    DifferentialCharacter chi = transgress_over_circle(xi);
    std::complex<double> h = chi.hol(K, sub, K.fundamental);
    CheckRow row;
    row.group = "transgression";
    row.name = "flat phase " + b.str();
    row.value = num_str(std::abs(h - b.unit()));
    row.pass = std::abs(h - b.unit()) <= 1e-9;
    rows.push_back(row);

    double worst = 0.0;
    if (!form_is_zero(chi.curvature))
      for (int s = 0; s < 10; ++s) {
        VecD x = base.ambient_uniform(rng);
        worst = std::max(worst,
                         std::abs(chi.curvature.eval(x, base.tangent_frame(x))));
      }
    CheckRow cv;
    cv.group = "transgression";
    cv.name = "flat curvature " + b.str();
    cv.value = num_str(worst);
    cv.pass = worst <= 1e-12;
    rows.push_back(cv);
  }
  return rows;
}

inline std::vector<CheckRow> suite_multiplicativity(std::uint64_t) {
  std::vector<CheckRow> rows;
  for (int n : {2, 3, 4}) {
    FiniteGroupModel G = cyclic_group(n);
    for (int k = 0; k < n; ++k) {
      SurfaceCharacter chi = psi_finite_group(G, cyclic_cocycle(G, k));
      auto value = [&chi](int a, int b) { return chi.torus_value(a, b); };
      MultiplicativityReport rep =
          multiplicativity_check(G, value, all_commuting_pairs(G));
      CheckRow row;
      row.group = "multiplicativity";
      row.name = "cyclic " + std::to_string(n) + " cocycle " + std::to_string(k);
      row.value = num_str(rep.worst);
      row.extra["pairs"] = rep.checked;
      row.pass = rep.all_zero;
      rows.push_back(row);
    }
  }

  // a character bent away from any state sum must be caught
  FiniteGroupModel G3 = cyclic_group(3);
  SurfaceCharacter chi = psi_finite_group(G3, cyclic_cocycle(G3, 1));
  auto bent = [&chi](int a, int b) {
    Angle v = chi.torus_value(a, b);
    if (a == 1 && b == 1) v = v + Angle::exact(1, 7);
    return v;
  };
  MultiplicativityReport rep =
      multiplicativity_check(G3, bent, all_commuting_pairs(G3));
  CheckRow row;
  row.group = "multiplicativity";
  row.name = "perturbed character detected";
  row.value = num_str(rep.worst);
  row.pass = !rep.all_zero && rep.worst > 0.0;
  rows.push_back(row);
  return rows;
}

inline std::vector<CheckRow> suite_cs_gauge(std::uint64_t) {
  std::vector<CheckRow> rows;
  const InvariantPolynomial phi{1};

  // commuting diagonal background: no shift at all
  LatticeConnection D =
      constant_connection(su2_alg(0, 0, 0.3), su2_alg(0, 0, 0.1), su2_alg(0, 0, 0.7));
  GaugeShiftReport s0 =
      gauge_shift_check(D, abelian_exponential_gauge(2), phi, {12, 12, 12});
  CheckRow r0;
  r0.group = "cs-gauge";
  r0.name = "diagonal exponential shift vanishes";
  r0.value = num_str(s0.shift);
  r0.pass = std::abs(s0.shift) <= 1e-6;
  rows.push_back(r0);

  // winding gauge on the flat background: the frozen constant times degree
  LatticeConnection flat = flat_connection(2, torus_box(3));
  LatticeConnection pure = gauge_transform(flat, bump_gauge(1));
  double expl = cs_explicit(pure, 1, {24, 24, 24});
  double deg = gauge_degree(bump_gauge(1), 32);
  CheckRow r1;
  r1.group = "cs-gauge";
  r1.name = "pure gauge explicit value is twice the degree";
  r1.value = num_str(expl);
  r1.pass = std::abs(expl - 2.0) <= 1e-3;
  rows.push_back(r1);
  CheckRow r2;
  r2.group = "cs-gauge";
  r2.name = "winding oracle degree";
  r2.value = num_str(deg);
  r2.pass = std::abs(deg - 1.0) <= 1e-3;
  rows.push_back(r2);

  // winding gauge on a wave background
  LatticeConnection A = su2_wave_connection(0.4);
  GaugeShiftReport s1 = gauge_shift_check(A, bump_gauge(1), phi, {24, 24, 24});
  CheckRow r3;
  r3.group = "cs-gauge";
  r3.name = "wave background shift is integral";
  r3.value = num_str(s1.shift);
  r3.extra["nearest"] = s1.nearest;
  r3.extra["defect"] = num_str(s1.defect);
  r3.pass = s1.pass && s1.nearest == 2;
  rows.push_back(r3);

  double phase =
      std::abs(Angle::real(s1.after).unit() - Angle::real(s1.before).unit());
  CheckRow r4;
  r4.group = "cs-gauge";
  r4.name = "holonomy phase invariance";
  r4.value = num_str(phase);
  r4.pass = phase <= 2.0 * M_PI * 1e-3;
  rows.push_back(r4);
  return rows;
}

inline std::vector<CheckRow> run_suites(const Json& in, std::uint64_t seed) {
  std::vector<std::string> names;
  if (in.contains("suites") && !in.at("suites").empty())
    for (const Json& s : in.at("suites")) names.push_back(s.get<std::string>());
  else
    names = {"invariance", "transgression", "multiplicativity", "cs-gauge"};
  std::vector<CheckRow> rows;
  for (const std::string& n : names) {
    std::vector<CheckRow> part;
    if (n == "invariance")
      part = suite_invariance(seed);
    else if (n == "transgression")
      part = suite_transgression(seed);
    else if (n == "multiplicativity")
      part = suite_multiplicativity(seed);
    else if (n == "cs-gauge")
      part = suite_cs_gauge(seed);
    else
      throw std::runtime_error("unknown suite name: " + n);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline ScenarioRun run_scenario(const Json& sc, const std::string& base_dir,
                                const ScenarioOverrides& over = {}) {
  require(sc.is_object(), "scenario must be a JSON object");
  require(sc.contains("task"), "scenario wants a task field");
  std::string task = sc.at("task").get<std::string>();
  double tol = over.tolerance ? *over.tolerance : sc.value("tolerance", 1e-6);
  require(tol > 0.0, "tolerance must be positive");
  std::uint64_t seed =
      over.seed ? *over.seed : sc.value("seed", (std::uint64_t)2026);
  int threads = over.threads ? *over.threads : sc.value("threads", 1);
  require(threads >= 1, "threads must be at least one");

  std::vector<CheckRow> rows;
  if (task == "check-cocycle")
    rows = detail::run_check_cocycle(sc, tol, seed);
  else if (task == "holonomy")
    rows = detail::run_holonomy(sc, tol, seed);
  else if (task == "transgress")
    rows = detail::run_transgress(sc, tol, seed);
  else if (task == "dw")
    rows = detail::run_dw(sc, tol, seed, base_dir);
  else if (task == "triple")
    rows = detail::run_triple(sc, tol, seed);
  else if (task == "cs")
    rows = detail::run_cs(sc, tol, seed, threads);
  else if (task == "cfield")
    rows = detail::run_cfield(sc, tol, seed);
  else if (task == "suite")
    rows = detail::run_suites(sc, seed);
  else
    throw std::runtime_error("unknown task kind: " + task);

  ScenarioRun out;
  Json checks = Json::array();
  for (const CheckRow& r : rows) {
    Json c;
    c["group"] = r.group;
    c["name"] = r.name;
    c["value"] = r.value;
    c["pass"] = r.pass;
    if (!r.extra.empty()) c["detail"] = r.extra;
    checks.push_back(c);
    out.all_pass = out.all_pass && r.pass;
  }
  out.report["tool"] = "deligne";
  out.report["task"] = task;
  out.report["seed"] = seed;
  out.report["threads"] = threads;
  out.report["tolerance"] = num_str(tol);
  out.report["inputs"] = sc;
  out.report["checks"] = checks;
  out.report["pass"] = out.all_pass;

  std::ostringstream csv;
  csv << "group,check,value,pass\n";
  for (const CheckRow& r : rows)
    csv << detail::csv_escape(r.group) << ',' << detail::csv_escape(r.name)
        << ',' << detail::csv_escape(r.value) << ','
        << (r.pass ? "true" : "false") << '\n';
  out.csv = csv.str();
  return out;
}

}  // namespace dlg
