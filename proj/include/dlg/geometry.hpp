#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "dlg/base.hpp"

// Chart covers of the model manifolds. A cover knows chart membership, the
// chart coordinate maps and their jacobians, which chart tuples actually
// intersect, and how to walk inside an overlap without leaving it. Everything
// downstream (cochain sampling, holonomy pullbacks, winding extraction) goes
// through this interface, so points are always carried in a single ambient
// description: a canonical [0,1)^d representative for tori, a unit vector in
// R^3 for the sphere, and the concatenation of the two for circle products.

namespace dlg {

inline double dfrac(double x) {
  double f = x - std::floor(x);
  return f < 1.0 ? f : 0.0; // floor(x) rounds, keep the invariant f in [0,1)
}

inline VecD normalize3(const VecD& w) {
  double n = norm(w);
  require(n > 1e-12, "cannot normalize near zero vector");
  return (1.0 / n) * w;
}

// rows of the differential of to_chart at a point, acting on ambient tangents
using JacRows = std::vector<VecD>;

inline VecD jac_apply(const JacRows& rows, const VecD& t) {
  VecD out(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) out[i] = dot(rows[i], t);
  return out;
}

class Cover {
 public:
  virtual ~Cover() = default;
  virtual int dim() const = 0;
  virtual int ambient_dim() const = 0;
  virtual int num_charts() const = 0;
  virtual bool contains(int chart, const VecD& amb) const = 0;
  virtual VecD to_chart(int chart, const VecD& amb) const = 0;
  virtual VecD to_ambient(int chart, const VecD& local) const = 0;
  virtual JacRows chart_jacobian(int chart, const VecD& amb) const = 0;
  virtual bool tuple_nonempty(const std::vector<int>& tuple) const = 0;
  // a marked point of the overlap of the (sorted, distinct) tuple
  virtual VecD overlap_base(const std::vector<int>& tuple) const = 0;
  // n ambient samples from overlap_base(tuple) to amb, staying in the overlap;
  // amb must already lie in the overlap
  virtual std::vector<VecD> overlap_path(const std::vector<int>& tuple,
                                         const VecD& amb, int n) const = 0;
  virtual VecD ambient_uniform(Rng& rng) const = 0;

  // basis of the tangent space at amb, as ambient vectors; flat default
  virtual std::vector<VecD> tangent_frame(const VecD& amb) const {
    (void)amb;
    std::vector<VecD> frame(dim(), VecD(ambient_dim(), 0.0));
    for (int k = 0; k < dim(); ++k) frame[k][k] = 1.0;
    return frame;
  }

  // columns of the differential of to_ambient at local coordinates; flat
  // covers are the identity
  virtual std::vector<VecD> ambient_jacobian(int chart, const VecD& local) const {
    (void)chart;
    (void)local;
    std::vector<VecD> cols(dim(), VecD(ambient_dim(), 0.0));
    for (int k = 0; k < dim(); ++k) cols[k][k] = 1.0;
    return cols;
  }

  // default: rejection against the membership predicates
  virtual std::vector<VecD> overlap_samples(const std::vector<int>& tuple,
                                            int n, Rng& rng) const {
    std::vector<VecD> out;
    out.reserve(n);
    long long guard = 0;
    while ((int)out.size() < n) {
      VecD p = ambient_uniform(rng);
      bool ok = true;
      for (int c : tuple) ok = ok && contains(c, p);
      if (ok) out.push_back(p);
      require(++guard < 4000000LL, "overlap sampling did not terminate");
    }
    return out;
  }

  // all sorted (q+1)-tuples of distinct charts with nonempty intersection;
  // valid because intersections only shrink as the tuple grows
  std::vector<std::vector<int>> nerve_tuples(int q) const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    struct Rec {
      const Cover* cv;
      int want;
      std::vector<std::vector<int>>* out;
      void go(std::vector<int>& cur, int next) {
        if ((int)cur.size() == want) {
          out->push_back(cur);
          return;
        }
        for (int i = next; i < cv->num_charts(); ++i) {
          cur.push_back(i);
          if (cv->tuple_nonempty(cur)) go(cur, i + 1);
          cur.pop_back();
        }
      }
    } rec{this, q + 1, &out};
    rec.go(cur, 0);
    return out;
  }
};

// T^d covered by three overlapping arcs per axis, [k/3, k/3 + 0.45] mod 1.
// Any two arcs of one axis meet in a single arc and no three meet, so every
// finite intersection is a product of arcs: a box, convex in the lift
// coordinates of any member chart. Cells of diameter below 0.45 - 1/3 always
// fit inside some chart, which fixes the mesh resolutions used elsewhere.
class BoxTorusCover final : public Cover {
 public:
  explicit BoxTorusCover(int d) : d_(d) {
    require(d >= 1 && d <= 4, "torus cover supports d in 1..4");
    n_charts_ = 1;
    for (int k = 0; k < d; ++k) n_charts_ *= 3;
  }

  static constexpr double kWidth = 0.45;

  int dim() const override { return d_; }
  int ambient_dim() const override { return d_; }
  int num_charts() const override { return n_charts_; }

  int digit(int chart, int axis) const {
    for (int k = 0; k < axis; ++k) chart /= 3;
    return chart % 3;
  }
  static double arc_start(int digit) { return digit / 3.0; }

  bool contains(int chart, const VecD& amb) const override {
    for (int k = 0; k < d_; ++k) {
      if (dfrac(amb[k] - arc_start(digit(chart, k))) > kWidth) return false;
    }
    return true;
  }

  VecD to_chart(int chart, const VecD& amb) const override {
    VecD x(d_);
    for (int k = 0; k < d_; ++k) {
      double s = arc_start(digit(chart, k));
      x[k] = s + dfrac(amb[k] - s);
    }
    return x;
  }

  VecD to_ambient(int, const VecD& local) const override {
    VecD a(d_);
    for (int k = 0; k < d_; ++k) a[k] = dfrac(local[k]);
    return a;
  }

  JacRows chart_jacobian(int, const VecD&) const override {
    JacRows rows(d_, VecD(d_, 0.0));
    for (int k = 0; k < d_; ++k) rows[k][k] = 1.0;
    return rows;
  }

  // overlap of the tuple per axis, written in the lift coordinates of the
  // first chart; empty optional when some axis has all three digits or the
  // shifted arcs miss each other
  std::optional<std::vector<std::array<double, 2>>> overlap_box(
      const std::vector<int>& tuple) const {
    std::vector<std::array<double, 2>> box(d_);
    for (int k = 0; k < d_; ++k) {
      double lo = arc_start(digit(tuple[0], k)), hi = lo + kWidth;
      for (size_t t = 1; t < tuple.size(); ++t) {
        double s = arc_start(digit(tuple[t], k));
        bool found = false;
        for (int m = -1; m <= 1 && !found; ++m) {
          double l2 = std::max(lo, s + m), h2 = std::min(hi, s + m + kWidth);
          if (l2 <= h2) {
            lo = l2;
            hi = h2;
            found = true;
          }
        }
        if (!found) return std::nullopt;
      }
      box[k] = {lo, hi};
    }
    return box;
  }

  bool tuple_nonempty(const std::vector<int>& tuple) const override {
    return overlap_box(tuple).has_value();
  }

  VecD overlap_base(const std::vector<int>& tuple) const override {
    auto box = overlap_box(tuple);
    require(box.has_value(), "overlap_base of empty chart tuple");
    VecD mid(d_);
    for (int k = 0; k < d_; ++k) mid[k] = 0.5 * ((*box)[k][0] + (*box)[k][1]);
    return to_ambient(0, mid);
  }

  std::vector<VecD> overlap_path(const std::vector<int>& tuple, const VecD& amb,
                                 int n) const override {
    auto box = overlap_box(tuple);
    require(box.has_value(), "overlap_path of empty chart tuple");
    require(n >= 2, "path needs at least two samples");
    VecD a(d_), b(d_);
    for (int k = 0; k < d_; ++k) {
      a[k] = 0.5 * ((*box)[k][0] + (*box)[k][1]);
      b[k] = (*box)[k][0] + dfrac(amb[k] - (*box)[k][0]);
      require(b[k] <= (*box)[k][1] + 1e-9, "path target outside overlap");
    }
    std::vector<VecD> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
      double t = double(i) / (n - 1);
      out.push_back(to_ambient(0, a + t * (b - a)));
    }
    return out;
  }

  VecD ambient_uniform(Rng& rng) const override {
    VecD p(d_);
    for (int k = 0; k < d_; ++k) p[k] = rng.next_double();
    return p;
  }

  std::vector<VecD> overlap_samples(const std::vector<int>& tuple, int n,
                                    Rng& rng) const override {
    auto box = overlap_box(tuple);
    require(box.has_value(), "sampling an empty chart tuple");
    std::vector<VecD> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
      VecD x(d_);
      for (int k = 0; k < d_; ++k)
        x[k] = rng.uniform((*box)[k][0], (*box)[k][1]);
      out.push_back(to_ambient(0, x));
    }
    return out;
  }

 private:
  int d_;
  int n_charts_;
};

// S^2 as unit vectors in R^3.
//
// TwoCap: chart 0 projects stereographically from the south pole over
// z > -0.6, chart 1 from the north pole over z < 0.6. The overlap is an
// equatorial annulus, fine for holonomy but useless for winding extraction,
// so overlap_path refuses the pair tuple. The sector band of the six chart
// cover sits inside both caps, so the six chart cover refines this one.
//
// CapsAndSectors: cap charts shrink to z > 0.1 and z < -0.1 (now disjoint)
// and four sector charts cover the equator band |z| < 0.55 with overlapping
// quarter windows in phi. Every overlap is a coordinate rectangle in some
// sector chart, so straight segments there stay inside, and all intersections
// are contractible.
class SphereCover final : public Cover {
 public:
  enum class Kind { TwoCap, CapsAndSectors };

  static SphereCover two_chart() { return SphereCover(Kind::TwoCap); }
  static SphereCover six_chart() { return SphereCover(Kind::CapsAndSectors); }

  Kind kind() const { return kind_; }
  int dim() const override { return 2; }
  int ambient_dim() const override { return 3; }
  int num_charts() const override { return kind_ == Kind::TwoCap ? 2 : 6; }

  static constexpr double kCapMin = 0.1;    // caps in the six chart cover
  static constexpr double kBandMax = 0.55;  // sector band half height
  static constexpr double kHalfWin = M_PI / 4 + 0.2;
  static constexpr double kTwoCapMargin = 0.6;

  bool is_sector(int chart) const { return kind_ == Kind::CapsAndSectors && chart >= 2; }
  static double sector_center(int chart) { return (chart - 2) * M_PI / 2; }

  static double wrap_pi(double a) { // into (-pi, pi]
    a = std::remainder(a, 2 * M_PI);
    return a;
  }

  bool contains(int chart, const VecD& p) const override {
    double z = p[2];
    if (kind_ == Kind::TwoCap) return chart == 0 ? z > -kTwoCapMargin : z < kTwoCapMargin;
    if (chart == 0) return z > kCapMin;
    if (chart == 1) return z < -kCapMin;
    if (std::abs(z) >= kBandMax) return false;
    double phi = std::atan2(p[1], p[0]);
    return std::abs(wrap_pi(phi - sector_center(chart))) < kHalfWin;
  }

  VecD to_chart(int chart, const VecD& p) const override {
    if (is_sector(chart)) {
      double phi = std::atan2(p[1], p[0]);
      return {wrap_pi(phi - sector_center(chart)), p[2]};
    }
    bool north = chart == 0;
    double den = north ? 1.0 + p[2] : 1.0 - p[2];
    require(std::abs(den) > 1e-12, "stereographic chart at its pole");
    return {p[0] / den, p[1] / den};
  }

  VecD to_ambient(int chart, const VecD& x) const override {
    if (is_sector(chart)) {
      double phi = x[0] + sector_center(chart), z = x[1];
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      return {r * std::cos(phi), r * std::sin(phi), z};
    }
    double r2 = x[0] * x[0] + x[1] * x[1];
    double z = (1.0 - r2) / (1.0 + r2);
    if (chart == 1) z = -z;
    return {2 * x[0] / (1 + r2), 2 * x[1] / (1 + r2), z};
  }

  JacRows chart_jacobian(int chart, const VecD& p) const override {
    if (is_sector(chart)) {
      double q = p[0] * p[0] + p[1] * p[1];
      return {{-p[1] / q, p[0] / q, 0.0}, {0.0, 0.0, 1.0}};
    }
    double s = chart == 0 ? 1.0 : -1.0;
    double den = 1.0 + s * p[2];
    return {{1 / den, 0.0, -s * p[0] / (den * den)},
            {0.0, 1 / den, -s * p[1] / (den * den)}};
  }

  std::vector<VecD> tangent_frame(const VecD& p) const override {
    // orthonormal pair perpendicular to p; seed axis avoids degeneracy
    VecD seed = std::abs(p[2]) < 0.9 ? VecD{0, 0, 1} : VecD{1, 0, 0};
    VecD u = {seed[1] * p[2] - seed[2] * p[1], seed[2] * p[0] - seed[0] * p[2],
              seed[0] * p[1] - seed[1] * p[0]};
    u = normalize3(u);
    VecD v = {p[1] * u[2] - p[2] * u[1], p[2] * u[0] - p[0] * u[2],
              p[0] * u[1] - p[1] * u[0]};
    return {u, normalize3(v)};
  }

  std::vector<VecD> ambient_jacobian(int chart, const VecD& x) const override {
    if (is_sector(chart)) {
      double phi = x[0] + sector_center(chart), z = x[1];
      double r = std::sqrt(std::max(1e-30, 1.0 - z * z));
      return {{-r * std::sin(phi), r * std::cos(phi), 0.0},
              {-z / r * std::cos(phi), -z / r * std::sin(phi), 1.0}};
    }
    double r2 = x[0] * x[0] + x[1] * x[1], den = (1 + r2) * (1 + r2);
    double sz = chart == 0 ? 1.0 : -1.0;
    return {{2 * (1 + r2 - 2 * x[0] * x[0]) / den, -4 * x[0] * x[1] / den,
             -sz * 4 * x[0] / den},
            {-4 * x[0] * x[1] / den, 2 * (1 + r2 - 2 * x[1] * x[1]) / den,
             -sz * 4 * x[1] / den}};
  }

  // domain of a chart as a z interval plus an optional phi window
  struct Domain {
    double zlo, zhi;
    bool windowed;
    double center, half;
  };
  Domain domain(int chart) const {
    if (kind_ == Kind::TwoCap)
      return chart == 0 ? Domain{-kTwoCapMargin, 1.0, false, 0, 0}
                        : Domain{-1.0, kTwoCapMargin, false, 0, 0};
    if (chart == 0) return {kCapMin, 1.0, false, 0, 0};
    if (chart == 1) return {-1.0, -kCapMin, false, 0, 0};
    return {-kBandMax, kBandMax, true, sector_center(chart), kHalfWin};
  }

  // intersect the tuple's domains; sector windows are narrower than a half
  // circle, so pairwise window intersections are single intervals
  std::optional<Domain> overlap_domain(const std::vector<int>& tuple) const {
    Domain d{-1.0, 1.0, false, 0, 0};
    for (int c : tuple) {
      Domain e = domain(c);
      d.zlo = std::max(d.zlo, e.zlo);
      d.zhi = std::min(d.zhi, e.zhi);
      if (e.windowed) {
        if (!d.windowed) {
          d.windowed = true;
          d.center = e.center;
          d.half = e.half;
        } else {
          double sep = wrap_pi(e.center - d.center);
          double lo = std::max(-d.half, sep - e.half);
          double hi = std::min(d.half, sep + e.half);
          if (lo >= hi) return std::nullopt;
          d.center = d.center + 0.5 * (lo + hi);
          d.half = 0.5 * (hi - lo);
        }
      }
    }
    if (d.zlo >= d.zhi) return std::nullopt;
    return d;
  }

  bool tuple_nonempty(const std::vector<int>& tuple) const override {
    return overlap_domain(tuple).has_value();
  }

  VecD overlap_base(const std::vector<int>& tuple) const override {
    auto d = overlap_domain(tuple);
    require(d.has_value(), "overlap_base of empty chart tuple");
    double z = 0.5 * (d->zlo + d->zhi), phi = d->windowed ? d->center : 0.0;
    if (!d->windowed && tuple.size() == 1)
      return tuple[0] == 0 ? VecD{0, 0, 1} : VecD{0, 0, -1};
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

  std::vector<VecD> overlap_path(const std::vector<int>& tuple, const VecD& amb,
                                 int n) const override {
    require(n >= 2, "path needs at least two samples");
    auto d = overlap_domain(tuple);
    require(d.has_value(), "overlap_path of empty chart tuple");
    int frame = -1;
    for (int c : tuple)
      if (is_sector(c)) {
        frame = c;
        break;
      }
    if (frame < 0) {
      // caps only; a single cap is a convex disk in its own stereographic
      // coordinates, the annular TwoCap pair has no canonical path
      require(tuple.size() == 1, "no contractible path frame for cap pair");
      frame = tuple[0];
    }
    VecD a = to_chart(frame, overlap_base(tuple)), b = to_chart(frame, amb);
    std::vector<VecD> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
      double t = double(i) / (n - 1);
      out.push_back(to_ambient(frame, a + t * (b - a)));
    }
    return out;
  }

  VecD ambient_uniform(Rng& rng) const override {
    double z = rng.uniform(-1.0, 1.0), phi = rng.uniform(0.0, 2 * M_PI);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

 private:
  explicit SphereCover(Kind k) : kind_(k) {}
  Kind kind_;
};

// S^1 x base, ambient (s mod 1) ++ base ambient. The circle carries the same
// three arc cover as a torus axis; chart id = arc * base_charts + base chart.
class ProductCover final : public Cover {
 public:
  explicit ProductCover(const Cover* base) : base_(base) {}

  static constexpr double kWidth = BoxTorusCover::kWidth;

  const Cover* base() const { return base_; }
  int dim() const override { return 1 + base_->dim(); }
  int ambient_dim() const override { return 1 + base_->ambient_dim(); }
  int num_charts() const override { return 3 * base_->num_charts(); }

  int arc_of(int chart) const { return chart / base_->num_charts(); }
  int base_of(int chart) const { return chart % base_->num_charts(); }
  int chart_id(int arc, int base_chart) const {
    return arc * base_->num_charts() + base_chart;
  }

  static VecD base_point(const VecD& amb) {
    return VecD(amb.begin() + 1, amb.end());
  }

  bool contains(int chart, const VecD& amb) const override {
    if (dfrac(amb[0] - arc_of(chart) / 3.0) > kWidth) return false;
    return base_->contains(base_of(chart), base_point(amb));
  }

  VecD to_chart(int chart, const VecD& amb) const override {
    double s0 = arc_of(chart) / 3.0;
    VecD x{s0 + dfrac(amb[0] - s0)};
    VecD b = base_->to_chart(base_of(chart), base_point(amb));
    x.insert(x.end(), b.begin(), b.end());
    return x;
  }

  VecD to_ambient(int chart, const VecD& local) const override {
    VecD a{dfrac(local[0])};
    VecD b = base_->to_ambient(base_of(chart), VecD(local.begin() + 1, local.end()));
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  JacRows chart_jacobian(int chart, const VecD& amb) const override {
    JacRows rows;
    VecD first(ambient_dim(), 0.0);
    first[0] = 1.0;
    rows.push_back(first);
    for (const VecD& r : base_->chart_jacobian(base_of(chart), base_point(amb))) {
      VecD row(ambient_dim(), 0.0);
      for (size_t k = 0; k < r.size(); ++k) row[k + 1] = r[k];
      rows.push_back(row);
    }
    return rows;
  }

  std::vector<VecD> tangent_frame(const VecD& amb) const override {
    std::vector<VecD> frame;
    VecD first(ambient_dim(), 0.0);
    first[0] = 1.0;
    frame.push_back(first);
    for (const VecD& t : base_->tangent_frame(base_point(amb))) {
      VecD v(ambient_dim(), 0.0);
      for (size_t k = 0; k < t.size(); ++k) v[k + 1] = t[k];
      frame.push_back(v);
    }
    return frame;
  }

  std::vector<VecD> ambient_jacobian(int chart, const VecD& local) const override {
    std::vector<VecD> cols;
    VecD first(ambient_dim(), 0.0);
    first[0] = 1.0;
    cols.push_back(first);
    VecD bl(local.begin() + 1, local.end());
    for (const VecD& c : base_->ambient_jacobian(base_of(chart), bl)) {
      VecD v(ambient_dim(), 0.0);
      for (size_t k = 0; k < c.size(); ++k) v[k + 1] = c[k];
      cols.push_back(v);
    }
    return cols;
  }

  std::optional<std::array<double, 2>> arc_overlap(const std::vector<int>& tuple) const {
    double lo = arc_of(tuple[0]) / 3.0, hi = lo + kWidth;
    for (size_t t = 1; t < tuple.size(); ++t) {
      double s = arc_of(tuple[t]) / 3.0;
      bool found = false;
      for (int m = -1; m <= 1 && !found; ++m) {
        double l2 = std::max(lo, s + m), h2 = std::min(hi, s + m + kWidth);
        if (l2 <= h2) {
          lo = l2;
          hi = h2;
          found = true;
        }
      }
      if (!found) return std::nullopt;
    }
    return std::array<double, 2>{lo, hi};
  }

  std::vector<int> base_tuple(const std::vector<int>& tuple) const {
    std::vector<int> bt;
    for (int c : tuple) bt.push_back(base_of(c));
    std::sort(bt.begin(), bt.end());
    bt.erase(std::unique(bt.begin(), bt.end()), bt.end());
    return bt;
  }

  bool tuple_nonempty(const std::vector<int>& tuple) const override {
    return arc_overlap(tuple).has_value() &&
           base_->tuple_nonempty(base_tuple(tuple));
  }

  VecD overlap_base(const std::vector<int>& tuple) const override {
    auto arc = arc_overlap(tuple);
    require(arc.has_value(), "overlap_base of empty chart tuple");
    VecD a{dfrac(0.5 * ((*arc)[0] + (*arc)[1]))};
    VecD b = base_->overlap_base(base_tuple(tuple));
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  std::vector<VecD> overlap_path(const std::vector<int>& tuple, const VecD& amb,
                                 int n) const override {
    auto arc = arc_overlap(tuple);
    require(arc.has_value(), "overlap_path of empty chart tuple");
    double s_a = 0.5 * ((*arc)[0] + (*arc)[1]);
    double s_b = (*arc)[0] + dfrac(amb[0] - (*arc)[0]);
    require(s_b <= (*arc)[1] + 1e-9, "path target outside arc overlap");
    auto bp = base_->overlap_path(base_tuple(tuple), base_point(amb), n);
    std::vector<VecD> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
      double t = double(i) / (n - 1);
      VecD p{dfrac(s_a + t * (s_b - s_a))};
      p.insert(p.end(), bp[i].begin(), bp[i].end());
      out.push_back(p);
    }
    return out;
  }

  VecD ambient_uniform(Rng& rng) const override {
    VecD p{rng.next_double()};
    VecD b = base_->ambient_uniform(rng);
    p.insert(p.end(), b.begin(), b.end());
    return p;
  }

 private:
  const Cover* base_;
};

// single chart torus, for tests wanting a universal chart
class TrivialCover final : public Cover {
 public:
  explicit TrivialCover(int d) : d_(d) {}
  int dim() const override { return d_; }
  int ambient_dim() const override { return d_; }
  int num_charts() const override { return 1; }
  bool contains(int, const VecD&) const override { return true; }
  VecD to_chart(int, const VecD& amb) const override { return amb; }
  VecD to_ambient(int, const VecD& local) const override {
    VecD a(d_);
    for (int k = 0; k < d_; ++k) a[k] = dfrac(local[k]);
    return a;
  }
  JacRows chart_jacobian(int, const VecD&) const override {
    JacRows rows(d_, VecD(d_, 0.0));
    for (int k = 0; k < d_; ++k) rows[k][k] = 1.0;
    return rows;
  }
  bool tuple_nonempty(const std::vector<int>&) const override { return true; }
  VecD overlap_base(const std::vector<int>&) const override {
    return VecD(d_, 0.5);
  }
  std::vector<VecD> overlap_path(const std::vector<int>&, const VecD& amb,
                                 int n) const override {
    return std::vector<VecD>(n, amb);
  }
  VecD ambient_uniform(Rng& rng) const override {
    VecD p(d_);
    for (int k = 0; k < d_; ++k) p[k] = rng.next_double();
    return p;
  }

 private:
  int d_;
};

// fine-to-coarse chart assignment with U_fine(i) inside U_coarse(map[i])
struct CoverRefinement {
  const Cover* fine = nullptr;
  const Cover* coarse = nullptr;
  std::vector<int> chart_map;

  // sampled containment check; throws naming the offending fine chart
  void verify(int samples, Rng& rng) const {
    require((int)chart_map.size() == fine->num_charts(),
            "refinement map has wrong length");
    for (int i = 0; i < fine->num_charts(); ++i) {
      auto pts = fine->overlap_samples({i}, samples, rng);
      for (const VecD& p : pts)
        require(coarse->contains(chart_map[i], p),
                "refinement violated on fine chart " + std::to_string(i));
    }
  }
};

}  // namespace dlg
