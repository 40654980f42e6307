#pragma once

// The simplicial side of the multiplicative structure: finite simplicial
// spaces with tagged covers and the three-rung cocycle triple living on
// levels one to three, holonomy multiplicativity on torus colorings, and the
// two-form integrality criterion on a torus group model.

#include <array>
#include <functional>
#include <string>
#include <utility>

#include "dlg/forms.hpp"
#include "dlg/meshes.hpp"
#include "dlg/statesum.hpp"

namespace dlg {

// Levels one to four of a simplicial space as explicit finite data.  Points
// of level m are 0..size[m), face i of level m lands in level m-1.  Every
// point carries a sorted list of cover tags; compatibility means a tag
// survives every face map, so Cech data can be pulled back without choosing
// covers.
struct SimplicialSpace {
    std::array<int, 5> size{};                 // slots 1..4 used
    std::array<std::vector<VecI>, 5> face;     // face[m][i][p], 0 <= i <= m
    int n_tags = 1;
    std::array<std::vector<VecI>, 5> tags;     // tags[m][p], sorted

    const VecI& point_tags(int level, int p) const { return tags[level][p]; }
    int d(int level, int i, int p) const { return face[level][i][p]; }
};

inline void validate_space(const SimplicialSpace& S) {
    for (int m = 1; m <= 4; ++m) {
        require(S.size[m] >= 0, "level size is negative");
        require((int)S.tags[m].size() == S.size[m], "tag table does not match level size");
        for (const auto& ts : S.tags[m]) {
            require(!ts.empty(), "a point has an empty cover");
            for (size_t j = 0; j < ts.size(); ++j) {
                require(0 <= ts[j] && ts[j] < S.n_tags, "tag id out of range");
                require(j == 0 || ts[j - 1] < ts[j], "tag list must be strictly increasing");
            }
        }
    }
    for (int m = 2; m <= 4; ++m) {
        require((int)S.face[m].size() == m + 1, "level m wants m+1 face maps");
        for (int i = 0; i <= m; ++i) {
            require((int)S.face[m][i].size() == S.size[m], "face map table size mismatch");
            for (int p = 0; p < S.size[m]; ++p) {
                int q = S.face[m][i][p];
                require(0 <= q && q < S.size[m - 1], "face map lands outside the level below");
                // tags must survive the face map
                const VecI& up = S.tags[m][p];
                const VecI& dn = S.tags[m - 1][q];
                for (int t : up)
                    require(std::find(dn.begin(), dn.end(), t) != dn.end(),
                            "cover is not compatible with a face map");
            }
        }
    }
    // simplicial identities d_i d_j = d_{j-1} d_i for i < j, levels 3 and 4
    for (int m = 3; m <= 4; ++m)
        for (int j = 1; j <= m; ++j)
            for (int i = 0; i < j; ++i)
                for (int p = 0; p < S.size[m]; ++p)
                    require(S.d(m - 1, i, S.d(m, j, p)) == S.d(m - 1, j - 1, S.d(m, i, p)),
                            "face maps violate a simplicial identity");
}

// the nerve of a finite group: level m = G^m with the merge face maps
inline SimplicialSpace nerve_space(const FiniteGroupModel& G, int tags_per_point = 1) {
    SimplicialSpace S;
    S.n_tags = tags_per_point;
    VecI all_tags(tags_per_point);
    for (int t = 0; t < tags_per_point; ++t) all_tags[t] = t;
    long long n = G.size();
    auto decode = [&](int m, long long p) {
        VecI t(m);
        for (int j = m - 1; j >= 0; --j) {
            t[j] = (int)(p % n);
            p /= n;
        }
        return t;
    };
    auto encode = [&](const VecI& t) {
        long long p = 0;
        for (int v : t) p = p * n + v;
        return (int)p;
    };
    long long cells = 1;
    for (int m = 1; m <= 4; ++m) {
        cells *= n;
        S.size[m] = (int)cells;
        S.tags[m].assign(cells, all_tags);
        if (m >= 2) {
            S.face[m].assign(m + 1, VecI(cells));
            for (long long p = 0; p < cells; ++p) {
                VecI tup = decode(m, p);
                for (int i = 0; i <= m; ++i) S.face[m][i][p] = encode(face_map(G, i, tup));
            }
        }
    }
    validate_space(S);
    return S;
}

// Cech layers over the space: g on level 1 (degree 2), h on level 2
// (degree 1), k on level 3 (degree 0), all circle valued
struct SimplicialCocycleTriple {
    const SimplicialSpace* space = nullptr;
    std::function<Angle(int p, int t0, int t1, int t2)> g;
    std::function<Angle(int p, int t0, int t1)> h;
    std::function<Angle(int p, int t0)> k;
};

struct TripleReport {
    bool pass = true;
    int rung = 0;    // 1, 2 or 3 when failing
    int point = -1;  // offending point in the rung's level
    VecI tags;       // offending tag tuple
    Angle defect;
    std::string describe() const {
        if (pass) return "all three relations hold";
        return "relation " + std::to_string(rung) + " fails at point " + std::to_string(point) +
               " with defect " + defect.str();
    }
};

// verifies the three descent relations over every point and increasing tag
// tuple; alternating conventions make increasing tuples sufficient
inline TripleReport check_triple(const SimplicialCocycleTriple& T) {
    const SimplicialSpace& S = *T.space;
    validate_space(S);
    require(T.g && T.h && T.k, "triple layers must all be present");
    // rung 1 on level 2: alternating g-pullback equals the Cech boundary of h
    for (int p = 0; p < S.size[2]; ++p) {
        const VecI& ts = S.tags[2][p];
        for (size_t a = 0; a < ts.size(); ++a)
            for (size_t b = a + 1; b < ts.size(); ++b)
                for (size_t c = b + 1; c < ts.size(); ++c) {
                    int t0 = ts[a], t1 = ts[b], t2 = ts[c];
                    Angle lhs = T.g(S.d(2, 0, p), t0, t1, t2) - T.g(S.d(2, 1, p), t0, t1, t2) +
                                T.g(S.d(2, 2, p), t0, t1, t2);
                    Angle rhs = T.h(p, t1, t2) - T.h(p, t0, t2) + T.h(p, t0, t1);
                    if (!(lhs - rhs == Angle())) return {false, 1, p, {t0, t1, t2}, lhs - rhs};
                }
    }
    // rung 2 on level 3: alternating h-pullback equals the Cech boundary of k
    for (int p = 0; p < S.size[3]; ++p) {
        const VecI& ts = S.tags[3][p];
        for (size_t a = 0; a < ts.size(); ++a)
            for (size_t b = a + 1; b < ts.size(); ++b) {
                int t0 = ts[a], t1 = ts[b];
                Angle lhs;
                for (int i = 0; i <= 3; ++i) {
                    Angle v = T.h(S.d(3, i, p), t0, t1);
                    lhs = (i % 2 == 0) ? lhs + v : lhs - v;
                }
                Angle rhs = T.k(p, t1) - T.k(p, t0);
                if (!(lhs - rhs == Angle())) return {false, 2, p, {t0, t1}, lhs - rhs};
            }
    }
    // rung 3 on level 4: alternating k-pullback vanishes
    for (int p = 0; p < S.size[4]; ++p) {
        for (int t : S.tags[4][p]) {
            Angle s;
            for (int i = 0; i <= 4; ++i) {
                Angle v = T.k(S.d(4, i, p), t);
                s = (i % 2 == 0) ? s + v : s - v;
            }
            if (!(s == Angle())) return {false, 3, p, {t}, s};
        }
    }
    return {};
}

// the finite specialization: one tag, g = h = 0, k carries the group cochain
inline SimplicialCocycleTriple triple_from_group_cochain(const SimplicialSpace& S,
                                                         const GroupCochain& omega) {
    require(omega.degree() == 3, "triple wants a degree 3 group cochain");
    long long gn = omega.group().size();
    require(S.size[3] == (int)(gn * gn * gn), "space level 3 does not match the group");
    SimplicialCocycleTriple T;
    T.space = &S;
    auto w = std::make_shared<GroupCochain>(omega);  // the triple owns its table
    long long n = omega.group().size();
    T.g = [](int, int, int, int) { return Angle(); };
    T.h = [](int, int, int) { return Angle(); };
    T.k = [w, n](int p, int) {
        VecI t(3);
        long long q = p;
        for (int j = 2; j >= 0; --j) {
            t[j] = (int)(q % n);
            q /= n;
        }
        return w->at(t);
    };
    return T;
}

// Exact coboundary triples: any Cech 1-layer a on level 1 and 0-layer b on
// level 2 produce a triple satisfying all three relations identically.  Used
// to exercise the checker on data with every layer nonzero.
inline SimplicialCocycleTriple make_triple_coboundary(
    const SimplicialSpace& S, std::function<Angle(int p, int t0, int t1)> a,
    std::function<Angle(int p, int t0)> b) {
    validate_space(S);
    require(a && b, "coboundary layers must be present");
    SimplicialCocycleTriple T;
    T.space = &S;
    const SimplicialSpace* sp = &S;
    T.g = [a](int p, int t0, int t1, int t2) {
        return a(p, t1, t2) - a(p, t0, t2) + a(p, t0, t1);
    };
    T.h = [a, b, sp](int p, int t0, int t1) {
        Angle s;
        for (int i = 0; i <= 2; ++i) {
            Angle v = a(sp->d(2, i, p), t0, t1);
            s = (i % 2 == 0) ? s + v : s - v;
        }
        return s + b(p, t1) - b(p, t0);
    };
    T.k = [b, sp](int p, int t0) {
        Angle s;
        for (int i = 0; i <= 3; ++i) {
            Angle v = b(sp->d(3, i, p), t0);
            s = (i % 2 == 0) ? s + v : s - v;
        }
        return s;
    };
    return T;
}

// --- holonomy multiplicativity on torus colorings ---

using TorusValue = std::function<Angle(int, int)>;

struct MultiplicativityItem {
    std::array<int, 4> pair{};  // a1 b1 a2 b2
    bool skipped = false;
    std::string note;
    Angle defect;
};

struct MultiplicativityReport {
    std::vector<MultiplicativityItem> items;
    int checked = 0;
    int skipped = 0;
    bool all_zero = true;
    double worst = 0.0;
};

// defect of value(sigma1 * sigma2) - value(sigma1) - value(sigma2) under the
// pointwise product of torus colorings; non-flat products are skipped
inline MultiplicativityReport multiplicativity_check(const FiniteGroupModel& G,
                                                     const TorusValue& value,
                                                     const std::vector<std::array<int, 4>>& pairs) {
    MultiplicativityReport rep;
    for (const auto& pr : pairs) {
        int a1 = pr[0], b1 = pr[1], a2 = pr[2], b2 = pr[3];
        require(G.commute(a1, b1) && G.commute(a2, b2),
                "multiplicativity inputs must be flat torus colorings");
        MultiplicativityItem item;
        item.pair = pr;
        int A = G.mul(a1, a2), B = G.mul(b1, b2);
        bool flat = G.commute(A, B) &&
                    G.mul(G.mul(a1, b1), G.mul(a2, b2)) == G.mul(A, B);
        if (!flat) {
            item.skipped = true;
            item.note = "pointwise product coloring is not flat";
            rep.skipped += 1;
        } else {
            item.defect = value(A, B) - value(a1, b1) - value(a2, b2);
            rep.checked += 1;
            if (!(item.defect == Angle())) rep.all_zero = false;
            rep.worst = std::max(rep.worst, item.defect.defect());
        }
        rep.items.push_back(std::move(item));
    }
    return rep;
}

// every (a1,b1,a2,b2) with both colorings flat
inline std::vector<std::array<int, 4>> all_commuting_pairs(const FiniteGroupModel& G) {
    std::vector<std::array<int, 4>> out;
    for (int a1 = 0; a1 < G.size(); ++a1)
        for (int b1 = 0; b1 < G.size(); ++b1) {
            if (!G.commute(a1, b1)) continue;
            for (int a2 = 0; a2 < G.size(); ++a2)
                for (int b2 = 0; b2 < G.size(); ++b2)
                    if (G.commute(a2, b2)) out.push_back({a1, b1, a2, b2});
        }
    return out;
}

// --- the two-form integrality criterion on a torus group model ---

// integer-matrix torus map; target coordinates are integer combinations of
// source coordinates, which respects the lattice quotient
struct IntegerTorusMap {
    std::vector<VecI> rows;
    int target_dim() const { return (int)rows.size(); }
    int source_dim() const { return rows.empty() ? 0 : (int)rows[0].size(); }
    VecD apply(const VecD& p) const {
        VecD q(rows.size(), 0.0);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t k = 0; k < rows[i].size(); ++k) q[i] += double(rows[i][k]) * p[k];
        return q;
    }
    std::vector<VecD> push(const std::vector<VecD>& tans) const {
        std::vector<VecD> out;
        for (const VecD& t : tans) out.push_back(apply(t));
        return out;
    }
};

inline FormField pullback_form(const FormField& w, const IntegerTorusMap& f) {
    if (form_is_zero(w)) return zero_form(w.degree);
    FormField out{w.degree, nullptr, nullptr};
    FormEval base = w.eval;
    out.eval = [base, f](const VecD& p, const std::vector<VecD>& t) {
        return base(f.apply(p), f.push(t));
    };
    if (w.d_eval) {
        FormEval db = w.d_eval;
        out.d_eval = [db, f](const VecD& p, const std::vector<VecD>& t) {
            return db(f.apply(p), f.push(t));
        };
    }
    return out;
}

// the three face maps of the doubled torus model (x, y) -> y, x+y, x
inline IntegerTorusMap torus_face_map(int i, int model_dim) {
    require(0 <= i && i <= 2, "torus model has three face maps");
    IntegerTorusMap f;
    f.rows.assign(model_dim, VecI(2 * model_dim, 0));
    for (int r = 0; r < model_dim; ++r) {
        if (i != 2) f.rows[r][model_dim + r] = 1;  // y part
        if (i != 0) f.rows[r][r] = 1;              // x part
    }
    return f;
}

struct BFieldOptions {
    int model_dim = 2;         // G-model torus dimension
    int surface_n = 3;         // surface mesh subdivisions
    int samples = 60;          // identity precondition sample count
    double tol_identity = 1e-6;
    double int_tol = 1e-6;     // flag threshold on the nearest-integer defect
    uint64_t seed = 11;
    QuadOpts quad;
};

struct BFieldItem {
    double value = 0.0;
    double defect = 0.0;
    bool integral = true;
};

struct BFieldReport {
    std::vector<BFieldItem> items;
    bool all_integral = true;
    double worst_identity = 0.0;
};

// Checks the descent precondition d0*curv - d1*curv + d2*curv = dB at random
// samples, then reports the surface integral of the pulled-back two-form and
// its distance to the nearest integer for each pair of torus maps.
inline BFieldReport b_field_integrality_check(
    const FormField& curv, const FormField& B,
    const std::vector<std::pair<IntegerTorusMap, IntegerTorusMap>>& pairs,
    const BFieldOptions& opts = {}) {
    require(curv.degree == 3, "curvature input must be a 3-form");
    require(B.degree == 2, "the descent form must be a 2-form");
    int g = opts.model_dim;
    require(g >= 1, "model dimension must be positive");
    for (const auto& [s1, s2] : pairs) {
        require(s1.target_dim() == g && s2.target_dim() == g,
                "pair maps must land in the group model");
        require(s1.source_dim() == 2 && s2.source_dim() == 2,
                "pair maps must come from the surface torus");
    }
    // dB: analytic when present, ambient central differences otherwise
    auto dB = [&](const VecD& q, const std::vector<VecD>& tans) {
        if (form_is_zero(B)) return 0.0;
        if (B.d_eval) return B.d_eval(q, tans);
        const double h = 1e-5;
        double total = 0.0;
        for (int m = 0; m < 3; ++m) {
            std::vector<VecD> keep;
            for (int l = 0; l < 3; ++l)
                if (l != m) keep.push_back(tans[l]);
            VecD qp = q, qm = q;
            for (size_t k = 0; k < q.size(); ++k) {
                qp[k] += h * tans[m][k];
                qm[k] -= h * tans[m][k];
            }
            total += (m % 2 == 0 ? 1.0 : -1.0) * (B.eval(qp, keep) - B.eval(qm, keep)) / (2 * h);
        }
        return total;
    };
    BFieldReport rep;
    Rng rng(opts.seed);
    IntegerTorusMap faces[3] = {torus_face_map(0, g), torus_face_map(1, g),
                                torus_face_map(2, g)};
    double worst = 0.0;
    VecD worst_at;
    for (int s = 0; s < opts.samples; ++s) {
        VecD q(2 * g);
        for (double& x : q) x = rng.next_double();
        std::vector<VecD> tans(3, VecD(2 * g));
        for (auto& t : tans)
            for (double& x : t) x = rng.uniform(-1.0, 1.0);
        double lhs = 0.0;
        for (int i = 0; i <= 2; ++i) {
            if (form_is_zero(curv)) break;
            double v = curv.eval(faces[i].apply(q), faces[i].push(tans));
            lhs += (i % 2 == 0) ? v : -v;
        }
        double err = std::abs(lhs - dB(q, tans));
        if (err > worst) {
            worst = err;
            worst_at = q;
        }
    }
    rep.worst_identity = worst;
    if (worst > opts.tol_identity) {
        std::string at = "(";
        for (size_t k = 0; k < worst_at.size(); ++k)
            at += (k ? ", " : "") + format_double(worst_at[k], 6);
        at += ")";
        require(false, "descent identity fails by " + format_double(worst, 6) +
                           " at sample " + at);
    }
    SimplicialComplex K = torus_mesh(2, opts.surface_n);
    for (const auto& [s1, s2] : pairs) {
        IntegerTorusMap joint;
        joint.rows = s1.rows;
        joint.rows.insert(joint.rows.end(), s2.rows.begin(), s2.rows.end());
        FormField pulled = pullback_form(B, joint);
        BFieldItem item;
        item.value = integrate_chain(pulled, K, K.fundamental, opts.quad);
        item.defect = int_defect(item.value);
        item.integral = item.defect <= opts.int_tol;
        if (!item.integral) rep.all_integral = false;
        rep.items.push_back(item);
    }
    return rep;
}

}  // namespace dlg
