#pragma once

// Branched triangulations of closed oriented 3-manifolds as explicit slot
// data, flat edge colorings, and the finite gauge state sum.  Weights are
// accumulated as integer numerators over one common denominator, so every
// invariant here is exact.
//
// Slot conventions.  A tetrahedron lists its edges in the order
// (01,02,03,12,13,23) of its branching order and its faces in vertex-drop
// order; a face lists edges as (01,02,12).  The flatness constraint of a
// face reads z(01)*z(12) = z(02).  A tet with branching (v0,v1,v2,v3) and
// orientation sign s contributes s * omega(z01, z12, z23) to the weight.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>

#include "dlg/group.hpp"

namespace dlg {

struct DeltaComplex3 {
    int n_vertices = 0;
    int n_edges = 0;
    struct Face {
        std::array<int, 3> e;  // slots (01),(02),(12)
    };
    std::vector<Face> faces;
    struct Tet {
        std::array<int, 4> f;  // vertex-drop order
        std::array<int, 6> e;  // (01),(02),(03),(12),(13),(23)
        int sign = 1;
    };
    std::vector<Tet> tets;
};

// closed + oriented + slot-consistent, or a structural error
inline void validate_complex(const DeltaComplex3& M) {
    require(M.n_vertices >= 1, "complex has no vertices");
    for (const auto& f : M.faces)
        for (int e : f.e) require(0 <= e && e < M.n_edges, "face references a missing edge");
    // a tet's face at drop slot m must carry the tet's own edges
    const int pattern[4][3] = {{3, 4, 5}, {1, 2, 5}, {0, 2, 4}, {0, 1, 3}};
    std::vector<long long> closure(M.faces.size(), 0);
    std::vector<int> uses(M.faces.size(), 0);
    for (const auto& t : M.tets) {
        require(t.sign == 1 || t.sign == -1, "tet orientation sign must be +1 or -1");
        for (int m = 0; m < 4; ++m) {
            require(0 <= t.f[m] && t.f[m] < (int)M.faces.size(), "tet references a missing face");
            const auto& f = M.faces[t.f[m]];
            for (int k = 0; k < 3; ++k)
                require(f.e[k] == t.e[pattern[m][k]], "tet and face disagree on an edge slot");
            closure[t.f[m]] += (m % 2 == 0 ? t.sign : -t.sign);
            uses[t.f[m]] += 1;
        }
    }
    for (size_t i = 0; i < M.faces.size(); ++i) {
        require(uses[i] == 2, "face is not shared by exactly two tetrahedra");
        require(closure[i] == 0, "face orientations do not cancel; complex is not closed oriented");
    }
}

// --- shipped manifolds ---

// one-vertex 3-torus: edge classes are nonzero direction bitmasks, tets are
// the six monotone cube paths, sign = permutation parity
inline DeltaComplex3 torus3_one_vertex() {
    DeltaComplex3 M;
    M.n_vertices = 1;
    M.n_edges = 7;  // mask u in 1..7, id u-1
    std::map<std::pair<int, int>, int> fid;  // (u,w) disjoint nonzero masks
    for (int u = 1; u < 8; ++u)
        for (int w = 1; w < 8; ++w)
            if ((u & w) == 0) {
                fid[{u, w}] = (int)M.faces.size();
                M.faces.push_back({{u - 1, (u | w) - 1, w - 1}});
            }
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    int parity[6] = {1, -1, -1, 1, 1, -1};
    for (int p = 0; p < 6; ++p) {
        int u = 1 << perms[p][0], w = 1 << perms[p][1], x = 1 << perms[p][2];
        DeltaComplex3::Tet t;
        t.e = {u - 1, (u | w) - 1, 6, w - 1, (w | x) - 1, x - 1};
        t.f = {fid[{w, x}], fid[{u | w, x}], fid[{u, w | x}], fid[{u, w}]};
        t.sign = parity[p];
        M.tets.push_back(t);
    }
    validate_complex(M);
    return M;
}

// boundary of the 4-simplex
inline DeltaComplex3 sphere3_pentachoron() {
    DeltaComplex3 M;
    M.n_vertices = 5;
    std::map<std::pair<int, int>, int> eid;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            eid[{i, j}] = M.n_edges;
            M.n_edges += 1;
        }
    std::map<std::array<int, 3>, int> fid;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            for (int k = j + 1; k < 5; ++k) {
                fid[{i, j, k}] = (int)M.faces.size();
                M.faces.push_back({{eid[{i, j}], eid[{i, k}], eid[{j, k}]}});
            }
    for (int m = 0; m < 5; ++m) {
        VecI v;
        for (int i = 0; i < 5; ++i)
            if (i != m) v.push_back(i);
        DeltaComplex3::Tet t;
        t.e = {eid[{v[0], v[1]}], eid[{v[0], v[2]}], eid[{v[0], v[3]}],
               eid[{v[1], v[2]}], eid[{v[1], v[3]}], eid[{v[2], v[3]}]};
        t.f = {fid[{v[1], v[2], v[3]}], fid[{v[0], v[2], v[3]}], fid[{v[0], v[1], v[3]}],
               fid[{v[0], v[1], v[2]}]};
        t.sign = (m % 2 == 0) ? 1 : -1;
        M.tets.push_back(t);
    }
    validate_complex(M);
    return M;
}

// the join of two polygons C_n * C_m, a triangulated 3-sphere with n*m tets
inline DeltaComplex3 sphere3_join(int n, int m) {
    require(n >= 2 && m >= 2, "polygon join wants both polygons of length >= 2");
    DeltaComplex3 M;
    M.n_vertices = n + m;
    // edge ids: [0,n) v-polygon, [n,n+m) w-polygon, then join edges i*m+j
    auto ev = [&](int i) { return (i % n + n) % n; };
    auto ew = [&](int j) { return n + (j % m + m) % m; };
    auto ej = [&](int i, int j) { return n + m + ((i % n + n) % n) * m + (j % m + m) % m; };
    M.n_edges = n + m + n * m;
    auto top = [&](int i, int j) { return ((i % n + n) % n) * m + (j % m + m) % m; };
    auto bot = [&](int i, int j) { return n * m + ((i % n + n) % n) * m + (j % m + m) % m; };
    M.faces.resize(2 * n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            M.faces[top(i, j)] = {{ev(i), ej(i, j), ej(i + 1, j)}};     // (v_i, v_i+1, w_j)
            M.faces[bot(i, j)] = {{ej(i, j), ej(i, j + 1), ew(j)}};     // (v_i, w_j, w_j+1)
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            DeltaComplex3::Tet t;  // (v_i, v_i+1, w_j, w_j+1)
            t.e = {ev(i), ej(i, j), ej(i, j + 1), ej(i + 1, j), ej(i + 1, j + 1), ew(j)};
            t.f = {bot(i + 1, j), bot(i, j), top(i, j + 1), top(i, j)};
            t.sign = 1;
            M.tets.push_back(t);
        }
    validate_complex(M);
    return M;
}

// lens space L(n,1): quotient of the C_n * C_n join by the diagonal rotation
inline DeltaComplex3 lens_space(int n) {
    require(n >= 2, "lens space wants n >= 2");
    DeltaComplex3 M;
    M.n_vertices = 2;
    auto jc = [&](int c) { return 2 + (c % n + n) % n; };  // join class by j - i
    M.n_edges = 2 + n;
    auto top = [&](int c) { return (c % n + n) % n; };
    auto bot = [&](int c) { return n + (c % n + n) % n; };
    M.faces.resize(2 * n);
    for (int c = 0; c < n; ++c) {
        M.faces[top(c)] = {{0, jc(c), jc(c - 1)}};
        M.faces[bot(c)] = {{jc(c), jc(c + 1), 1}};
    }
    for (int c = 0; c < n; ++c) {
        DeltaComplex3::Tet t;
        t.e = {0, jc(c), jc(c + 1), jc(c - 1), jc(c), 1};
        t.f = {bot(c - 1), bot(c), top(c + 1), top(c)};
        t.sign = 1;
        M.tets.push_back(t);
    }
    validate_complex(M);
    return M;
}

// cone one tet from an interior vertex; the classic 1-4 retriangulation
inline DeltaComplex3 one_four_move(const DeltaComplex3& M0, int which) {
    require(0 <= which && which < (int)M0.tets.size(), "1-4 move wants a tet index");
    DeltaComplex3 M = M0;
    DeltaComplex3::Tet t = M.tets[which];
    M.tets.erase(M.tets.begin() + which);
    M.n_vertices += 1;
    int g[4];  // cone edges, one per vertex slot of t (new vertex is last in order)
    for (int i = 0; i < 4; ++i) g[i] = M.n_edges + i;
    M.n_edges += 4;
    // new faces over the old tet's edge slots (ij) -> (v_i, v_j, c)
    const int eslot[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    int nf[6];
    for (int s = 0; s < 6; ++s) {
        nf[s] = (int)M.faces.size();
        M.faces.push_back({{t.e[s], g[eslot[s][0]], g[eslot[s][1]]}});
    }
    auto slot_of = [&](int a, int b) {
        for (int s = 0; s < 6; ++s)
            if (eslot[s][0] == a && eslot[s][1] == b) return s;
        require(false, "edge slot lookup");
        return -1;
    };
    for (int m = 0; m < 4; ++m) {
        int v[3], k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != m) v[k++] = i;
        DeltaComplex3::Tet c;  // (v_a, v_b, v_c, cone)
        c.e = {t.e[slot_of(v[0], v[1])], t.e[slot_of(v[0], v[2])], g[v[0]],
               t.e[slot_of(v[1], v[2])], g[v[1]], g[v[2]]};
        c.f = {nf[slot_of(v[1], v[2])], nf[slot_of(v[0], v[2])], nf[slot_of(v[0], v[1])], t.f[m]};
        c.sign = -t.sign * (m % 2 == 0 ? 1 : -1);
        M.tets.push_back(c);
    }
    validate_complex(M);
    return M;
}

// --- flat colorings ---

// Enumerates group colorings of the edges satisfying every face constraint,
// in deterministic lexicographic order.  Propagates determined edges before
// branching, so the search degenerates to the gauge/holonomy count.
template <class F>
inline void enumerate_flat_colorings(const DeltaComplex3& M, const FiniteGroupModel& G, F&& emit) {
    VecI color(M.n_edges, -1);
    // iterative propagation: a face with two known slots determines the third
    auto propagate = [&](VecI& z, std::vector<int>& touched) -> bool {
        bool progress = true;
        while (progress) {
            progress = false;
            for (const auto& f : M.faces) {
                int x = z[f.e[0]], xy = z[f.e[1]], y = z[f.e[2]];
                if (x >= 0 && y >= 0) {
                    int want = G.mul(x, y);
                    if (xy < 0) {
                        z[f.e[1]] = want;
                        touched.push_back(f.e[1]);
                        progress = true;
                    } else if (xy != want) {
                        return false;
                    }
                } else if (x >= 0 && xy >= 0 && y < 0) {
                    z[f.e[2]] = G.mul(G.inv(x), xy);
                    touched.push_back(f.e[2]);
                    progress = true;
                } else if (y >= 0 && xy >= 0 && x < 0) {
                    z[f.e[0]] = G.mul(xy, G.inv(y));
                    touched.push_back(f.e[0]);
                    progress = true;
                }
            }
        }
        return true;
    };
    std::function<void()> walk = [&]() {
        int free_edge = -1;
        for (int e = 0; e < M.n_edges; ++e)
            if (color[e] < 0) {
                free_edge = e;
                break;
            }
        if (free_edge < 0) {
            emit((const VecI&)color);
            return;
        }
        for (int gv = 0; gv < G.size(); ++gv) {
            std::vector<int> touched;
            color[free_edge] = gv;
            touched.push_back(free_edge);
            if (propagate(color, touched)) walk();
            for (int e : touched) color[e] = -1;
        }
    };
    walk();
}

// --- integer weight backend ---

inline long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

// omega flattened to numerators over one denominator for fast exact sums
struct IntCochain3 {
    long long n = 0;  // group order
    long long den = 1;
    std::vector<long long> num;  // index a*n^2 + b*n + c

    static IntCochain3 from(const GroupCochain& w) {
        require(w.degree() == 3, "state sum weight wants a degree 3 cochain");
        IntCochain3 r;
        r.n = w.group().size();
        w.for_each([&](const VecI&, const Angle& a) {
            require(a.is_exact(), "state sum wants the exact angle backend");
            r.den = lcm_ll(r.den, a.rational().denominator());
        });
        r.num.assign(r.n * r.n * r.n, 0);
        w.for_each([&](const VecI& t, const Angle& a) {
            const Rational& q = a.rational();
            r.num[(t[0] * r.n + t[1]) * r.n + t[2]] = q.numerator() * (r.den / q.denominator());
        });
        return r;
    }

    // weight numerator of one flat coloring, in [0, den)
    long long weight(const DeltaComplex3& M, const VecI& z) const {
        long long s = 0;
        for (const auto& t : M.tets) {
            long long v = num[(z[t.e[0]] * n + z[t.e[3]]) * n + z[t.e[5]]];
            s += t.sign > 0 ? v : -v;
        }
        s %= den;
        return s < 0 ? s + den : s;
    }
};

// --- exact comparison of root-of-unity sums ---

namespace detail {

// integer polynomial helpers, coefficient index = exponent
inline std::vector<long long> poly_divide_exact(std::vector<long long> a,
                                                const std::vector<long long>& b) {
    // b monic; exact division (remainder must vanish)
    int db = (int)b.size() - 1;
    require(db >= 0 && b[db] == 1, "cyclotomic division wants a monic divisor");
    std::vector<long long> q((int)a.size() - db, 0);
    for (int i = (int)a.size() - 1; i >= db; --i) {
        long long c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    for (long long c : a) require(c == 0, "cyclotomic division left a remainder");
    return q;
}

inline const std::vector<long long>& cyclotomic(long long d) {
    static std::map<long long, std::vector<long long>> memo;
    auto it = memo.find(d);
    if (it != memo.end()) return it->second;
    std::vector<long long> f((size_t)d + 1, 0);
    f[0] = -1;
    f[(size_t)d] = 1;  // x^d - 1
    for (long long e = 1; e < d; ++e)
        if (d % e == 0) f = poly_divide_exact(std::move(f), cyclotomic(e));
    return memo.emplace(d, std::move(f)).first->second;
}

// true when the integer combination sum_k coef[k] * zeta_d^k vanishes
inline bool zeta_sum_is_zero(std::vector<long long> coef, long long d) {
    const auto& phi = cyclotomic(d);
    int dp = (int)phi.size() - 1;
    if ((int)coef.size() < dp + 1) coef.resize(dp + 1, 0);
    for (int i = (int)coef.size() - 1; i >= dp; --i) {
        long long c = coef[i];
        if (c == 0) continue;
        for (int j = 0; j <= dp; ++j) coef[i - dp + j] -= c * phi[j];
    }
    for (long long c : coef) {
        if (c != 0) return false;
    }
    return true;
}

}  // namespace detail

// Exact state sum output: a histogram of weight angles plus the gauge
// normalization.  The invariant itself is sum over the histogram of
// count * exp(2 pi i k / den), divided by |G|^vertices.
struct DwResult {
    long long den = 1;
    std::map<long long, long long> hist;  // weight numerator -> coloring count
    long long colorings = 0;
    long long norm = 1;  // |G|^vertices
    int vertices = 0;

    std::complex<double> value() const {
        std::complex<double> s = 0;
        for (auto& [k, c] : hist) s += double(c) * std::polar(1.0, 2.0 * M_PI * double(k) / double(den));
        return s / double(norm);
    }

    // weight-angle histogram with reduced rational keys
    std::map<Rational, long long> angle_histogram() const {
        std::map<Rational, long long> h;
        for (auto& [k, c] : hist) h[Rational(k, den)] += c;
        return h;
    }

    // algebraic equality of the normalized sums (no floating point)
    bool exact_equal(const DwResult& o) const {
        auto ha = angle_histogram(), hb = o.angle_histogram();
        // per-angle proportionality implies equality outright
        bool pointwise = true;
        for (auto& [q, c] : ha)
            if (c * o.norm != hb[q] * norm) pointwise = false;
        for (auto& [q, c] : hb)
            if (c * norm != ha[q] * o.norm) pointwise = false;
        if (pointwise) return true;
        long long d = lcm_ll(den, o.den);
        std::vector<long long> coef((size_t)d, 0);
        for (auto& [k, c] : hist) coef[(size_t)(k * (d / den))] += c * o.norm;
        for (auto& [k, c] : o.hist) coef[(size_t)(k * (d / o.den))] -= c * norm;
        return detail::zeta_sum_is_zero(std::move(coef), d);
    }
};

inline DwResult dw_invariant(const DeltaComplex3& M, const FiniteGroupModel& G,
                             const GroupCochain& omega) {
    validate_complex(M);
    TripleCheck tc = check_triple(omega);
    require(tc.pass, "state sum wants a degree 3 cocycle; identity fails at a 4-tuple");
    IntCochain3 w = IntCochain3::from(omega);
    DwResult r;
    r.den = w.den;
    r.vertices = M.n_vertices;
    r.norm = 1;
    for (int i = 0; i < M.n_vertices; ++i) r.norm *= G.size();
    enumerate_flat_colorings(M, G, [&](const VecI& z) {
        r.hist[w.weight(M, z)] += 1;
        r.colorings += 1;
    });
    return r;
}

// --- surfaces and the transgressed character ---

struct DeltaSurface2 {
    int n_vertices = 0;
    int n_edges = 0;
    struct Edge {
        int tail = 0, head = 0;
    };
    std::vector<Edge> edges;
    struct Face {
        std::array<int, 3> v;  // branching order
        std::array<int, 3> e;  // slots (01),(02),(12)
        int sign = 1;
    };
    std::vector<Face> faces;
};

inline void validate_surface(const DeltaSurface2& S) {
    require((int)S.edges.size() == S.n_edges, "surface edge table size mismatch");
    std::vector<long long> closure(S.n_edges, 0);
    std::vector<int> uses(S.n_edges, 0);
    const int slot_v[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    const int slot_sign[3] = {1, -1, 1};  // induced boundary signs of (01),(02),(12)
    for (const auto& f : S.faces) {
        require(f.sign == 1 || f.sign == -1, "face orientation sign must be +1 or -1");
        for (int s = 0; s < 3; ++s) {
            int e = f.e[s];
            require(0 <= e && e < S.n_edges, "face references a missing edge");
            require(S.edges[e].tail == f.v[slot_v[s][0]] && S.edges[e].head == f.v[slot_v[s][1]],
                    "face slot disagrees with the edge endpoints");
            closure[e] += f.sign * slot_sign[s];
            uses[e] += 1;
        }
    }
    for (int e = 0; e < S.n_edges; ++e) {
        require(uses[e] == 2, "edge is not shared by exactly two faces");
        require(closure[e] == 0, "edge orientations do not cancel; surface is not closed oriented");
    }
}

// square torus with one vertex, edges a, b and the diagonal ab
inline DeltaSurface2 torus2_one_vertex() {
    DeltaSurface2 S;
    S.n_vertices = 1;
    S.n_edges = 3;
    S.edges = {{0, 0}, {0, 0}, {0, 0}};
    S.faces = {{{0, 0, 0}, {0, 2, 1}, 1},   // (01)=a (02)=ab (12)=b
               {{0, 0, 0}, {1, 2, 0}, -1}}; // (01)=b (02)=ab (12)=a
    validate_surface(S);
    return S;
}

// S^1 x surface as one prism layer whose top is glued back to its bottom.
// Edge layout of the output: surface edges keep their ids, then one vertical
// loop per surface vertex, then one diagonal per surface edge.
struct PrismCylinder {
    DeltaComplex3 complex;
    int n_surface_edges = 0;
    int n_surface_vertices = 0;
    int vertical(int v) const { return n_surface_edges + v; }
    int diagonal(int e) const { return n_surface_edges + n_surface_vertices + e; }

    // full edge coloring from a flat surface coloring plus vertex twists;
    // flatness requires t_tail * z(e) = z(e) * t_head on every edge
    VecI coloring(const DeltaSurface2& S, const FiniteGroupModel& G, const VecI& z,
                  const VecI& twist) const {
        require((int)z.size() == S.n_edges, "surface coloring has wrong size");
        require((int)twist.size() == S.n_vertices, "twist wants one element per vertex");
        for (int e = 0; e < S.n_edges; ++e)
            require(G.mul(twist[S.edges[e].tail], z[e]) == G.mul(z[e], twist[S.edges[e].head]),
                    "twist does not transport along the surface coloring");
        VecI full(complex.n_edges, -1);
        for (int e = 0; e < S.n_edges; ++e) full[e] = z[e];
        for (int v = 0; v < S.n_vertices; ++v) full[vertical(v)] = twist[v];
        for (int e = 0; e < S.n_edges; ++e)
            full[diagonal(e)] = G.mul(twist[S.edges[e].tail], z[e]);
        return full;
    }
};

inline PrismCylinder prism_cylinder(const DeltaSurface2& S) {
    validate_surface(S);
    PrismCylinder P;
    P.n_surface_edges = S.n_edges;
    P.n_surface_vertices = S.n_vertices;
    DeltaComplex3& M = P.complex;
    M.n_vertices = S.n_vertices;
    M.n_edges = S.n_edges + S.n_vertices + S.n_edges;
    // faces: the surface face itself (top = bottom), two interior walls per
    // face, and two side triangles per surface edge
    std::vector<int> fbase(S.faces.size()), fwall0(S.faces.size()), fwall1(S.faces.size());
    std::vector<int> fside1(S.n_edges), fside2(S.n_edges);
    for (size_t i = 0; i < S.faces.size(); ++i) {
        const auto& f = S.faces[i];
        fbase[i] = (int)M.faces.size();
        M.faces.push_back({{f.e[0], f.e[1], f.e[2]}});
        fwall0[i] = (int)M.faces.size();  // (v0^0, v1^1, v2^1)
        M.faces.push_back({{P.diagonal(f.e[0]), P.diagonal(f.e[1]), f.e[2]}});
        fwall1[i] = (int)M.faces.size();  // (v0^0, v1^0, v2^1)
        M.faces.push_back({{f.e[0], P.diagonal(f.e[1]), P.diagonal(f.e[2])}});
    }
    for (int e = 0; e < S.n_edges; ++e) {
        fside1[e] = (int)M.faces.size();  // (u^0, w^0, w^1)
        M.faces.push_back({{e, P.diagonal(e), P.vertical(S.edges[e].head)}});
        fside2[e] = (int)M.faces.size();  // (u^0, u^1, w^1)
        M.faces.push_back({{P.vertical(S.edges[e].tail), P.diagonal(e), e}});
    }
    for (size_t i = 0; i < S.faces.size(); ++i) {
        const auto& f = S.faces[i];
        int e01 = f.e[0], e02 = f.e[1], e12 = f.e[2];
        DeltaComplex3::Tet t0;  // (v0^0, v0^1, v1^1, v2^1)
        t0.e = {P.vertical(f.v[0]), P.diagonal(e01), P.diagonal(e02), e01, e02, e12};
        t0.f = {fbase[i], fwall0[i], fside2[e02], fside2[e01]};
        t0.sign = f.sign;
        DeltaComplex3::Tet t1;  // (v0^0, v1^0, v1^1, v2^1)
        t1.e = {e01, P.diagonal(e01), P.diagonal(e02), P.vertical(f.v[1]), P.diagonal(e12), e12};
        t1.f = {fside2[e12], fwall0[i], fwall1[i], fside1[e01]};
        t1.sign = -f.sign;
        DeltaComplex3::Tet t2;  // (v0^0, v1^0, v2^0, v2^1)
        t2.e = {e01, e02, P.diagonal(e02), e12, P.diagonal(e12), P.vertical(f.v[2])};
        t2.f = {fside1[e12], fside1[e02], fwall1[i], fbase[i]};
        t2.sign = f.sign;
        M.tets.push_back(t0);
        M.tets.push_back(t1);
        M.tets.push_back(t2);
    }
    validate_complex(M);
    return P;
}

// The transgressed 2-holonomy for a finite gauge group: the value on a flat
// surface coloring is the weight of the prism cylinder over the surface, with
// the circle direction colored by the canonical twist.  For the built-in
// torus coloring (a, b) the twist threads the first holonomy a through the
// circle, reading the canonical bundle's "holonomy g over the circle at g"
// at the loop the coloring wraps.
class SurfaceCharacter {
  public:
    // owns a copy of the group, so the character outlives its inputs
    SurfaceCharacter(const FiniteGroupModel& G, const GroupCochain& omega)
        : G_(G), w_(IntCochain3::from(omega)), torus_(torus2_one_vertex()),
          prism_(prism_cylinder(torus_)) {}

    // value on explicit surface data
    Angle cylinder_value(const DeltaSurface2& S, const PrismCylinder& P, const VecI& z,
                         const VecI& twist) const {
        VecI full = P.coloring(S, G_, z, twist);
        check_flat(P.complex, G_, full);
        return Angle::exact(w_.weight(P.complex, full), w_.den);
    }

    // built-in torus coloring by a commuting pair
    Angle torus_value(int a, int b) const {
        require(0 <= a && a < G_.size() && 0 <= b && b < G_.size(),
                "torus coloring wants group elements");
        require(G_.commute(a, b), "torus coloring wants a commuting pair");
        return cylinder_value(torus_, prism_, {a, b, G_.mul(a, b)}, {a});
    }

    const DeltaSurface2& torus() const { return torus_; }
    const PrismCylinder& torus_prism() const { return prism_; }
    const FiniteGroupModel& group() const { return G_; }

  private:
    static void check_flat(const DeltaComplex3& M, const FiniteGroupModel& G, const VecI& z) {
        for (int c : z) require(c >= 0, "prism coloring left an edge uncolored");
        for (const auto& f : M.faces)
            require(z[f.e[1]] == G.mul(z[f.e[0]], z[f.e[2]]), "prism coloring is not flat");
    }

    FiniteGroupModel G_;
    IntCochain3 w_;
    DeltaSurface2 torus_;
    PrismCylinder prism_;
};

inline SurfaceCharacter psi_finite_group(const FiniteGroupModel& G, const GroupCochain& omega) {
    TripleCheck tc = check_triple(omega);
    require(tc.pass, "transgression wants a degree 3 cocycle; identity fails at a 4-tuple");
    return SurfaceCharacter(G, omega);
}

}  // namespace dlg
