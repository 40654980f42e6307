#pragma once

// Finite groups presented by multiplication tables, circle valued group
// cochains on the nerve levels G^q, and the simplicial face maps.
// Everything here runs on the exact angle backend.

#include "dlg/angle.hpp"
#include "dlg/base.hpp"

namespace dlg {

class FiniteGroupModel {
  public:
    // table[a*n+b] = a*b.  Group axioms are verified here, not trusted.
    FiniteGroupModel(std::string name, int n, std::vector<int> table)
        : name_(std::move(name)), n_(n), table_(std::move(table)) {
        require(n_ >= 1 && (int)table_.size() == n_ * n_, "group table has wrong size");
        for (int x : table_) require(0 <= x && x < n_, "group table entry out of range");
        id_ = -1;
        for (int e = 0; e < n_; ++e) {
            bool ok = true;
            for (int a = 0; a < n_; ++a)
                if (mul(e, a) != a || mul(a, e) != a) ok = false;
            if (ok) {
                id_ = e;
                break;
            }
        }
        require(id_ >= 0, "group has no identity");
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    require(mul(mul(a, b), c) == mul(a, mul(b, c)), "group table not associative");
        inv_.assign(n_, -1);
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                if (mul(a, b) == id_ && mul(b, a) == id_) inv_[a] = b;
        for (int a = 0; a < n_; ++a) require(inv_[a] >= 0, "group element has no inverse");
    }

    const std::string& name() const { return name_; }
    int size() const { return n_; }
    int identity() const { return id_; }
    int mul(int a, int b) const { return table_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }

  private:
    std::string name_;
    int n_;
    std::vector<int> table_;
    std::vector<int> inv_;
    int id_;
};

inline FiniteGroupModel cyclic_group(int n) {
    require(n >= 1, "cyclic group wants n >= 1");
    std::vector<int> t(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
    return FiniteGroupModel("Z/" + std::to_string(n), n, std::move(t));
}

// elements are bit pairs {0,1,2,3}, product = xor
inline FiniteGroupModel klein_four() {
    std::vector<int> t(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[a * 4 + b] = a ^ b;
    return FiniteGroupModel("V4", 4, std::move(t));
}

// d_i on the nerve level: drop an end or merge a neighbouring pair.
inline VecI face_map(const FiniteGroupModel& G, int i, const VecI& tuple) {
    int m = (int)tuple.size();
    require(0 <= i && i <= m, "face map index out of range");
    VecI r;
    r.reserve(m - 1);
    if (i == 0) {
        r.assign(tuple.begin() + 1, tuple.end());
    } else if (i == m) {
        r.assign(tuple.begin(), tuple.end() - 1);
    } else {
        for (int j = 0; j + 1 < m; ++j) {
            if (j < i - 1) r.push_back(tuple[j]);
            else if (j == i - 1) r.push_back(G.mul(tuple[i - 1], tuple[i]));
            else r.push_back(tuple[j + 1]);
        }
    }
    return r;
}

// Dense table over G^degree.  Normalized: any identity slot means angle zero.
class GroupCochain {
  public:
    GroupCochain(const FiniteGroupModel& G, int degree)
        : G_(&G), degree_(degree) {
        require(degree >= 1, "group cochain wants degree >= 1");
        size_t cells = 1;
        for (int q = 0; q < degree; ++q) cells *= (size_t)G.size();
        table_.assign(cells, Angle());
    }

    const FiniteGroupModel& group() const { return *G_; }
    int degree() const { return degree_; }

    size_t index(const VecI& t) const {
        require((int)t.size() == degree_, "group cochain tuple has wrong arity");
        size_t ix = 0;
        for (int v : t) {
            require(0 <= v && v < G_->size(), "group element out of range");
            ix = ix * (size_t)G_->size() + (size_t)v;
        }
        return ix;
    }

    const Angle& at(const VecI& t) const { return table_[index(t)]; }
    void set(const VecI& t, const Angle& a) { table_[index(t)] = a; }

    bool is_normalized() const {
        VecI t(degree_);
        return scan_normalized(t, 0);
    }

    // walks all tuples in lexicographic order
    template <class F>
    void for_each(F&& f) const {
        VecI t(degree_, 0);
        size_t cells = table_.size();
        for (size_t ix = 0; ix < cells; ++ix) {
            f((const VecI&)t, table_[ix]);
            for (int q = degree_ - 1; q >= 0; --q) {
                if (++t[q] < G_->size()) break;
                t[q] = 0;
            }
        }
    }

  private:
    bool scan_normalized(VecI& t, int pos) const {
        if (pos == degree_) {
            for (int v : t)
                if (v == G_->identity()) return at(t).defect() == 0.0 && at(t).value() == 0.0;
            return true;
        }
        for (t[pos] = 0; t[pos] < G_->size(); ++t[pos])
            if (!scan_normalized(t, pos + 1)) return false;
        return true;
    }

    const FiniteGroupModel* G_;
    int degree_;
    std::vector<Angle> table_;
};

inline GroupCochain trivial_group_cochain(const FiniteGroupModel& G, int degree) {
    return GroupCochain(G, degree);
}

// the carry cocycle on Z/n: angle k*a*(b+c - (b+c mod n)) / n^2
inline GroupCochain cyclic_cocycle(const FiniteGroupModel& Zn, int k) {
    long long n = Zn.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            require(Zn.mul(a, b) == (a + b) % n, "carry cocycle lives on a cyclic group");
    GroupCochain w(Zn, 3);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                long long carry = ((long long)b + c) / n;
                w.set({a, b, c}, Angle::exact((long long)k * a * carry, n));
            }
    return w;
}

// alternating sum of the q+2 face pullbacks
inline GroupCochain group_coboundary(const GroupCochain& beta) {
    const FiniteGroupModel& G = beta.group();
    GroupCochain d(G, beta.degree() + 1);
    d.for_each([&](const VecI& t, const Angle&) {
        Angle s;
        for (int i = 0; i <= (int)t.size(); ++i) {
            Angle v = beta.at(face_map(G, i, t));
            s = (i % 2 == 0) ? s + v : s - v;
        }
        d.set(t, s);
    });
    return d;
}

struct TripleCheck {
    bool pass = true;
    VecI witness;   // offending 4-tuple when pass is false
    Angle defect;   // its alternating sum
};

// finite specialization: the degree 3 cocycle identity over all 4-tuples
inline TripleCheck check_triple(const GroupCochain& omega) {
    require(omega.degree() == 3, "triple check wants a degree 3 cochain");
    const FiniteGroupModel& G = omega.group();
    TripleCheck rep;
    int n = G.size();
    VecI t(4);
    for (t[0] = 0; t[0] < n; ++t[0])
        for (t[1] = 0; t[1] < n; ++t[1])
            for (t[2] = 0; t[2] < n; ++t[2])
                for (t[3] = 0; t[3] < n; ++t[3]) {
                    Angle s;
                    for (int i = 0; i <= 4; ++i) {
                        Angle v = omega.at(face_map(G, i, t));
                        s = (i % 2 == 0) ? s + v : s - v;
                    }
                    if (!(s == Angle())) return {false, t, s};
                }
    return rep;
}

// exact random cochain: numerators over a fixed denominator, identity slots zero
inline GroupCochain random_group_cochain(const FiniteGroupModel& G, int degree, long long den,
                                         uint64_t seed) {
    GroupCochain b(G, degree);
    Rng rng(seed);
    b.for_each([&](const VecI& t, const Angle&) {
        for (int v : t)
            if (v == G.identity()) return;
        b.set(t, Angle::exact(rng.next_int((int)den), den));
    });
    return b;
}

}  // namespace dlg
