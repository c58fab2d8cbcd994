#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "glhat/diffop.hpp"
#include "glhat/matlie.hpp"
#include "glhat/numkernel.hpp"

namespace glhat {

struct RhKey {
    int i = 1, j = 1;   // matrix unit E_{i,j}
    int m1 = 0, m2 = 0; // bidegree in the two formal symbols
    auto operator<=>(const RhKey&) const = default;
};

// Element of the conformal algebra attached to M_n: the free module on
// symbols E_{i,j}[m1,m2] plus a one-dimensional unit component.
class RHatElem {
  public:
    explicit RHatElem(int n = 1) : n_(n) {}

    static RHatElem basis(int n, int i, int j, int m1, int m2, const Rat& c = Rat(1)) {
        RHatElem x(n);
        x.add(i, j, m1, m2, c);
        return x;
    }
    static RHatElem one(int n, const Rat& c = Rat(1)) {
        RHatElem x(n);
        x.unit_ = c;
        return x;
    }

    int n() const { return n_; }
    const std::map<RhKey, Rat>& terms() const { return terms_; }
    const Rat& unit() const { return unit_; }
    Rat& unit() { return unit_; }
    bool is_zero() const { return terms_.empty() && unit_ == 0; }

    void add(int i, int j, int m1, int m2, const Rat& c) {
        if (i < 1 || i > n_ || j < 1 || j > n_ || m1 < 0 || m2 < 0)
            throw std::invalid_argument("RHatElem: bad index");
        if (c == 0) return;
        RhKey key{i, j, m1, m2};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    RHatElem& operator+=(const RHatElem& o) {
        for (auto& [k, c] : o.terms_) add(k.i, k.j, k.m1, k.m2, c);
        unit_ += o.unit_;
        return *this;
    }
    RHatElem& operator-=(const RHatElem& o) {
        for (auto& [k, c] : o.terms_) add(k.i, k.j, k.m1, k.m2, -c);
        unit_ -= o.unit_;
        return *this;
    }
    RHatElem& operator*=(const Rat& s) {
        if (s == 0) {
            terms_.clear();
            unit_ = 0;
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        unit_ *= s;
        return *this;
    }
    friend RHatElem operator+(RHatElem a, const RHatElem& b) { return a += b; }
    friend RHatElem operator-(RHatElem a, const RHatElem& b) { return a -= b; }
    friend RHatElem operator*(RHatElem a, const Rat& s) { return a *= s; }
    friend bool operator==(const RHatElem& a, const RHatElem& b) {
        return a.n_ == b.n_ && a.unit_ == b.unit_ && a.terms_ == b.terms_;
    }

  private:
    int n_ = 1;
    std::map<RhKey, Rat> terms_;
    Rat unit_;
};

// Laurent polynomial in z^{-1} with conformal-algebra coefficients, the
// codomain of Y^+: map from z-power (always <= -1) to element.
using RhField = std::map<int, RHatElem>;

inline void rh_field_add(RhField& f, int power, const RHatElem& x) {
    if (x.is_zero()) return;
    auto it = f.find(power);
    if (it == f.end()) {
        f.emplace(power, x);
    } else {
        it->second += x;
        if (it->second.is_zero()) f.erase(it);
    }
}

// The derivation: E[m1,m2] -> (m1+1) E[m1+1,m2] + (m2+1) E[m1,m2+1], unit -> 0.
inline RHatElem rh_del(const RHatElem& x) {
    RHatElem out(x.n());
    for (auto& [k, c] : x.terms()) {
        out.add(k.i, k.j, k.m1 + 1, k.m2, c * (long)(k.m1 + 1));
        out.add(k.i, k.j, k.m1, k.m2 + 1, c * (long)(k.m2 + 1));
    }
    return out;
}

// Y^+(a[m1,m2], z) b[n1,n2]: the exact Laurent polynomial
//   C(-n1-1, m2) sum_p C(p, m1) ab[p, n2] z^{p-m1-m2-n1-1}
// - C(-n2-1, m1) sum_q C(q, m2) ba[n1, q] z^{q-m1-m2-n2-1}
// + C(-n1-1, m2) C(-n2-1, m1) tr(ab) 1 z^{-m1-m2-n1-n2-2},
// extended bilinearly; Y^+ annihilates and is annihilated by the unit.
inline RhField yplus(const RHatElem& a, const RHatElem& b) {
    if (a.n() != b.n()) throw std::invalid_argument("yplus: dimension mismatch");
    RhField out;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            Rat c = ca * cb;
            int m1 = ka.m1, m2 = ka.m2, n1 = kb.m1, n2 = kb.m2;
            if (ka.j == kb.i) {
                Rat lead = gbinom((long)(-n1 - 1), (unsigned)m2);
                for (int p = 0; p <= m1 + m2 + n1; ++p)
                    rh_field_add(out, p - m1 - m2 - n1 - 1,
                                 RHatElem::basis(a.n(), ka.i, kb.j, p, n2,
                                                 c * lead * gbinom((long)p, (unsigned)m1)));
            }
            if (kb.j == ka.i) {
                Rat lead = gbinom((long)(-n2 - 1), (unsigned)m1);
                for (int q = 0; q <= m1 + m2 + n2; ++q)
                    rh_field_add(out, q - m1 - m2 - n2 - 1,
                                 RHatElem::basis(a.n(), kb.i, ka.j, n1, q,
                                                 -c * lead * gbinom((long)q, (unsigned)m2)));
            }
            if (ka.j == kb.i && kb.j == ka.i) {
                Rat tr = c * gbinom((long)(-n1 - 1), (unsigned)m2) * gbinom((long)(-n2 - 1), (unsigned)m1);
                rh_field_add(out, -m1 - m2 - n1 - n2 - 2, RHatElem::one(a.n(), tr));
            }
        }
    return out;
}

// Translation compatibility: Y^+(del u, z) = d/dz Y^+(u, z).
inline bool conformal_axiom_translation(const RHatElem& u, const RHatElem& v) {
    RhField lhs = yplus(rh_del(u), v);
    RhField rhs;
    for (auto& [p, x] : yplus(u, v)) rh_field_add(rhs, p - 1, x * Rat((long)p));
    return lhs == rhs;
}

// Skew symmetry: Y^+(u,z) v = Res_x e^{x del} Y^+(v,-x) u / (z - x), with
// 1/(z-x) expanded in nonnegative powers of x.
inline bool conformal_axiom_skew(const RHatElem& u, const RHatElem& v) {
    RhField lhs = yplus(u, v);
    RhField rhs;
    for (auto& [p, x] : yplus(v, u)) {
        // coefficient of x^{p} in Y^+(v,-x)u is (-1)^{-p-1... } on powers of x:
        // term x z^{p} at z=-x gives (-1)^p x^p; with p = -j-1 <= -1.
        int j = -p - 1;
        Rat sign = (j + 1) % 2 ? Rat(-1) : Rat(1);  // (-1)^p with p = -j-1
        // e^{x del}: sum_s del^s / s! adds x^s; Res_x picks x-power -1: s = j - k
        // paired with 1/(z-x) = sum_k x^k z^{-k-1}.
        RHatElem ds = x;
        for (int s = 0; s <= j; ++s) {
            // term: sign * del^s(x)/s! z^{-(j-s)-1}
            rh_field_add(rhs, -(j - s) - 1, ds * (sign / factorial((unsigned)s)));
            ds = rh_del(ds);
        }
    }
    return lhs == rhs;
}

// Commutator axiom: [Y^+(u,z1), Y^+(v,z2)] w = Res_x Y^+(Y^+(u,z1-x)v, x) w / (z2-x),
// checked as an exact identity between polynomials in z1^{-1}, z2^{-1}.
inline bool conformal_axiom_commutator(const RHatElem& u, const RHatElem& v, const RHatElem& w) {
    // lhs coefficients by (z1-power, z2-power)
    std::map<std::pair<int, int>, RHatElem> lhs, rhs;
    auto add2 = [](std::map<std::pair<int, int>, RHatElem>& m, int p1, int p2, const RHatElem& x) {
        if (x.is_zero()) return;
        auto key = std::make_pair(p1, p2);
        auto it = m.find(key);
        if (it == m.end()) {
            m.emplace(key, x);
        } else {
            it->second += x;
            if (it->second.is_zero()) m.erase(it);
        }
    };
    for (auto& [p2, x] : yplus(v, w))
        for (auto& [p1, y] : yplus(u, x)) add2(lhs, p1, p2, y);
    for (auto& [p1, x] : yplus(u, w))
        for (auto& [p2, y] : yplus(v, x)) add2(lhs, p1, p2, y * Rat(-1));

    for (auto& [pin, x] : yplus(u, v)) {
        int j = -pin - 1;  // Y^+(u, z1-x)v carries (z1-x)^{-j-1}
        for (auto& [pk, y] : yplus(x, w)) {
            int k = -pk - 1;  // x^{-k-1}
            // (z1-x)^{-j-1} = sum_t C(-j-1,t) z1^{-j-1-t} (-x)^t ;
            // 1/(z2-x) = sum_s x^s z2^{-s-1}; Res_x needs t - k - 1 + s = -1.
            for (int t = 0; t <= k; ++t) {
                int s = k - t;
                Rat coef = gbinom((long)(-j - 1), (unsigned)t) * (t % 2 ? Rat(-1) : Rat(1));
                add2(rhs, -j - 1 - t, -s - 1, y * coef);
            }
        }
    }
    return lhs == rhs;
}

}  // namespace glhat
