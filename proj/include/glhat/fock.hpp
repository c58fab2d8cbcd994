#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "glhat/glinf.hpp"
#include "glhat/halfint.hpp"
#include "glhat/rational.hpp"

namespace glhat {

// ---------------------------------------------------------------------------
// Fermionic Fock space: polynomials in odd variables theta_l, tbar_l indexed
// by negative half-odd l. Canonical monomial form: all tbar factors to the
// left of all theta factors, each block in strictly increasing index order.
// Operators act from the left; every reordering picks up the Koszul sign
// (-1)^{number of odd factors crossed}. For positive index l the symbols act
// as the dual derivations theta_l = d/d tbar_{-l} and tbar_l = d/d theta_{-l}.
// ---------------------------------------------------------------------------

struct FermMono {
    std::vector<HalfInt> tbars;  // strictly increasing, negative half-odd
    std::vector<HalfInt> ts;     // strictly increasing, negative half-odd
    auto operator<=>(const FermMono&) const = default;
};

namespace detail {

// Insert v into a strictly increasing block; returns crossings or nullopt if present.
inline std::optional<int> block_insert(std::vector<HalfInt>& b, HalfInt v) {
    auto it = std::lower_bound(b.begin(), b.end(), v);
    if (it != b.end() && *it == v) return std::nullopt;
    int crossings = (int)(it - b.begin());
    b.insert(it, v);
    return crossings;
}

// Remove v from a block; returns its position or nullopt if absent.
inline std::optional<int> block_remove(std::vector<HalfInt>& b, HalfInt v) {
    auto it = std::lower_bound(b.begin(), b.end(), v);
    if (it == b.end() || *it != v) return std::nullopt;
    int pos = (int)(it - b.begin());
    b.erase(it);
    return pos;
}

}  // namespace detail

// Each primitive returns the signed result of one odd operator applied from
// the left, or nullopt when the monomial is annihilated.
inline std::optional<std::pair<int, FermMono>> ferm_mult_tbar(FermMono m, HalfInt c) {
    auto p = detail::block_insert(m.tbars, c);
    if (!p) return std::nullopt;
    return std::make_pair(*p % 2 ? -1 : 1, std::move(m));
}

inline std::optional<std::pair<int, FermMono>> ferm_mult_t(FermMono m, HalfInt c) {
    int cross = (int)m.tbars.size();
    auto p = detail::block_insert(m.ts, c);
    if (!p) return std::nullopt;
    cross += *p;
    return std::make_pair(cross % 2 ? -1 : 1, std::move(m));
}

inline std::optional<std::pair<int, FermMono>> ferm_der_tbar(FermMono m, HalfInt c) {
    auto p = detail::block_remove(m.tbars, c);
    if (!p) return std::nullopt;
    return std::make_pair(*p % 2 ? -1 : 1, std::move(m));
}

inline std::optional<std::pair<int, FermMono>> ferm_der_t(FermMono m, HalfInt c) {
    int cross = (int)m.tbars.size();
    auto p = detail::block_remove(m.ts, c);
    if (!p) return std::nullopt;
    cross += *p;
    return std::make_pair(cross % 2 ? -1 : 1, std::move(m));
}

// tbar_l: multiplication for l < 0, d/d theta_{-l} for l > 0.
inline std::optional<std::pair<int, FermMono>> ferm_op_tbar(FermMono m, HalfInt l) {
    return l.negative() ? ferm_mult_tbar(std::move(m), l) : ferm_der_t(std::move(m), -l);
}

// theta_k: multiplication for k < 0, d/d tbar_{-k} for k > 0.
inline std::optional<std::pair<int, FermMono>> ferm_op_t(FermMono m, HalfInt k) {
    return k.negative() ? ferm_mult_t(std::move(m), k) : ferm_der_tbar(std::move(m), -k);
}

// ---------------------------------------------------------------------------
// Bosonic Fock space: ordinary polynomials in x_l, xbar_l, negative half-odd
// l. For positive l the symbols act as x_l = d/d xbar_{-l} and
// xbar_l = -d/d x_{-l}; note the sign on the second one.
// ---------------------------------------------------------------------------

struct BoseMono {
    std::map<HalfInt, int> xbars;  // index -> exponent >= 1
    std::map<HalfInt, int> xs;
    auto operator<=>(const BoseMono&) const = default;
};

inline std::optional<std::pair<Rat, BoseMono>> bose_mult(std::map<HalfInt, int> BoseMono::* slot,
                                                         BoseMono m, HalfInt c) {
    (m.*slot)[c] += 1;
    return std::make_pair(Rat(1), std::move(m));
}

inline std::optional<std::pair<Rat, BoseMono>> bose_der(std::map<HalfInt, int> BoseMono::* slot,
                                                        BoseMono m, HalfInt c) {
    auto it = (m.*slot).find(c);
    if (it == (m.*slot).end()) return std::nullopt;
    Rat coeff((long)it->second);
    if (--it->second == 0) (m.*slot).erase(it);
    return std::make_pair(coeff, std::move(m));
}

inline std::optional<std::pair<Rat, BoseMono>> bose_op_xbar(BoseMono m, HalfInt l) {
    if (l.negative()) return bose_mult(&BoseMono::xbars, std::move(m), l);
    auto r = bose_der(&BoseMono::xs, std::move(m), -l);
    if (!r) return std::nullopt;
    r->first = -r->first;
    return r;
}

inline std::optional<std::pair<Rat, BoseMono>> bose_op_x(BoseMono m, HalfInt k) {
    if (k.negative()) return bose_mult(&BoseMono::xs, std::move(m), k);
    return bose_der(&BoseMono::xbars, std::move(m), -k);
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

template <class M>
struct FockVec {
    std::map<M, Rat> terms;

    static FockVec vacuum() {
        FockVec v;
        v.terms.emplace(M{}, Rat(1));
        return v;
    }

    void add(const M& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    FockVec& operator+=(const FockVec& o) {
        for (auto& [m, c] : o.terms) add(m, c);
        return *this;
    }
    FockVec& operator-=(const FockVec& o) {
        for (auto& [m, c] : o.terms) add(m, -c);
        return *this;
    }
    FockVec& operator*=(const Rat& s) {
        if (s == 0) {
            terms.clear();
            return *this;
        }
        for (auto& [m, c] : terms) c *= s;
        return *this;
    }
    friend FockVec operator+(FockVec a, const FockVec& b) { return a += b; }
    friend FockVec operator-(FockVec a, const FockVec& b) { return a -= b; }
    friend FockVec operator*(FockVec a, const Rat& s) { return a *= s; }
    friend bool operator==(const FockVec& a, const FockVec& b) { return a.terms == b.terms; }
};

using FermVec = FockVec<FermMono>;
using BoseVec = FockVec<BoseMono>;

// E_{l,k} on one fermionic monomial: tbar_l theta_k, except for the
// coincidence -k = l > 0 where the normally ordered form -theta_k tbar_l
// applies. kappa0 acts as +Id and is handled by callers.
inline FermVec ferm_act_E(HalfInt l, HalfInt k, const FermMono& m) {
    FermVec out;
    if (l == -k && l.positive()) {
        auto a = ferm_op_tbar(m, l);
        if (!a) return out;
        auto b = ferm_op_t(std::move(a->second), k);
        if (!b) return out;
        out.add(b->second, Rat(-a->first * b->first));
        return out;
    }
    auto a = ferm_op_t(m, k);
    if (!a) return out;
    auto b = ferm_op_tbar(std::move(a->second), l);
    if (!b) return out;
    out.add(b->second, Rat(a->first * b->first));
    return out;
}

// E_{l,k} on one bosonic monomial: the normally ordered xbar_l x_k, i.e.
// annihilation operators apply before multiplications. kappa0 acts as -Id.
inline BoseVec bose_act_E(HalfInt l, HalfInt k, const BoseMono& m) {
    BoseVec out;
    if (l.positive() && k.negative()) {
        auto a = bose_op_xbar(m, l);
        if (!a) return out;
        auto b = bose_op_x(std::move(a->second), k);
        if (!b) return out;
        out.add(b->second, a->first * b->first);
        return out;
    }
    auto a = bose_op_x(m, k);
    if (!a) return out;
    auto b = bose_op_xbar(std::move(a->second), l);
    if (!b) return out;
    out.add(b->second, a->first * b->first);
    return out;
}

inline FermVec ferm_act(HalfInt l, HalfInt k, const FermVec& v) {
    FermVec out;
    for (auto& [m, c] : v.terms) {
        FermVec piece = ferm_act_E(l, k, m);
        for (auto& [pm, pc] : piece.terms) out.add(pm, pc * c);
    }
    return out;
}

inline BoseVec bose_act(HalfInt l, HalfInt k, const BoseVec& v) {
    BoseVec out;
    for (auto& [m, c] : v.terms) {
        BoseVec piece = bose_act_E(l, k, m);
        for (auto& [pm, pc] : piece.terms) out.add(pm, pc * c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grading and highest weight data
// ---------------------------------------------------------------------------

inline std::int64_t mono_charge(const FermMono& m) {
    return (std::int64_t)m.ts.size() - (std::int64_t)m.tbars.size();
}

inline std::int64_t mono_charge(const BoseMono& m) {
    std::int64_t c = 0;
    for (auto& [l, e] : m.xs) c += e;
    for (auto& [l, e] : m.xbars) c -= e;
    return c;
}

template <class M>
std::int64_t charge(const FockVec<M>& v) {
    bool first = true;
    std::int64_t c = 0;
    for (auto& [m, coeff] : v.terms) {
        std::int64_t mc = mono_charge(m);
        if (first) {
            c = mc;
            first = false;
        } else if (mc != c) {
            throw std::invalid_argument("charge: inhomogeneous vector");
        }
    }
    return c;
}

inline std::int64_t max_abs_doubled(const FermMono& m) {
    std::int64_t b = 0;
    for (auto& v : m.tbars) b = std::max(b, std::abs(v.doubled));
    for (auto& v : m.ts) b = std::max(b, std::abs(v.doubled));
    return b;
}

inline std::int64_t max_abs_doubled(const BoseMono& m) {
    std::int64_t b = 0;
    for (auto& [v, e] : m.xbars) b = std::max(b, std::abs(v.doubled));
    for (auto& [v, e] : m.xs) b = std::max(b, std::abs(v.doubled));
    return b;
}

template <class M>
std::int64_t max_abs_doubled(const FockVec<M>& v) {
    std::int64_t b = 0;
    for (auto& [m, c] : v.terms) b = std::max(b, max_abs_doubled(m));
    return b;
}

// v_k: 1 for k = 0, theta_{-1/2} theta_{-3/2} ... theta_{1/2-k} for k > 0,
// the barred version for k < 0. The product is written in decreasing index
// order, so against the canonical increasing form it carries the reversal
// sign (-1)^{k(k-1)/2}.
inline FermVec ferm_hw_vector(std::int64_t k) {
    FermMono m;
    std::int64_t a = std::abs(k);
    for (std::int64_t r = 0; r < a; ++r) {
        HalfInt idx = HalfInt::half_odd(-(r + 1));  // -r - 1/2
        if (k > 0)
            m.ts.push_back(idx);
        else
            m.tbars.push_back(idx);
    }
    std::sort(m.ts.begin(), m.ts.end());
    std::sort(m.tbars.begin(), m.tbars.end());
    FermVec v;
    v.add(m, (a * (a - 1) / 2) % 2 ? Rat(-1) : Rat(1));
    return v;
}

inline BoseVec bose_hw_vector(std::int64_t k) {
    BoseMono m;
    if (k > 0) m.xs[HalfInt::half_odd(-1)] = (int)k;
    if (k < 0) m.xbars[HalfInt::half_odd(-1)] = (int)(-k);
    BoseVec v;
    v.add(m, Rat(1));
    return v;
}

inline WeightFn ferm_hw_weight(std::int64_t k) {
    WeightFn w;
    w.kappa0_val = 1;
    for (std::int64_t r = 0; r < std::abs(k); ++r) {
        HalfInt idx = HalfInt::half_odd(r);  // r + 1/2
        if (k > 0)
            w.diag[idx] = -1;
        else
            w.diag[-idx] = 1;
    }
    return w;
}

inline WeightFn bose_hw_weight(std::int64_t k) {
    WeightFn w;
    w.kappa0_val = -1;
    if (k > 0) w.diag[HalfInt::half_odd(0)] = Rat(-k);
    if (k < 0) w.diag[HalfInt::half_odd(-1)] = Rat(-k);
    return w;
}

inline Rat ferm_kappa0() { return Rat(1); }
inline Rat bose_kappa0() { return Rat(-1); }

// ---------------------------------------------------------------------------
// Translation operator: sum over l of (l + 1/2) E_{-1-l, l}. Only finitely
// many summands act on a given vector; the active window is cut out by the
// vector's variable support together with the fact that the single
// creation-creation summand carries coefficient zero.
// ---------------------------------------------------------------------------

template <class M, class ActE>
FockVec<M> translation_impl(const FockVec<M>& v, ActE&& actE) {
    FockVec<M> out;
    std::int64_t B = max_abs_doubled(v);
    for (std::int64_t dl = -B - 3; dl <= B + 3; ++dl) {
        if ((dl % 2 + 2) % 2 != 1) continue;
        HalfInt l(dl);
        Rat w = to_rat(l) + rat(1, 2);
        if (w == 0) continue;
        HalfInt row = HalfInt(-2) - l;  // -1 - l
        FockVec<M> piece = actE(row, l, v);
        piece *= w;
        out += piece;
    }
    return out;
}

inline FermVec translation(const FermVec& v) {
    return translation_impl(v, [](HalfInt l, HalfInt k, const FermVec& u) { return ferm_act(l, k, u); });
}

inline BoseVec translation(const BoseVec& v) {
    return translation_impl(v, [](HalfInt l, HalfInt k, const BoseVec& u) { return bose_act(l, k, u); });
}

// ---------------------------------------------------------------------------
// Diagonal action on tensor powers. E_{l,k} is even, so the Leibniz
// expansion carries no cross-factor signs; kappa0 acts as (+/- number of
// factors) per space.
// ---------------------------------------------------------------------------

template <class M>
struct TensorVec {
    std::map<std::vector<M>, Rat> terms;

    static TensorVec vacuum(int chi) {
        TensorVec v;
        v.terms.emplace(std::vector<M>(chi), Rat(1));
        return v;
    }

    void add(const std::vector<M>& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    TensorVec& operator+=(const TensorVec& o) {
        for (auto& [m, c] : o.terms) add(m, c);
        return *this;
    }
    TensorVec& operator-=(const TensorVec& o) {
        for (auto& [m, c] : o.terms) add(m, -c);
        return *this;
    }
    TensorVec& operator*=(const Rat& s) {
        if (s == 0) {
            terms.clear();
            return *this;
        }
        for (auto& [m, c] : terms) c *= s;
        return *this;
    }
    friend bool operator==(const TensorVec& a, const TensorVec& b) { return a.terms == b.terms; }
};

template <class M, class ActE>
TensorVec<M> tensor_act_impl(HalfInt l, HalfInt k, const TensorVec<M>& v, ActE&& actE) {
    TensorVec<M> out;
    for (auto& [factors, c] : v.terms) {
        for (size_t i = 0; i < factors.size(); ++i) {
            FockVec<M> single;
            single.add(factors[i], Rat(1));
            FockVec<M> moved = actE(l, k, single);
            for (auto& [m, mc] : moved.terms) {
                std::vector<M> copy = factors;
                copy[i] = m;
                out.add(copy, c * mc);
            }
        }
    }
    return out;
}

inline TensorVec<FermMono> tensor_act(HalfInt l, HalfInt k, const TensorVec<FermMono>& v) {
    return tensor_act_impl(l, k, v, [](HalfInt a, HalfInt b, const FermVec& u) { return ferm_act(a, b, u); });
}

inline TensorVec<BoseMono> tensor_act(HalfInt l, HalfInt k, const TensorVec<BoseMono>& v) {
    return tensor_act_impl(l, k, v, [](HalfInt a, HalfInt b, const BoseVec& u) { return bose_act(a, b, u); });
}

template <class M>
std::int64_t max_abs_doubled(const TensorVec<M>& v) {
    std::int64_t b = 0;
    for (auto& [factors, c] : v.terms)
        for (auto& f : factors) b = std::max(b, max_abs_doubled(f));
    return b;
}

}  // namespace glhat
