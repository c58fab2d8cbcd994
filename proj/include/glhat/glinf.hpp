#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "glhat/halfint.hpp"
#include "glhat/rational.hpp"

namespace glhat {

struct InfKey {
    HalfInt l, k;
    auto operator<=>(const InfKey&) const = default;
};

// Infinite matrix over half-integer indices with finite support, plus the
// central coordinate kappa0.
class InfMat {
  public:
    InfMat() = default;

    static InfMat unit_E(HalfInt l, HalfInt k, const Rat& c = Rat(1)) {
        InfMat x;
        x.add(l, k, c);
        return x;
    }
    static InfMat central(const Rat& c) {
        InfMat x;
        x.kappa0_ = c;
        return x;
    }

    void add(HalfInt l, HalfInt k, const Rat& c) {
        if (!l.is_half_odd() || !k.is_half_odd())
            throw std::invalid_argument("InfMat: indices must lie in Z + 1/2");
        if (c == 0) return;
        InfKey key{l, k};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<InfKey, Rat>& terms() const { return terms_; }
    const Rat& kappa0() const { return kappa0_; }
    Rat& kappa0() { return kappa0_; }
    bool is_zero() const { return terms_.empty() && kappa0_ == 0; }

    InfMat& operator+=(const InfMat& o) {
        for (auto& [k, c] : o.terms_) add(k.l, k.k, c);
        kappa0_ += o.kappa0_;
        return *this;
    }
    InfMat& operator-=(const InfMat& o) {
        for (auto& [k, c] : o.terms_) add(k.l, k.k, -c);
        kappa0_ -= o.kappa0_;
        return *this;
    }
    InfMat& operator*=(const Rat& s) {
        if (s == 0) {
            terms_.clear();
            kappa0_ = 0;
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        kappa0_ *= s;
        return *this;
    }
    friend InfMat operator+(InfMat a, const InfMat& b) { return a += b; }
    friend InfMat operator-(InfMat a, const InfMat& b) { return a -= b; }
    friend InfMat operator*(InfMat a, const Rat& s) { return a *= s; }
    friend bool operator==(const InfMat& a, const InfMat& b) {
        return a.kappa0_ == b.kappa0_ && a.terms_ == b.terms_;
    }

  private:
    std::map<InfKey, Rat> terms_;
    Rat kappa0_;
};

// Associative product E_{l1,l2} E_{k1,k2} = d_{l2+k1,0} E_{l1,k2}.
// Central coordinates are ignored.
inline InfMat imul(const InfMat& a, const InfMat& b) {
    InfMat out;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms())
            if (ka.k + kb.l == HalfInt(0)) out.add(ka.l, kb.k, ca * cb);
    return out;
}

// Division with remainder in 1..n: l = q n + s, s in {1,...,n}.
inline std::pair<std::int64_t, int> div_mod1n(std::int64_t l, int n) {
    std::int64_t a = l - 1;
    std::int64_t q = a >= 0 ? a / n : -((-a + n - 1) / n);
    int s = (int)(l - q * n);
    return {q, s};
}

// A two-cocycle of the form
//   c(E_{l1,l2}, E_{k1,k2}) =
//     d_{l1+k2,0} d_{l2+k1,0} [ S_row(l1) S_col(l2) - S_row(k1) S_col(k2) ]
// for a pair of 0/1 step functions. The standard cocycle takes S = H on
// both slots; the alpha/beta variants replace them by shifted copies of H.
struct Cocycle {
    std::function<int(HalfInt)> row_step;
    std::function<int(HalfInt)> col_step;
    std::string name = "standard";

    static Cocycle standard() {
        Cocycle c;
        c.row_step = [](HalfInt l) { return step(l); };
        c.col_step = [](HalfInt l) { return step(l); };
        return c;
    }

    // Residue class in 1..n of the integer a + 1/2, for a in Z + 1/2.
    static int cls_up(HalfInt a, int n) { return div_mod1n((a.doubled + 1) / 2, n).second; }
    // Residue class in 1..n of the integer -a + 1/2.
    static int cls_dn(HalfInt a, int n) { return div_mod1n((-a.doubled + 1) / 2, n).second; }

    // Row/column step functions of the alpha cocycle: H shifted by
    // (m_cls - iota0) n on rows and by (iota0 - m_cls) n on columns.
    static Cocycle alpha(std::int64_t iota0, const std::vector<int>& m) {
        int n = (int)m.size();
        if (n == 0) throw std::invalid_argument("Cocycle::alpha: empty m");
        Cocycle c;
        c.name = "alpha";
        c.row_step = [iota0, m, n](HalfInt a) {
            int s = cls_up(a, n);
            return step(a + (std::int64_t)(m[s - 1] - iota0) * n);
        };
        c.col_step = [iota0, m, n](HalfInt a) {
            int s = cls_dn(a, n);
            return step(a + (std::int64_t)(iota0 - m[s - 1]) * n);
        };
        return c;
    }

    // Step functions H1_hat / H2_hat of the beta cocycle, in the reading
    //   H1(l) = 1  iff  n iota < l < 0,  or  l > 0 and l > (iota - ell_cls) n
    //   H2(l) = 1  iff  l > 0 and l > -iota n,  or  (ell_cls - iota) n < l < 0
    // which is exactly H transported through the index shift that relates
    // the shifted and unshifted realizations of the skew subalgebras.
    static Cocycle beta(std::int64_t iota, const std::vector<int>& ell) {
        int n = (int)ell.size();
        if (n == 0) throw std::invalid_argument("Cocycle::beta: empty ell");
        Cocycle c;
        c.name = "beta";
        c.row_step = [iota, ell, n](HalfInt a) {
            if (a.positive()) {
                int s = cls_up(a, n);
                return step(a + (std::int64_t)(ell[s - 1] - iota) * n);
            }
            return step(a - iota * (std::int64_t)n);
        };
        c.col_step = [iota, ell, n](HalfInt a) {
            if (a.positive()) return step(a + iota * (std::int64_t)n);
            int s = cls_dn(a, n);
            return step(a + (std::int64_t)(iota - ell[s - 1]) * n);
        };
        return c;
    }

    // Escape hatch for alternate readings of the printed step functions:
    // swap in any 0/1 tables without touching the bracket code.
    static Cocycle custom(std::function<int(HalfInt)> row, std::function<int(HalfInt)> col) {
        Cocycle c;
        c.name = "custom";
        c.row_step = std::move(row);
        c.col_step = std::move(col);
        return c;
    }

    Rat value(HalfInt l1, HalfInt l2, HalfInt k1, HalfInt k2) const {
        if (l1 + k2 != HalfInt(0) || l2 + k1 != HalfInt(0)) return Rat(0);
        return Rat(row_step(l1) * col_step(l2) - row_step(k1) * col_step(k2));
    }
};

// Centrally extended bracket on infinite matrices with the chosen cocycle.
inline InfMat ibracket(const InfMat& a, const InfMat& b, const Cocycle& co = Cocycle::standard()) {
    InfMat out = imul(a, b) - imul(b, a);
    Rat central = 0;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms())
            central += ca * cb * co.value(ka.l, ka.k, kb.l, kb.k);
    out.kappa0() += central;
    return out;
}

enum class SkewKind { o_d, o_b, sp };

// Linear symmetry conditions cutting out the skew subalgebras:
//   o_d : c(l,k) = -c(k,l)
//   o_b : c(l,k) = -c(k-1,l+1)
//   sp  : c(l,k) = -sign(lk) c(k,l), sign(lk) = +1 for lk < 0, -1 for lk > 0.
inline bool in_skew(const InfMat& a, SkewKind kind) {
    for (auto& [key, c] : a.terms()) {
        Rat partner;
        switch (kind) {
            case SkewKind::o_d: {
                auto it = a.terms().find(InfKey{key.k, key.l});
                partner = it == a.terms().end() ? Rat(0) : it->second;
                if (partner != -c) return false;
                break;
            }
            case SkewKind::o_b: {
                auto it = a.terms().find(InfKey{key.k - 1, key.l + 1});
                partner = it == a.terms().end() ? Rat(0) : it->second;
                if (partner != -c) return false;
                break;
            }
            case SkewKind::sp: {
                auto it = a.terms().find(InfKey{key.k, key.l});
                partner = it == a.terms().end() ? Rat(0) : it->second;
                bool same_sign = (key.l.doubled > 0) == (key.k.doubled > 0);
                if (same_sign) {
                    if (partner != c) return false;
                } else {
                    if (partner != -c) return false;
                }
                break;
            }
        }
    }
    return true;
}

// Weight: a linear function on the toral Cartan subalgebra spanned by the
// E_{l,-l} and kappa0.
struct WeightFn {
    Rat kappa0_val;
    std::map<HalfInt, Rat> diag;  // l -> lambda(E_{l,-l}), finite support

    Rat at(HalfInt l) const {
        auto it = diag.find(l);
        return it == diag.end() ? Rat(0) : it->second;
    }
};

inline std::set<HalfInt> supp(const WeightFn& w) {
    std::set<HalfInt> s;
    for (auto& [l, v] : w.diag)
        if (v != 0) s.insert(l);
    return s;
}

// Evaluate a weight on a Cartan element (entries only at (l,-l), plus kappa0).
inline Rat weight_eval(const WeightFn& w, const InfMat& h) {
    Rat acc = w.kappa0_val * h.kappa0();
    for (auto& [key, c] : h.terms()) {
        if (key.k != -key.l) throw std::invalid_argument("weight_eval: element not in the Cartan subalgebra");
        acc += c * w.at(key.l);
    }
    return acc;
}

// Membership in Gamma^m: kappa0 value -m, natural-number signs on the
// diagonal values, and support inside one of the m+1 length-m intervals
// {3/2 - r, ..., (2m+1)/2 - r}, r = 1..m+1.
inline bool in_gamma(const WeightFn& w, int m) {
    if (m < 1) throw std::invalid_argument("in_gamma: m must be positive");
    if (w.kappa0_val != Rat(-(long)m)) return false;
    for (auto& [l, v] : w.diag) {
        if (v == 0) continue;
        Rat signed_v = l.positive() ? -v : v;
        if (signed_v < 0 || !is_integer(signed_v)) return false;
    }
    auto s = supp(w);
    if (s.empty()) return true;
    for (int r = 1; r <= m + 1; ++r) {
        HalfInt lo = HalfInt::half_odd(1 - r);       // 3/2 - r
        HalfInt hi = HalfInt::half_odd(m - r);       // (2m+1)/2 - r
        if (*s.begin() >= lo && *s.rbegin() <= hi) return true;
    }
    return false;
}

}  // namespace glhat
