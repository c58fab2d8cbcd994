#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "glhat/numkernel.hpp"
#include "glhat/rational.hpp"

namespace glhat {

// One normal-ordered monomial t^m d^r (t-power left of the derivative).
struct DMono {
    std::int64_t m = 0;
    int r = 0;
    auto operator<=>(const DMono&) const = default;
};

// Laurent polynomial in t, as finite support map m -> coefficient.
using LaurentPoly = std::map<std::int64_t, Rat>;

inline void lp_add(LaurentPoly& p, std::int64_t m, const Rat& c) {
    if (c == 0) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

// An element of the associative algebra of differential operators on the
// circle, kept in normal form: a finite sum of t^m d^r monomials with no
// zero coefficients stored.
class DiffOp {
  public:
    DiffOp() = default;

    static DiffOp mono(std::int64_t m, int r, const Rat& c = Rat(1)) {
        DiffOp d;
        d.add(m, r, c);
        return d;
    }
    static DiffOp unit() { return mono(0, 0); }

    void add(std::int64_t m, int r, const Rat& c) {
        if (c == 0) return;
        DMono key{m, r};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<DMono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    DiffOp& operator+=(const DiffOp& o) {
        for (auto& [k, c] : o.terms_) add(k.m, k.r, c);
        return *this;
    }
    DiffOp& operator-=(const DiffOp& o) {
        for (auto& [k, c] : o.terms_) add(k.m, k.r, -c);
        return *this;
    }
    DiffOp& operator*=(const Rat& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend DiffOp operator*(DiffOp a, const Rat& s) { return a *= s; }
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

  private:
    std::map<DMono, Rat> terms_;
};

// Normal-ordered product. On monomials
//   t^{m1} d^{r1} . t^{m2} d^{r2} = sum_s C(r1,s) <m2>_s t^{m1+m2-s} d^{r1+r2-s},
// extended bilinearly; this expansion is the single source of truth for
// the ordering convention.
inline DiffOp dmul(const DiffOp& a, const DiffOp& b) {
    DiffOp out;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            Rat c0 = ca * cb;
            for (int s = 0; s <= ka.r; ++s) {
                Rat coef = c0 * gbinom((long)ka.r, (unsigned)s) * falling(Rat((long)kb.m), (unsigned)s);
                out.add(ka.m + kb.m - s, ka.r + kb.r - s, coef);
            }
        }
    return out;
}

// Formal adjoint: t^m d^r -> normal form of (-d)^r t^m. An involutive
// anti-automorphism of the algebra.
inline DiffOp adjoint(const DiffOp& a) {
    DiffOp out;
    for (auto& [k, c] : a.terms()) {
        // (-d)^r t^m = (-1)^r sum_s C(r,s) <m>_s t^{m-s} d^{r-s}
        Rat sign = (k.r % 2 == 0) ? Rat(1) : Rat(-1);
        for (int s = 0; s <= k.r; ++s) {
            Rat coef = c * sign * gbinom((long)k.r, (unsigned)s) * falling(Rat((long)k.m), (unsigned)s);
            out.add(k.m - s, k.r - s, coef);
        }
    }
    return out;
}

// Action on Laurent polynomials; the independent oracle for dmul.
inline LaurentPoly apply_op(const DiffOp& a, const LaurentPoly& p) {
    LaurentPoly out;
    for (auto& [k, c] : a.terms())
        for (auto& [m, pc] : p) {
            // t^{mk} d^{rk} (t^m) = <m>_{rk} t^{m - rk + mk}
            lp_add(out, m - k.r + k.m, c * pc * falling(Rat((long)m), (unsigned)k.r));
        }
    return out;
}

// Membership in the left ideal A d^ell.
inline bool in_left_ideal(const DiffOp& a, int ell) {
    for (auto& [k, c] : a.terms())
        if (k.r < ell) return false;
    return true;
}

inline bool in_plus(const DiffOp& a) {
    for (auto& [k, c] : a.terms())
        if (k.m < 0) return false;
    return true;
}

inline bool in_minus(const DiffOp& a) {
    for (auto& [k, c] : a.terms())
        if (k.m >= 0) return false;
    return true;
}

}  // namespace glhat
