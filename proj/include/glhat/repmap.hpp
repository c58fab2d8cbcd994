#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include <json.hpp>

#include "glhat/fock.hpp"
#include "glhat/glinf.hpp"
#include "glhat/matlie.hpp"
#include "glhat/numkernel.hpp"
#include "glhat/report.hpp"
#include "glhat/rhat.hpp"

namespace glhat {

// ---------------------------------------------------------------------------
// Module handles. A space bundles the E_{l,k} action, the kappa0 scalar and
// the support bound that drives all window computations.
// ---------------------------------------------------------------------------

struct FermSpace {
    using Vec = FermVec;
    Vec actE(HalfInt l, HalfInt k, const Vec& v) const { return ferm_act(l, k, v); }
    Rat kappa0() const { return ferm_kappa0(); }
    std::int64_t bound(const Vec& v) const { return max_abs_doubled(v); }
};

struct BoseSpace {
    using Vec = BoseVec;
    Vec actE(HalfInt l, HalfInt k, const Vec& v) const { return bose_act(l, k, v); }
    Rat kappa0() const { return bose_kappa0(); }
    std::int64_t bound(const Vec& v) const { return max_abs_doubled(v); }
};

struct FermTensorSpace {
    int chi = 1;
    using Vec = TensorVec<FermMono>;
    Vec actE(HalfInt l, HalfInt k, const Vec& v) const { return tensor_act(l, k, v); }
    Rat kappa0() const { return Rat((long)chi); }
    std::int64_t bound(const Vec& v) const { return max_abs_doubled(v); }
};

struct BoseTensorSpace {
    int chi = 1;
    using Vec = TensorVec<BoseMono>;
    Vec actE(HalfInt l, HalfInt k, const Vec& v) const { return tensor_act(l, k, v); }
    Rat kappa0() const { return Rat(-(long)chi); }
    std::int64_t bound(const Vec& v) const { return max_abs_doubled(v); }
};

// E_{i,j}(u, v), u = l + 1/2 and v = k - 1/2 half-odd, realized as the
// infinite-matrix index pair (l n + i - 1/2, k n - j + 1/2).
inline std::pair<HalfInt, HalfInt> blocked_index(int n, int i, int j, HalfInt u, HalfInt v) {
    std::int64_t l = (u.doubled - 1) / 2;
    std::int64_t k = (v.doubled + 1) / 2;
    return {HalfInt::half_odd(l * n + i - 1), HalfInt::half_odd(k * n - j)};
}

// ---------------------------------------------------------------------------
// sigma for gl, generic twist:
//   sigma(t^m d^r E_{i,j}) = sum_l <iota - l>_r E_{(m-r-l)n+i-1/2, ln-j+1/2}
//                           + r! d_{i,j} d_{r,m} I_{0,r} kappa0.
// The active window is the creation-creation band l in [m-r+1, 0] plus the
// annihilator-reachable indices bounded by the vector's variable support.
// ---------------------------------------------------------------------------

template <class Space>
typename Space::Vec sigma_gl_generic(const Space& sp, int n, int i, int j, std::int64_t m, int r,
                                     const Rat& iota, const typename Space::Vec& v, std::int64_t pad = 0) {
    typename Space::Vec out;
    std::int64_t K = sp.bound(v) / (2 * n) + 2 + pad;
    std::int64_t lo = std::min<std::int64_t>(m - r - K, -K);
    std::int64_t hi = std::max<std::int64_t>({std::int64_t(0), m - r + 1, K});
    for (std::int64_t l = lo; l <= hi; ++l) {
        Rat coef = falling(iota - Rat((long)l), (unsigned)r);
        if (coef == 0) continue;
        HalfInt row = HalfInt::half_odd((m - r - l) * n + i - 1);
        HalfInt col = HalfInt::half_odd(l * n - j);
        auto piece = sp.actE(row, col, v);
        piece *= coef;
        out += piece;
    }
    if (i == j && (std::int64_t)r == m) {
        auto central = v;
        central *= factorial((unsigned)r) * im_coeff(iota, 0, (unsigned)r) * sp.kappa0();
        out += central;
    }
    return out;
}

// ---------------------------------------------------------------------------
// sigma for gl at integral twist: the reduced mode formula. Four index
// families; the t^m d^r mode cuts one finite diagonal or one
// annihilator-bounded ray out of each.
// ---------------------------------------------------------------------------

template <class Space>
typename Space::Vec sigma_gl_reduced(const Space& sp, const EllConfig& cfg, int i, int j, std::int64_t m,
                                     int r, std::int64_t iota, const typename Space::Vec& v,
                                     std::int64_t pad = 0) {
    if (r < cfg.ell_of(j)) throw std::invalid_argument("sigma_gl_reduced: r below the column offset");
    typename Space::Vec out;
    int n = cfg.n;
    std::int64_t li = cfg.ell_of(i), lj = cfg.ell_of(j);
    std::int64_t K = sp.bound(v) / (2 * n) + std::abs(iota) + std::abs(m) + r + 4 + pad;

    auto emit = [&](std::int64_t lrow, std::int64_t kcol, const Rat& coef) {
        if (coef == 0) return;
        HalfInt row = HalfInt::half_odd(lrow * n + i - 1);
        HalfInt col = HalfInt::half_odd(kcol * n - j);
        auto piece = sp.actE(row, col, v);
        piece *= coef;
        out += piece;
    };

    // family 1: rows l - iota, cols k + iota + 1; l + k = m - li - r - 1
    for (std::int64_t l = 0; l <= m - li - r - 1; ++l) {
        std::int64_t k = m - li - r - 1 - l;
        emit(l - iota, k + iota + 1, falling(Rat(-(long)k - 1), (unsigned)r));
    }
    // family 2: rows l - iota, cols iota - k; l - k = m + lj - li - r
    for (std::int64_t k = std::max<std::int64_t>(0, -(m + lj - li - r)); k <= K; ++k) {
        std::int64_t l = k + m + lj - li - r;
        if (l < 0) continue;
        emit(l - iota, iota - k, falling(Rat((long)(k + lj)), (unsigned)r));
    }
    // family 3: rows -(l + iota + 1), cols iota - k; l + k = r - lj - m - 1
    for (std::int64_t l = 0; l <= r - lj - m - 1; ++l) {
        std::int64_t k = r - lj - m - 1 - l;
        emit(-(l + iota + 1), iota - k, falling(Rat((long)(k + lj)), (unsigned)r));
    }
    // family 4: rows -(l + iota + 1), cols k + iota + 1; l - k = r - m
    for (std::int64_t l = std::max<std::int64_t>(0, (std::int64_t)r - m); l <= K; ++l) {
        std::int64_t k = l - ((std::int64_t)r - m);
        if (k < 0) continue;
        emit(-(l + iota + 1), k + iota + 1, falling(Rat(-(long)k - 1), (unsigned)r));
    }
    if (i == j && (std::int64_t)r == m) {
        auto central = v;
        central *= factorial((unsigned)r) * im_coeff(Rat((long)iota), 0, (unsigned)r) * sp.kappa0();
        out += central;
    }
    return out;
}

// sigma of a full element; kappa acts by the space's kappa0 scalar. With
// `force_generic` the generic series is used even at integral twist.
template <class Space>
typename Space::Vec sigma_elem(const Space& sp, const EllConfig& cfg, const GlHatElem& x, const Rat& iota,
                               const typename Space::Vec& v, bool force_generic = false,
                               std::int64_t pad = 0) {
    typename Space::Vec out;
    bool reduced = is_integer(iota) && !force_generic;
    for (auto& [k, c] : x.terms()) {
        auto piece = reduced ? sigma_gl_reduced(sp, cfg, k.i, k.j, k.m, k.r, to_long(iota), v, pad)
                             : sigma_gl_generic(sp, cfg.n, k.i, k.j, k.m, k.r, iota, v, pad);
        piece *= c;
        out += piece;
    }
    if (x.kappa() != 0) {
        auto central = v;
        central *= x.kappa() * sp.kappa0();
        out += central;
    }
    return out;
}

// ---------------------------------------------------------------------------
// sigma for the skew algebras.
// ---------------------------------------------------------------------------

// Generator datum: t^m d^{r+ell_j} E_{i,j} - (signs) (-d)^r t^m d^{ell_i} E_{j*,i*}.
struct SkewGen {
    int i = 1, j = 1;
    std::int64_t m = 0;
    int r = 0;
};

// Generic twist: the restricted single series
//   sum_l [ <l + lj + iota>_{r+lj} E_{(mm+l)n+i-1/2, (-l-lj)n-j+1/2}
//         - (signs) <l - iota>_r <-mm-l+li+iota-1>_{li} E_{-ln-j+1/2, (mm+l-li)n+i-1/2} ]
//   + [ (r+li)! I_{0,r+li} - (signs) r! li! I_{r,li} ] d_{mm,li} d_{i,j} kappa0
// with mm = m - r.
template <class Space>
typename Space::Vec sigma_skew_generic(const Space& sp, const EllConfig& cfg, const SkewGen& g,
                                       const Rat& iota, const typename Space::Vec& v, std::int64_t pad = 0) {
    typename Space::Vec out;
    int n = cfg.n;
    std::int64_t li = cfg.ell_of(g.i), lj = cfg.ell_of(g.j);
    std::int64_t mm = g.m - g.r;
    Rat sign = (cfg.sign_exponent(g.i, g.j) % 2 == 0) ? Rat(1) : Rat(-1);
    std::int64_t W = sp.bound(v) / (2 * n) + std::abs(mm) + g.r + li + lj + 4 + pad;
    for (std::int64_t l = -W; l <= W; ++l) {
        Rat ca = falling(Rat((long)(l + lj)) + iota, (unsigned)(g.r + lj));
        if (ca != 0) {
            HalfInt row = HalfInt::half_odd((mm + l) * n + g.i - 1);
            HalfInt col = HalfInt::half_odd((-l - lj) * n - g.j);
            auto piece = sp.actE(row, col, v);
            piece *= ca;
            out += piece;
        }
        Rat cb = falling(Rat((long)l) - iota, (unsigned)g.r) *
                 falling(Rat((long)(-mm - l + li - 1)) + iota, (unsigned)li);
        if (cb != 0) {
            HalfInt row = HalfInt::half_odd(-l * n - g.j);
            HalfInt col = HalfInt::half_odd((mm + l - li) * n + g.i - 1);
            auto piece = sp.actE(row, col, v);
            piece *= -sign * cb;
            out += piece;
        }
    }
    if (g.i == g.j && mm == li) {
        Rat central = factorial((unsigned)(g.r + li)) * im_coeff(iota, 0, (unsigned)(g.r + li)) -
                      sign * factorial((unsigned)g.r) * factorial((unsigned)li) *
                          im_coeff(iota, (unsigned)g.r, (unsigned)li);
        auto cv = v;
        cv *= central * sp.kappa0();
        out += cv;
    }
    return out;
}

// Half-integral and integral twist: the paired-symbol series
//   sum_{l1 + l2 = m - r - 2 iota} <-l2 - iota - 1/2>_r [
//       (-1)^eps <l2 + iota - 1/2>_{lj} E_{i,j}(l1, l2 + 2 iota - lj)
//     - (parity) <l1 + iota - 1/2>_{li} E_{j*,i*}(l2, l1 + 2 iota - li) ]
//   + both central corrections at mm = li.
// For integral twist the deleted index classes are skipped, which realizes
// the reduced skew representation on the same space.
template <class Space>
typename Space::Vec sigma_skew_paired(const Space& sp, const EllConfig& cfg, const SkewGen& g,
                                      const Rat& iota, const typename Space::Vec& v, std::int64_t pad = 0) {
    if (!is_integer(iota * 2)) throw std::invalid_argument("sigma_skew_paired: iota must lie in Z/2");
    typename Space::Vec out;
    int n = cfg.n;
    std::int64_t li = cfg.ell_of(g.i), lj = cfg.ell_of(g.j);
    std::int64_t two_iota = to_long(iota * 2);
    bool integral = two_iota % 2 == 0;
    Rat eps_sign = (cfg.eps % 2 == 0) ? Rat(1) : Rat(-1);
    Rat par_sign = Rat(1);
    if (cfg.variant == Variant::sp && (cfg.parity(g.i) + cfg.parity(g.j)) % 2 != 0) par_sign = Rat(-1);

    // l is deleted for column class c at integral twist when
    // l in {-iota + 1/2, ..., -iota + ell_c - 1/2}
    auto deleted = [&](HalfInt l, std::int64_t ell) {
        if (!integral) return false;
        std::int64_t lo = -two_iota + 1;
        return l.doubled >= lo && l.doubled <= lo + 2 * (ell - 1);
    };

    std::int64_t S = g.m - g.r - two_iota;  // l1 + l2 as a plain integer
    std::int64_t W = 2 * (sp.bound(v) / (2 * n) + std::abs(S) + std::abs(two_iota) + g.r + li + lj + 5 + pad);
    for (std::int64_t d1 = -W - 1; d1 <= W + 1; d1 += 2) {
        HalfInt l1(d1);
        HalfInt l2(2 * S - d1);
        if (deleted(l1, li) || deleted(l2, lj)) continue;
        Rat c0 = falling(-to_rat(l2) - iota - rat(1, 2), (unsigned)g.r);
        if (c0 == 0) continue;
        Rat c1 = c0 * eps_sign * falling(to_rat(l2) + iota - rat(1, 2), (unsigned)lj);
        if (c1 != 0) {
            auto [row, col] = blocked_index(n, g.i, g.j, l1, HalfInt(l2.doubled + 2 * two_iota - 2 * lj));
            auto piece = sp.actE(row, col, v);
            piece *= c1;
            out += piece;
        }
        Rat c2 = c0 * par_sign * falling(to_rat(l1) + iota - rat(1, 2), (unsigned)li);
        if (c2 != 0) {
            auto [row, col] = blocked_index(n, cfg.istar(g.j), cfg.istar(g.i), l2,
                                            HalfInt(l1.doubled + 2 * two_iota - 2 * li));
            auto piece = sp.actE(row, col, v);
            piece *= -c2;
            out += piece;
        }
    }
    if (g.i == g.j && g.m - g.r == li) {
        Rat central = factorial((unsigned)(g.r + li)) * im_coeff(iota, 0, (unsigned)(g.r + li)) -
                      eps_sign * factorial((unsigned)g.r) * factorial((unsigned)li) *
                          im_coeff(iota, (unsigned)g.r, (unsigned)li);
        auto cv = v;
        cv *= central * sp.kappa0();
        out += cv;
    }
    return out;
}

template <class Space>
typename Space::Vec sigma_skew(const Space& sp, const EllConfig& cfg, const SkewGen& g, const Rat& iota,
                               const typename Space::Vec& v, std::int64_t pad = 0) {
    if (is_integer(iota * 2)) return sigma_skew_paired(sp, cfg, g, iota, v, pad);
    return sigma_skew_generic(sp, cfg, g, iota, v, pad);
}

// sigma of a skew-subalgebra element through the spanning generators: for x
// with skew_image(x) = -x one has x = 1/2 sum over monomials of the matching
// generators, and the series is linear over that decomposition.
template <class Space>
typename Space::Vec sigma_skew_elem(const Space& sp, const EllConfig& cfg, const GlHatElem& x,
                                    const Rat& iota, const typename Space::Vec& v, std::int64_t pad = 0) {
    typename Space::Vec out;
    for (auto& [k, c] : x.terms()) {
        if (k.r < cfg.ell_of(k.j)) throw std::invalid_argument("sigma_skew_elem: not in the subalgebra");
        SkewGen g{k.i, k.j, k.m, k.r - cfg.ell_of(k.j)};
        auto piece = sigma_skew(sp, cfg, g, iota, v, pad);
        piece *= c / 2;
        out += piece;
    }
    if (x.kappa() != 0) {
        auto central = v;
        central *= x.kappa() * sp.kappa0();
        out += central;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Homomorphism checks
// ---------------------------------------------------------------------------

template <class Space>
Report check_hom(const Space& sp, const EllConfig& cfg, const Rat& iota, const GlHatElem& x,
                 const GlHatElem& y, const std::vector<typename Space::Vec>& probes,
                 bool skew = false) {
    Report rep;
    rep.check = skew ? "hom-skew" : "hom";
    auto sigma = [&](const GlHatElem& e, const typename Space::Vec& v) {
        return skew ? sigma_skew_elem(sp, cfg, e, iota, v) : sigma_elem(sp, cfg, e, iota, v);
    };
    GlHatElem br = ghbracket(x, y);
    long pi = 0;
    for (auto& v : probes) {
        typename Space::Vec lhs = sigma(br, v);
        typename Space::Vec rhs = sigma(x, sigma(y, v)) - sigma(y, sigma(x, v));
        rep.count();
        if (!(lhs == rhs)) rep.fail({{"probe", pi}});
        ++pi;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Field modes on Fock modules for conformal-algebra elements, per the
// twisted realization
//   Y(a[r1,r2], z) = sum_{u,v} C(-u-iota-1/2, r1) C(-v+iota-1/2, r2) a(u,v)
//                      z^{-u-v-r1-r2-1} + I_{r1,r2} tr(a) kappa0 z^{-r1-r2-1},
// with the unit mapped to kappa0 (the z^0 coefficient).
// ---------------------------------------------------------------------------

template <class Space>
typename Space::Vec rh_fock_mode(const Space& sp, int n, const RHatElem& u, const Rat& iota,
                                 std::int64_t mode, const typename Space::Vec& v, std::int64_t pad = 0) {
    typename Space::Vec out;
    for (auto& [k, c] : u.terms()) {
        std::int64_t D = mode - k.m1 - k.m2;  // uu + vv as a plain integer
        std::int64_t W = 2 * (sp.bound(v) / (2 * n) + std::abs(D) + 5 + pad);
        for (std::int64_t d1 = -W - 1; d1 <= W + 1; d1 += 2) {
            HalfInt uu(d1);
            HalfInt vv(2 * D - d1);
            Rat coef = c * gbinom(-to_rat(uu) - iota - rat(1, 2), (unsigned)k.m1) *
                       gbinom(-to_rat(vv) + iota - rat(1, 2), (unsigned)k.m2);
            if (coef == 0) continue;
            auto [row, col] = blocked_index(n, k.i, k.j, uu, vv);
            auto piece = sp.actE(row, col, v);
            piece *= coef;
            out += piece;
        }
        if (k.i == k.j && mode == k.m1 + k.m2) {
            auto central = v;
            central *= c * im_coeff(iota, (unsigned)k.m1, (unsigned)k.m2) * sp.kappa0();
            out += central;
        }
    }
    if (u.unit() != 0 && mode == -1) {
        auto central = v;
        central *= u.unit() * sp.kappa0();
        out += central;
    }
    return out;
}

// Commutator formula in mode form: [u_(a), v_(b)] = sum_j C(a, j) (w_j)_(a+b-j)
// where Y^+(u, z0) v = sum_j w_j z0^{-j-1}. This is the single place that
// expands the delta-function kernel, with binomials in nonnegative powers of
// the second variable.
inline std::vector<std::pair<Rat, std::pair<RHatElem, std::int64_t>>> borcherds_rhs(const RHatElem& u,
                                                                                    const RHatElem& v,
                                                                                    std::int64_t a,
                                                                                    std::int64_t b) {
    std::vector<std::pair<Rat, std::pair<RHatElem, std::int64_t>>> out;
    for (auto& [p, w] : yplus(u, v)) {
        std::int64_t j = -(std::int64_t)p - 1;
        Rat coef = gbinom(Rat((long)a), (unsigned)j);
        if (coef == 0) continue;
        out.push_back({coef, {w, a + b - j}});
    }
    return out;
}

// Mode-by-mode check of the residue identity for the twisted module map: for
// each (a, b) in the window, compare [u_(a), v_(b)] probe against the
// delta-expanded right-hand side.
template <class Space>
Report theorem22_modes(const Space& sp, int n, const RHatElem& u, const RHatElem& v, const Rat& iota,
                       const std::vector<std::pair<std::int64_t, std::int64_t>>& window,
                       const typename Space::Vec& probe) {
    Report rep;
    rep.check = "bracket-modes";
    for (auto& [a, b] : window) {
        typename Space::Vec lhs = rh_fock_mode(sp, n, u, iota, a, rh_fock_mode(sp, n, v, iota, b, probe)) -
                                  rh_fock_mode(sp, n, v, iota, b, rh_fock_mode(sp, n, u, iota, a, probe));
        typename Space::Vec rhs;
        for (auto& [coef, wj] : borcherds_rhs(u, v, a, b)) {
            auto piece = rh_fock_mode(sp, n, wj.first, iota, wj.second, probe);
            piece *= coef;
            rhs += piece;
        }
        rep.count();
        if (!(lhs == rhs)) rep.fail({{"a", a}, {"b", b}});
    }
    return rep;
}

}  // namespace glhat
