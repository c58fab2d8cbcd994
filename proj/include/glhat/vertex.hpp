#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "glhat/repmap.hpp"
#include "glhat/vacuum.hpp"

namespace glhat {

// ---------------------------------------------------------------------------
// Fields over the vacuum module. The field of a negative generator is
//   Y(t^{-m-1} d^r E_{i,j}, z) = (1/m!) (d/dz)^m E_{i,j}(r, z),
// whose z^{-c-1} coefficient is C(m-c-1, m) t^{c-m} d^r E_{i,j}. The +/-
// split keeps annihilators (nonnegative t-powers) in the + part.
// ---------------------------------------------------------------------------

enum class FieldPart { minus, plus, both };

// Mode c of the generating field of a pattern entry (with t-power m0 < 0,
// writing m = -m0 - 1):
//   Y(t^{-m-1} d^{roff+ell_j} E, z) = (1/m!) (d/dz)^m E(roff, z),
// whose z^{-c-1} coefficient is C(m-c-1, m) times the same pattern at
// t-power c - m. The split keeps annihilators (t-power >= 0) in the + part,
// per generator block.
inline GlHatElem gen_field_mode(const EllConfig& cfg, const std::vector<FieldGenTerm>& pattern,
                                std::int64_t c, FieldPart part) {
    GlHatElem out(cfg.n);
    for (auto& t : pattern) {
        if (t.m >= 0) throw std::invalid_argument("gen_field_mode: pattern not in the negative part");
        std::int64_t m = -t.m - 1;
        std::int64_t tpow = c - m;
        if (part == FieldPart::minus && tpow >= 0) continue;
        if (part == FieldPart::plus && tpow < 0) continue;
        Rat coef = gbinom(Rat((long)(m - c - 1)), (unsigned)m);
        if (coef == 0) continue;
        out += pattern_elem(cfg, t, tpow - t.m) * coef;
    }
    return out;
}

// Bound data of a pattern, used for mode windows.
inline std::int64_t field_mshift(const std::vector<FieldGenTerm>& pattern) {
    std::int64_t m = 0;
    for (auto& t : pattern) m = std::max(m, -t.m - 1);
    return m;
}
inline std::int64_t field_rmax(const EllConfig& cfg, const std::vector<FieldGenTerm>& pattern) {
    std::int64_t r = 0;
    int lmax = *std::max_element(cfg.ell.begin(), cfg.ell.end());
    for (auto& t : pattern) r = std::max<std::int64_t>(r, t.roff + lmax);
    return r;
}
inline std::int64_t field_degmax(const EllConfig& cfg, const std::vector<FieldGenTerm>& pattern) {
    std::int64_t d = 0;
    for (auto& t : pattern) d = std::max<std::int64_t>(d, t.roff - t.m);
    return d;
}

// ---------------------------------------------------------------------------
// The structure map, built by the normal-ordered inductive rule
//   Y(u v, z) = Y^-(u, z) Y(v, z) + Y(v, z) Y^+(u, z).
// Modes are evaluated lazily against a probe; the truncation bound below
// certifies that all higher modes annihilate it.
// ---------------------------------------------------------------------------

class VertexEngine {
  public:
    explicit VertexEngine(const VacuumModule& mod) : mod_(&mod) {}

    // Upper bound B such that Y(mono, z)_c kills every vector of degree <= D
    // for c > B.
    std::int64_t mode_bound(const std::vector<PBWGen>& mono, size_t from, std::int64_t D) const {
        if (from == mono.size()) return -1;
        const auto& pat = mod_->pattern_of(mono[from]);
        const EllConfig& cfg = mod_->cfg();
        std::int64_t m = field_mshift(pat), r = field_rmax(cfg, pat), du = field_degmax(cfg, pat);
        std::int64_t inner = mode_bound(mono, from + 1, D + du + r);
        return std::max(m + inner, m + r + D + inner + 1);
    }

    // Mode c of Y(mono, z) applied to p.
    VacVector y_mode(const std::vector<PBWGen>& mono, size_t from, std::int64_t c,
                     const VacVector& p) const {
        VacVector out;
        if (from == mono.size()) {
            if (c == -1) out = p;
            return out;
        }
        const auto& pat = mod_->pattern_of(mono[from]);
        const EllConfig& cfg = mod_->cfg();
        std::int64_t m = field_mshift(pat);
        std::int64_t pd = vec_degree(p);
        std::int64_t inner_bound = mode_bound(mono, from + 1, pd);
        // creation part of u after the inner modes
        for (std::int64_t d = c - 1 - inner_bound; d <= m - 1; ++d) {
            GlHatElem op = gen_field_mode(cfg, pat, d, FieldPart::minus);
            if (op.is_zero()) continue;
            VacVector inner = y_mode(mono, from + 1, c - 1 - d, p);
            if (inner.is_zero()) continue;
            out += mod_->act(op, inner);
        }
        // annihilation part of u against the probe first
        std::int64_t emax = m + field_rmax(cfg, pat) + pd;
        for (std::int64_t e = m; e <= emax; ++e) {
            GlHatElem op = gen_field_mode(cfg, pat, e, FieldPart::plus);
            if (op.is_zero()) continue;
            VacVector hit = mod_->act(op, p);
            if (hit.is_zero()) continue;
            out += y_mode(mono, from + 1, c - 1 - e, hit);
        }
        return out;
    }

    VacVector y_mode(const VacVector& v, std::int64_t c, const VacVector& p) const {
        VacVector out;
        for (auto& [mono, coef] : v.terms) {
            VacVector piece = y_mode(mono.gens, 0, c, p);
            piece *= coef;
            out += piece;
        }
        return out;
    }

    std::int64_t mode_bound(const VacVector& v, const VacVector& p) const {
        std::int64_t b = -1;
        std::int64_t pd = vec_degree(p);
        for (auto& [mono, coef] : v.terms) b = std::max(b, mode_bound(mono.gens, 0, pd));
        return b;
    }

    static std::int64_t vec_degree(const VacVector& p) {
        std::int64_t d = 0;
        for (auto& [mono, c] : p.terms) d = std::max(d, degree(mono));
        return d;
    }

    // Derivation on the vacuum module induced by t^m d^r E -> -m t^{m-1} d^r E.
    VacVector translate(const VacVector& v) const {
        VacVector out;
        for (auto& [mono, c] : v.terms) {
            for (size_t t = 0; t < mono.gens.size(); ++t) {
                GlHatElem del(mod_->cfg().n);
                for (auto& [k, cf] : mod_->elem_of(mono.gens[t]).terms())
                    del.add(k.i, k.j, k.m - 1, k.r, cf * Rat(-(long)k.m));
                // rebuild the monomial with factor t replaced by del
                VacVector cur = VacVector::vacuum();
                for (size_t s = mono.gens.size(); s-- > t + 1;)
                    cur = mod_->act(mod_->elem_of(mono.gens[s]), cur);
                cur = mod_->act(del, cur);
                for (size_t s = t; s-- > 0;) cur = mod_->act(mod_->elem_of(mono.gens[s]), cur);
                cur *= c;
                out += cur;
            }
        }
        return out;
    }

    const VacuumModule& mod() const { return *mod_; }

  private:
    const VacuumModule* mod_;
};

// ---------------------------------------------------------------------------
// Locality: least positive m with (z1-z2)^m [Y(u,z1), Y(v,z2)] = 0 on the
// probe over the mode window, or nullopt if m_max is exhausted.
// ---------------------------------------------------------------------------

struct LocalityResult {
    std::optional<int> order;
    Report report;
};

inline LocalityResult locality(const VertexEngine& eng, const VacVector& u, const VacVector& v,
                               const VacVector& probe,
                               const std::vector<std::pair<std::int64_t, std::int64_t>>& window,
                               int m_max) {
    LocalityResult res;
    res.report.check = "locality";
    for (int m = 1; m <= m_max; ++m) {
        bool ok = true;
        for (auto& [a, b] : window) {
            VacVector acc;
            for (int s = 0; s <= m; ++s) {
                Rat coef = gbinom((long)m, (unsigned)s);
                if (s % 2) coef = -coef;
                std::int64_t am = a + m - s, bm = b + s;
                VacVector term = eng.y_mode(u, am, eng.y_mode(v, bm, probe)) -
                                 eng.y_mode(v, bm, eng.y_mode(u, am, probe));
                term *= coef;
                acc += term;
            }
            res.report.count();
            if (!acc.is_zero()) {
                ok = false;
                break;
            }
        }
        if (ok) {
            res.order = m;
            return res;
        }
    }
    res.report.fail({{"m_max", m_max}});
    return res;
}

// Translation axiom [del, Y(v,z)] = d/dz Y(v,z), in modes:
// del(Y_c p) - Y_c(del p) = -c Y_{c-1} p.
inline Report check_translation_commutator(const VertexEngine& eng, const VacVector& v,
                                           const std::vector<VacVector>& probes,
                                           std::int64_t cmin, std::int64_t cmax) {
    Report rep;
    rep.check = "translation-commutator";
    for (auto& p : probes)
        for (std::int64_t c = cmin; c <= cmax; ++c) {
            VacVector lhs = eng.translate(eng.y_mode(v, c, p)) - eng.y_mode(v, c, eng.translate(p));
            VacVector rhs = eng.y_mode(v, c - 1, p) * Rat(-(long)c);
            rep.count();
            if (!(lhs == rhs)) rep.fail({{"mode", c}});
        }
    return rep;
}

// Creation axiom Y(v,z)|0> = e^{z del} v, coefficient-matched to order z^kmax.
inline Report check_creation(const VertexEngine& eng, const VacVector& v, int kmax) {
    Report rep;
    rep.check = "creation";
    VacVector vac = VacVector::vacuum();
    VacVector dk = v;
    for (int k = 0; k <= kmax; ++k) {
        VacVector lhs = eng.y_mode(v, -k - 1, vac);
        VacVector rhs = dk * (Rat(1) / factorial((unsigned)k));
        rep.count();
        if (!(lhs == rhs)) rep.fail({{"power", k}});
        dk = eng.translate(dk);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Virasoro candidate and mode check
// ---------------------------------------------------------------------------

inline VacVector virasoro_vector(VacuumModule& mod) {
    const EllConfig& cfg = mod.cfg();
    GlHatElem u(cfg.n);
    if (cfg.variant == Variant::gl) {
        for (int i = 1; i <= cfg.n; ++i)
            if (cfg.ell_of(i) > 1)
                throw std::invalid_argument("virasoro_vector: needs ell_i in {0,1}");
        for (int i = 1; i <= cfg.n; ++i) u.add(i, i, -1, 1, Rat(-1));
    } else {
        for (int i = 1; i <= cfg.n; ++i)
            if (cfg.ell_of(i) != cfg.eps)
                throw std::invalid_argument("virasoro_vector: needs ell = (eps,...,eps)");
        Rat sgn = cfg.eps % 2 == 0 ? Rat(1) : Rat(-1);
        for (int i = 1; i <= (cfg.n + 1) / 2; ++i) {
            u.add(i, i, -1, 1, Rat(-1));
            if (cfg.eps == 1) {
                u.add(cfg.istar(i), cfg.istar(i), -1, 1, sgn);
            } else {
                // (-d) t^{-1} = -(t^{-1} d - t^{-2})
                u.add(cfg.istar(i), cfg.istar(i), -1, 1, -sgn);
                u.add(cfg.istar(i), cfg.istar(i), -2, 0, sgn);
            }
        }
    }
    return mod.act(u, VacVector::vacuum());
}

struct VirasoroResult {
    Report report;
    std::optional<Rat> central;  // the scalar c solved from the window
};

// With L_a the modes of Y(omega, z) (conformal-weight-two indexing),
// verify [L_a, L_b] = (a-b) L_{a+b} + d_{a+b,0} c (a^3-a)/12 on the probes,
// solving for the single scalar c and checking consistency.
inline VirasoroResult virasoro_check(const VertexEngine& eng, const VacVector& omega,
                                     const std::vector<VacVector>& probes, int amax) {
    VirasoroResult res;
    res.report.check = "virasoro";
    auto Lmode = [&](std::int64_t a, const VacVector& p) { return eng.y_mode(omega, a + 1, p); };
    for (int a = -amax; a <= amax; ++a)
        for (int b = -amax; b <= amax; ++b)
            for (auto& p : probes) {
                VacVector lhs = Lmode(a, Lmode(b, p)) - Lmode(b, Lmode(a, p));
                VacVector rhs = Lmode(a + b, p) * Rat((long)(a - b));
                VacVector diff = lhs - rhs;
                res.report.count();
                if (a + b == 0 && a != 0) {
                    // diff must be (c/12)(a^3 - a) p
                    Rat factor = Rat((long)a * a * a - a) / 12;
                    if (factor == 0) continue;
                    if (diff.is_zero()) {
                        if (res.central && *res.central != 0) res.report.fail({{"a", a}, {"b", b}});
                        if (!res.central) res.central = Rat(0);
                        continue;
                    }
                    // solve c from the first component and check the rest
                    auto head = p.terms.begin();
                    auto it = diff.terms.find(head->first);
                    if (it == diff.terms.end()) {
                        res.report.fail({{"a", a}, {"b", b}});
                        continue;
                    }
                    Rat c = it->second / (head->second * factor);
                    if (!(diff == p * (c * factor)) || (res.central && *res.central != c))
                        res.report.fail({{"a", a}, {"b", b}});
                    else if (!res.central)
                        res.central = c;
                } else {
                    if (!diff.is_zero()) res.report.fail({{"a", a}, {"b", b}});
                }
            }
    if (res.central) res.report.notes.push_back("central scalar c = " + rat_str(*res.central));
    return res;
}

// ---------------------------------------------------------------------------
// The algebra-valued field of the conformal-algebra realization
//   Y(a[m1,m2], z) = (1/(m1! m2!)) sum_i a x nf((-d)^{m1} t^i d^{m2}) z^{-i-1},
// acting on the vacuum module, and the residue identity against it.
// ---------------------------------------------------------------------------

inline GlHatElem rh_vac_mode(const RHatElem& u, std::int64_t mode, const Rat& chi_unused = Rat(0)) {
    (void)chi_unused;
    GlHatElem out(u.n());
    for (auto& [k, c] : u.terms()) {
        // adjoint(d^{m1}) is the normal form of (-d)^{m1}
        DiffOp d = dmul(adjoint(DiffOp::mono(0, k.m1)), DiffOp::mono(mode, k.m2));
        out.add_entry(k.i, k.j, d, c / (factorial((unsigned)k.m1) * factorial((unsigned)k.m2)));
    }
    if (u.unit() != 0 && mode == -1) out.kappa() += u.unit();
    return out;
}

// Mode-by-mode check of the residue identity for the vacuum module: for each
// (a, b) in the window compare [Y(u)_a, Y(v)_b] p with the delta-expanded
// right-hand side sum_j C(a,j) Y(Y^+(u)_j v)_{a+b-j} p.
inline Report bracket_equiv_vac(const VacuumModule& mod, const RHatElem& u, const RHatElem& v,
                                const std::vector<std::pair<std::int64_t, std::int64_t>>& window,
                                const std::vector<VacVector>& probes) {
    Report rep;
    rep.check = "bracket-equiv-vac";
    for (auto& [a, b] : window) {
        GlHatElem ua = rh_vac_mode(u, a);
        GlHatElem vb = rh_vac_mode(v, b);
        auto rhs_terms = borcherds_rhs(u, v, a, b);
        for (auto& p : probes) {
            VacVector lhs = mod.act(ua, mod.act(vb, p)) - mod.act(vb, mod.act(ua, p));
            VacVector rhs;
            for (auto& [coef, wj] : rhs_terms) {
                VacVector piece = mod.act(rh_vac_mode(wj.first, wj.second), p);
                piece *= coef;
                rhs += piece;
            }
            rep.count();
            if (!(lhs == rhs)) rep.fail({{"a", a}, {"b", b}});
        }
    }
    return rep;
}

// The direct check that both routes compute the same algebra element:
// [Y(u)_a, Y(v)_b] = sum_j C(a,j) Y(Y^+(u)_j v)_{a+b-j} inside the Lie
// algebra itself (kappa included).
inline Report bracket_equiv_elem(int n, const RHatElem& u, const RHatElem& v,
                                 const std::vector<std::pair<std::int64_t, std::int64_t>>& window) {
    Report rep;
    rep.check = "bracket-equiv-elem";
    for (auto& [a, b] : window) {
        GlHatElem lhs = ghbracket(rh_vac_mode(u, a), rh_vac_mode(v, b));
        GlHatElem rhs(n);
        for (auto& [coef, wj] : borcherds_rhs(u, v, a, b)) rhs += rh_vac_mode(wj.first, wj.second) * coef;
        rep.count();
        if (!(lhs == rhs)) rep.fail({{"a", a}, {"b", b}});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Twisted fields on the Fock spaces and the quadratic free-field identity.
// The sigma series already computes the modes of E^iota_{i,j}(r, z); here the
// same modes are rebuilt from raw free-field tables and compared.
// ---------------------------------------------------------------------------

// One linear free-field factor: a list of (z-power, variable index) entries
// within a window of the generating series.
struct FreeFieldEntry {
    Rat zpow;      // exponent of z (integral up to the fixed offset iota)
    HalfInt var;   // variable index
};

// theta / x lower factor of the pair: variable theta_{ln-j+1/2} at z^{iota-l}
// for generic twist, or the two reduced branches at integral twist.
inline std::vector<FreeFieldEntry> free_field_lower(const EllConfig& cfg, int j, const Rat& iota,
                                                    std::int64_t lmax) {
    std::vector<FreeFieldEntry> out;
    if (!is_integer(iota)) {
        for (std::int64_t l = -lmax; l <= lmax; ++l)
            out.push_back({iota - Rat((long)l), HalfInt::half_odd(l * cfg.n - j)});
        return out;
    }
    std::int64_t io = to_long(iota);
    for (std::int64_t l = 0; l <= lmax; ++l) {
        out.push_back({Rat((long)(cfg.ell_of(j) + l)), HalfInt::half_odd((io - l) * cfg.n - j)});
        out.push_back({Rat(-(long)l - 1), HalfInt::half_odd((l + io + 1) * cfg.n - j)});
    }
    return out;
}

// thetabar / xbar upper factor: variable tbar_{ln+i-1/2} at z^{-iota-l-1} for
// generic twist, or the two reduced branches at integral twist.
inline std::vector<FreeFieldEntry> free_field_upper(const EllConfig& cfg, int i, const Rat& iota,
                                                    std::int64_t lmax) {
    std::vector<FreeFieldEntry> out;
    if (!is_integer(iota)) {
        for (std::int64_t l = -lmax; l <= lmax; ++l)
            out.push_back({-iota - Rat((long)l) - 1, HalfInt::half_odd(l * cfg.n + i - 1)});
        return out;
    }
    std::int64_t io = to_long(iota);
    for (std::int64_t l = 0; l <= lmax; ++l) {
        out.push_back({Rat(-(long)(cfg.ell_of(i) + l) - 1), HalfInt::half_odd((l - io) * cfg.n + i - 1)});
        out.push_back({Rat((long)l), HalfInt::half_odd(-(l + io + 1) * cfg.n + i - 1)});
    }
    return out;
}

// The normally ordered quadratic combination: mode c of
// :upper(i, z) (d/dz)^r lower(j, z): plus the central correction, applied to
// v, built from the raw variable operators.
template <class Space>
typename Space::Vec quad_free_mode(const Space& sp, const EllConfig& cfg, int i, int j, int r,
                                   const Rat& iota, std::int64_t c, const typename Space::Vec& v,
                                   std::int64_t pad = 0) {
    typename Space::Vec out;
    std::int64_t lmax = sp.bound(v) / 2 + std::abs(c) + r + cfg.ell_of(i) + cfg.ell_of(j) +
                        (is_integer(iota) ? std::abs(to_long(iota)) : 0) + 6 + pad;
    auto uppers = free_field_upper(cfg, i, iota, lmax);
    auto lowers = free_field_lower(cfg, j, iota, lmax);
    for (auto& up : uppers)
        for (auto& lo : lowers) {
            Rat zsum = up.zpow + lo.zpow - r;
            if (zsum != Rat(-(long)c - 1)) continue;
            Rat coef = falling(lo.zpow, (unsigned)r);
            if (coef == 0) continue;
            auto piece = sp.actE(up.var, lo.var, v);
            piece *= coef;
            out += piece;
        }
    if (i == j && c == r) {
        auto central = v;
        central *= factorial((unsigned)r) * im_coeff(iota, 0, (unsigned)r) * sp.kappa0();
        out += central;
    }
    return out;
}

// Quadratic identity: the sigma-side modes of E^iota_{i,j}(r, z) equal the
// normally ordered free-field combination, mode by mode over the window.
template <class Space>
Report quad_identity_check(const Space& sp, const EllConfig& cfg, int i, int j, int r, const Rat& iota,
                           std::int64_t cmax, const std::vector<typename Space::Vec>& probes) {
    Report rep;
    rep.check = "quad-identity";
    for (std::int64_t c = -cmax; c <= cmax; ++c)
        for (auto& v : probes) {
            typename Space::Vec lhs =
                is_integer(iota) ? sigma_gl_reduced(sp, cfg, i, j, c, r, to_long(iota), v)
                                 : sigma_gl_generic(sp, cfg.n, i, j, c, r, iota, v);
            typename Space::Vec rhs = quad_free_mode(sp, cfg, i, j, r, iota, c, v);
            rep.count();
            if (!(lhs == rhs)) rep.fail({{"mode", c}});
        }
    return rep;
}

}  // namespace glhat
