#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "glhat/matlie.hpp"
#include "glhat/qseries.hpp"
#include "glhat/report.hpp"

namespace glhat {

// ---------------------------------------------------------------------------
// Canonical bases of the degree slices of the negative part. For gl the
// slice of degree d is the monomial family t^{r-k} d^{r+ell_j} E_{i,j} with
// k = d - ell_j, already independent. For o/sp the slice is spanned by the
// skew generators with t-power r - d, and a deterministic exact row
// reduction (first-nonzero pivoting over the monomial coordinates) produces
// the canonical basis.
// ---------------------------------------------------------------------------

// One entry of a generating-series pattern: for gl the plain monomial
// t^m d^{roff+ell_j} E_{i,j}, for o/sp the skew spanning generator with
// t-power m and derivative offset roff. Fields over the vacuum module are
// defined per pattern entry, since the whole generator series shifts its
// t-power as one block.
struct FieldGenTerm {
    int i = 1, j = 1;
    std::int64_t m = 0;
    int roff = 0;
    Rat coef;
};

inline GlHatElem pattern_elem(const EllConfig& cfg, const FieldGenTerm& t, std::int64_t mshift = 0) {
    GlHatElem out(cfg.n);
    if (cfg.variant == Variant::gl) {
        out.add(t.i, t.j, t.m + mshift, t.roff + cfg.ell_of(t.j), t.coef);
    } else {
        out += gen_skew(t.i, t.j, t.m + mshift, t.roff, cfg) * t.coef;
    }
    return out;
}

struct GenSlice {
    std::vector<GlHatElem> basis;  // reduced row echelon over GlKey coordinates
    std::vector<GlKey> pivots;
    std::vector<std::vector<FieldGenTerm>> patterns;  // basis in the spanning family
};

namespace detail {

inline std::optional<GlKey> leading_key(const GlHatElem& x) {
    if (x.terms().empty()) return std::nullopt;
    return x.terms().begin()->first;
}

inline Rat coeff_of(const GlHatElem& x, const GlKey& k) {
    auto it = x.terms().find(k);
    return it == x.terms().end() ? Rat(0) : it->second;
}

inline void pattern_axpy(std::vector<FieldGenTerm>& dst, const std::vector<FieldGenTerm>& src,
                         const Rat& c) {
    if (c == 0) return;
    for (auto& t : src) {
        bool merged = false;
        for (auto& d : dst)
            if (d.i == t.i && d.j == t.j && d.m == t.m && d.roff == t.roff) {
                d.coef += t.coef * c;
                merged = true;
                break;
            }
        if (!merged) {
            dst.push_back(t);
            dst.back().coef *= c;
        }
    }
    std::erase_if(dst, [](const FieldGenTerm& t) { return t.coef == 0; });
}

// Insert a vector into an echelon family, reducing fully (RREF) and carrying
// the expression in the spanning family along.
inline void echelon_insert(GenSlice& s, GlHatElem v, std::vector<FieldGenTerm> pat) {
    for (size_t t = 0; t < s.basis.size(); ++t) {
        Rat c = coeff_of(v, s.pivots[t]);
        if (c != 0) {
            v -= s.basis[t] * c;
            pattern_axpy(pat, s.patterns[t], -c);
        }
    }
    auto lead = leading_key(v);
    if (!lead) return;
    Rat inv = Rat(1) / coeff_of(v, *lead);
    v *= inv;
    for (auto& t : pat) t.coef *= inv;
    for (size_t t = 0; t < s.basis.size(); ++t) {
        Rat c = coeff_of(s.basis[t], *lead);
        if (c != 0) {
            s.basis[t] -= v * c;
            pattern_axpy(s.patterns[t], pat, -c);
        }
    }
    s.basis.push_back(std::move(v));
    s.pivots.push_back(*lead);
    s.patterns.push_back(std::move(pat));
}

}  // namespace detail

// Spanning family of the degree-d slice of the negative part (d >= 1).
inline std::vector<FieldGenTerm> neg_slice_spanning_terms(const EllConfig& cfg, std::int64_t d) {
    std::vector<FieldGenTerm> out;
    for (int i = 1; i <= cfg.n; ++i)
        for (int j = 1; j <= cfg.n; ++j) {
            std::int64_t k = cfg.variant == Variant::gl ? d - cfg.ell_of(j) : d;
            for (std::int64_t r = 0; r < k; ++r)
                out.push_back(FieldGenTerm{i, j, r - k, (int)r, Rat(1)});
        }
    return out;
}

inline std::vector<GlHatElem> neg_slice_spanning(const EllConfig& cfg, std::int64_t d) {
    std::vector<GlHatElem> out;
    for (auto& t : neg_slice_spanning_terms(cfg, d)) out.push_back(pattern_elem(cfg, t));
    return out;
}

inline GenSlice neg_slice(const EllConfig& cfg, std::int64_t d) {
    GenSlice s;
    for (auto& t : neg_slice_spanning_terms(cfg, d)) detail::echelon_insert(s, pattern_elem(cfg, t), {t});
    return s;
}

inline std::vector<GlHatElem> neg_basis(const EllConfig& cfg, std::int64_t d) {
    return neg_slice(cfg, d).basis;
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

// Enumerated character: multiset counting over the slice dimensions.
inline QSeries character(const EllConfig& cfg, int order) {
    QSeries out = QSeries::one(order);
    std::vector<Rat> dp(order + 1, Rat(0));
    dp[0] = 1;
    for (int d = 1; d <= order; ++d) {
        size_t dim = neg_slice(cfg, d).basis.size();
        for (size_t c = 0; c < dim; ++c)
            for (int s = d; s <= order; ++s) dp[s] += dp[s - d];
    }
    out.c = dp;
    return out;
}

// Closed product form of the character. For sp the paired diagonal blocks
// (i, i*) carry the extra parity sign, which flips the eps-dependence of
// their slice dimensions relative to the o case; the closed form uses the
// flipped value there, as the slice row reduction confirms.
inline QSeries closed_character(const EllConfig& cfg, int order) {
    std::vector<std::pair<int, int>> factors;
    if (cfg.variant == Variant::gl) {
        for (int i = 1; i <= cfg.n; ++i)
            for (int r = 1; r + cfg.ell_of(i) <= order; ++r) factors.push_back({r + cfg.ell_of(i), r * cfg.n});
    } else {
        int eps_eff = cfg.variant == Variant::sp ? 1 - cfg.eps : cfg.eps;
        for (int r = 1; r <= order; ++r) {
            std::int64_t e = (std::int64_t)cfg.n * r * (cfg.n - 1) / 2 +
                             (std::int64_t)cfg.n * (r * eps_eff + (eps_eff % 2 == 0 ? 1 : -1) * (r / 2));
            if (e > 0) factors.push_back({r, (int)e});
        }
    }
    return qseries_expand_product(factors, order);
}

// ---------------------------------------------------------------------------
// The vacuum module: PBW monomials over the canonical slice bases. A
// monomial is a weakly increasing sequence of generators in the order
// (degree, slice position); the empty monomial is the vacuum.
// ---------------------------------------------------------------------------

struct PBWGen {
    std::int64_t deg = 1;
    int idx = 0;
    auto operator<=>(const PBWGen&) const = default;
};

struct VacMono {
    std::vector<PBWGen> gens;
    auto operator<=>(const VacMono&) const = default;
};

struct VacVector {
    std::map<VacMono, Rat> terms;

    static VacVector vacuum() {
        VacVector v;
        v.terms.emplace(VacMono{}, Rat(1));
        return v;
    }

    void add(const VacMono& m, const Rat& c) {
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
    VacVector& operator+=(const VacVector& o) {
        for (auto& [m, c] : o.terms) add(m, c);
        return *this;
    }
    VacVector& operator-=(const VacVector& o) {
        for (auto& [m, c] : o.terms) add(m, -c);
        return *this;
    }
    VacVector& operator*=(const Rat& s) {
        if (s == 0) {
            terms.clear();
            return *this;
        }
        for (auto& [m, c] : terms) c *= s;
        return *this;
    }
    friend VacVector operator+(VacVector a, const VacVector& b) { return a += b; }
    friend VacVector operator-(VacVector a, const VacVector& b) { return a -= b; }
    friend VacVector operator*(VacVector a, const Rat& s) { return a *= s; }
    friend bool operator==(const VacVector& a, const VacVector& b) { return a.terms == b.terms; }
};

inline std::int64_t degree(const VacMono& m) {
    std::int64_t d = 0;
    for (auto& g : m.gens) d += g.deg;
    return d;
}

// The vacuum module of the configured algebra at level chi. Slice bases are
// computed on demand and cached; one instance per thread of use.
class VacuumModule {
  public:
    VacuumModule(EllConfig cfg, Rat chi) : cfg_(std::move(cfg)), chi_(std::move(chi)) {
        cfg_.validate();
    }

    const EllConfig& cfg() const { return cfg_; }
    const Rat& chi() const { return chi_; }

    const GenSlice& slice(std::int64_t d) const {
        auto it = slices_.find(d);
        if (it == slices_.end()) it = slices_.emplace(d, neg_slice(cfg_, d)).first;
        return it->second;
    }

    const GlHatElem& elem_of(const PBWGen& g) const {
        const GenSlice& s = slice(g.deg);
        if (g.idx < 0 || g.idx >= (int)s.basis.size()) throw std::invalid_argument("elem_of: bad generator");
        return s.basis[(size_t)g.idx];
    }

    const std::vector<FieldGenTerm>& pattern_of(const PBWGen& g) const {
        const GenSlice& s = slice(g.deg);
        if (g.idx < 0 || g.idx >= (int)s.patterns.size())
            throw std::invalid_argument("pattern_of: bad generator");
        return s.patterns[(size_t)g.idx];
    }

    // Coordinates of a negative-part element in the canonical generators.
    std::vector<std::pair<PBWGen, Rat>> decompose_neg(const GlHatElem& x) const {
        std::vector<std::pair<PBWGen, Rat>> out;
        std::map<std::int64_t, GlHatElem> parts;
        for (auto& [k, c] : x.terms()) {
            if (k.m >= 0) throw std::invalid_argument("decompose_neg: nonnegative t-power");
            std::int64_t d = mono_degree(k, cfg_);
            auto it = parts.find(d);
            if (it == parts.end()) it = parts.emplace(d, GlHatElem(cfg_.n)).first;
            it->second.add(k.i, k.j, k.m, k.r, c);
        }
        for (auto& [d, part] : parts) {
            if (d < 1) throw std::invalid_argument("decompose_neg: nonpositive degree slice");
            const GenSlice& s = slice(d);
            GlHatElem rem = part;
            for (size_t t = 0; t < s.basis.size(); ++t) {
                Rat c = detail::coeff_of(rem, s.pivots[t]);
                if (c != 0) {
                    rem -= s.basis[t] * c;
                    out.push_back({PBWGen{d, (int)t}, c});
                }
            }
            if (!rem.terms().empty())
                throw std::invalid_argument("decompose_neg: element outside the subalgebra span");
        }
        return out;
    }

    // Action of an arbitrary subalgebra element by PBW normal ordering.
    VacVector act(const GlHatElem& x, const VacVector& v) const {
        VacVector out;
        for (auto& [m, c] : v.terms) {
            VacVector piece = act_elem(x, m.gens, 0);
            piece *= c;
            out += piece;
        }
        return out;
    }

    VacVector gen_vector(const PBWGen& g) const {
        VacVector v;
        v.add(VacMono{{g}}, Rat(1));
        return v;
    }

  private:
    VacVector act_elem(const GlHatElem& x, const std::vector<PBWGen>& w, size_t from) const {
        VacVector out;
        if (x.kappa() != 0) {
            VacMono rest{std::vector<PBWGen>(w.begin() + from, w.end())};
            out.add(rest, x.kappa() * chi_);
        }
        if (x.terms().empty()) return out;
        if (from == w.size()) {
            GlHatElem neg(cfg_.n);
            for (auto& [k, c] : x.terms())
                if (k.m < 0) neg.add(k.i, k.j, k.m, k.r, c);
            for (auto& [g, c] : decompose_neg(neg)) out.add(VacMono{{g}}, c);
            return out;
        }
        const PBWGen& h = w[from];
        GlHatElem xm = x;
        xm.kappa() = 0;
        VacVector inner = act_elem(xm, w, from + 1);
        out += mul_gen(h, inner);
        out += act_elem(ghbracket(xm, elem_of(h)), w, from + 1);
        return out;
    }

    VacVector mul_gen(const PBWGen& g, const VacVector& v) const {
        VacVector out;
        for (auto& [m, c] : v.terms) {
            VacVector piece = mul_gen_mono(g, m);
            piece *= c;
            out += piece;
        }
        return out;
    }

    VacVector mul_gen_mono(const PBWGen& g, const VacMono& m) const {
        VacVector out;
        if (m.gens.empty() || !(m.gens.front() < g)) {
            VacMono r;
            r.gens.reserve(m.gens.size() + 1);
            r.gens.push_back(g);
            r.gens.insert(r.gens.end(), m.gens.begin(), m.gens.end());
            out.add(r, Rat(1));
            return out;
        }
        PBWGen h = m.gens.front();
        std::vector<PBWGen> rest(m.gens.begin() + 1, m.gens.end());
        VacVector tail = mul_gen_mono(g, VacMono{rest});
        // prepend h; monomials whose head is below h come from shorter bracket
        // contributions and recurse
        for (auto& [u, c] : tail.terms) {
            if (u.gens.empty() || !(u.gens.front() < h)) {
                VacMono r;
                r.gens.reserve(u.gens.size() + 1);
                r.gens.push_back(h);
                r.gens.insert(r.gens.end(), u.gens.begin(), u.gens.end());
                out.add(r, c);
            } else {
                VacVector deeper = mul_gen_mono(h, u);
                deeper *= c;
                out += deeper;
            }
        }
        out += act_elem(ghbracket(elem_of(g), elem_of(h)), rest, 0);
        return out;
    }

    EllConfig cfg_;
    Rat chi_;
    mutable std::map<std::int64_t, GenSlice> slices_;
};

// ---------------------------------------------------------------------------
// Singular vectors
// ---------------------------------------------------------------------------

// The printed generator applied chi+1 times to the vacuum.
inline VacVector singular_vector(VacuumModule& mod, long chi) {
    const EllConfig& cfg = mod.cfg();
    if (chi < 0) throw std::invalid_argument("singular_vector: chi must be a nonnegative integer");
    GlHatElem u(cfg.n);
    bool first_kind = cfg.variant == Variant::gl || (cfg.variant == Variant::o && cfg.eps == 1) ||
                      (cfg.variant == Variant::sp && cfg.eps == 0);
    if (first_kind) {
        if (cfg.n < 2) throw std::invalid_argument("singular_vector: needs n > 1");
        u.add(cfg.n, 1, -1, cfg.ell_of(1), Rat(1));
    } else {
        if (cfg.n < 4) throw std::invalid_argument("singular_vector: needs n > 3");
        u.add(cfg.n - 1, 1, -1, cfg.ell_of(1), Rat(1));
        u.add(cfg.n, 2, -1, cfg.ell_of(2), Rat(-1));
    }
    VacVector v = VacVector::vacuum();
    for (long t = 0; t <= chi; ++t) v = mod.act(u, v);
    return v;
}

// Desk-scale singular vector check:
//  (a) every spanning element of grading degree -d, 1 <= d <= D (derivative
//      offset up to D) annihilates v;
//  (b) every strictly lower degree-0 element (i > j, offset up to D)
//      annihilates v;
//  (c) diagonal degree-0 elements act on v by scalars.
inline Report check_singular(VacuumModule& mod, const VacVector& v, std::int64_t D) {
    const EllConfig& cfg = mod.cfg();
    Report rep;
    rep.check = "singular";
    auto element = [&](int i, int j, std::int64_t m, int r) {
        if (cfg.variant == Variant::gl) return GlHatElem::mono(cfg.n, i, j, m, r + cfg.ell_of(j));
        return gen_skew(i, j, m, r, cfg);
    };
    auto is_multiple = [&](const VacVector& w) {
        if (w.is_zero()) return true;
        auto head = v.terms.begin();
        if (v.is_zero()) return false;
        auto it = w.terms.find(head->first);
        if (it == w.terms.end()) return false;
        Rat scale = it->second / head->second;
        VacVector diff = w - v * scale;
        return diff.is_zero();
    };
    for (std::int64_t d = 1; d <= D; ++d)
        for (int i = 1; i <= cfg.n; ++i)
            for (int j = 1; j <= cfg.n; ++j)
                for (int r = 0; r <= D; ++r) {
                    GlHatElem x = element(i, j, r + d, r);
                    rep.count();
                    if (!mod.act(x, v).is_zero())
                        rep.fail({{"part", "a"}, {"i", i}, {"j", j}, {"d", d}, {"r", r}});
                }
    for (int i = 1; i <= cfg.n; ++i)
        for (int j = 1; j <= cfg.n; ++j)
            for (int r = 0; r <= D; ++r) {
                if (i == j) {
                    GlHatElem x = element(i, i, r, r);
                    rep.count();
                    if (!is_multiple(mod.act(x, v))) rep.fail({{"part", "c"}, {"i", i}, {"r", r}});
                } else if (i > j) {
                    GlHatElem x = element(i, j, r, r);
                    rep.count();
                    if (!mod.act(x, v).is_zero()) rep.fail({{"part", "b"}, {"i", i}, {"j", j}, {"r", r}});
                }
            }
    return rep;
}

}  // namespace glhat
