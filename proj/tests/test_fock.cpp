#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "glhat/fock.hpp"

using namespace glhat;

namespace {

HalfInt H(std::int64_t d) { return HalfInt(d); }

FermMono fm(std::vector<std::int64_t> tbars, std::vector<std::int64_t> ts) {
    FermMono m;
    for (auto d : tbars) m.tbars.push_back(H(d));
    for (auto d : ts) m.ts.push_back(H(d));
    return m;
}

FermVec fv(const FermMono& m, Rat c = Rat(1)) {
    FermVec v;
    v.add(m, c);
    return v;
}

FermMono random_ferm_mono(std::mt19937_64& g, int maxvar) {
    FermMono m;
    for (int d = -2 * maxvar + 1; d < 0; d += 2) {
        if (g() % 2) m.tbars.push_back(H(d));
        if (g() % 2) m.ts.push_back(H(d));
    }
    return m;
}

BoseMono random_bose_mono(std::mt19937_64& g, int maxvar) {
    BoseMono m;
    for (int d = -2 * maxvar + 1; d < 0; d += 2) {
        int e1 = (int)(g() % 3), e2 = (int)(g() % 3);
        if (e1) m.xbars[H(d)] = e1;
        if (e2) m.xs[H(d)] = e2;
    }
    return m;
}

// Independent Koszul-sign oracle: a fermionic monomial as an explicit list
// of factors in application order; reduction to canonical form counts
// adjacent swaps one at a time.
struct Factor {
    bool bar;
    HalfInt idx;
    bool operator==(const Factor&) const = default;
};

struct Word {
    std::vector<Factor> fs;
    int sign = 1;
};

// canonicalize: all bars first, each block ascending; bubble sort with sign flips
std::optional<Word> canonicalize(Word w) {
    auto less = [](const Factor& a, const Factor& b) {
        if (a.bar != b.bar) return a.bar;
        return a.idx < b.idx;
    };
    bool moved = true;
    while (moved) {
        moved = false;
        for (size_t p = 0; p + 1 < w.fs.size(); ++p) {
            if (w.fs[p] == w.fs[p + 1]) return std::nullopt;  // square of an odd variable
            if (less(w.fs[p + 1], w.fs[p])) {
                std::swap(w.fs[p], w.fs[p + 1]);
                w.sign = -w.sign;
                moved = true;
            }
        }
    }
    return w;
}

Word word_of(const FermMono& m) {
    Word w;
    for (auto v : m.tbars) w.fs.push_back({true, v});
    for (auto v : m.ts) w.fs.push_back({false, v});
    return w;
}

// multiply from the left
std::optional<Word> oracle_mult(Word w, Factor f) {
    w.fs.insert(w.fs.begin(), f);
    return canonicalize(std::move(w));
}

// odd left derivation with respect to f
std::optional<Word> oracle_der(Word w, Factor f) {
    for (size_t p = 0; p < w.fs.size(); ++p) {
        if (w.fs[p] == f) {
            w.sign *= (p % 2 ? -1 : 1);
            w.fs.erase(w.fs.begin() + p);
            return w;
        }
    }
    return std::nullopt;
}

std::optional<Word> oracle_op(Word w, bool bar, HalfInt l) {
    if (l.negative()) return oracle_mult(std::move(w), Factor{bar, l});
    return oracle_der(std::move(w), Factor{!bar, -l});
}

FermVec oracle_act_E(HalfInt l, HalfInt k, const FermMono& m) {
    FermVec out;
    bool corrected = (l == -k && l.positive());
    Word w = word_of(m);
    std::optional<Word> r;
    if (corrected) {
        r = oracle_op(w, true, l);
        if (r) r = oracle_op(std::move(*r), false, k);
        if (r) r->sign = -r->sign;
    } else {
        r = oracle_op(w, false, k);
        if (r) r = oracle_op(std::move(*r), true, l);
    }
    if (!r) return out;
    auto c = canonicalize(std::move(*r));
    if (!c) return out;
    FermMono res;
    for (auto& f : c->fs)
        (f.bar ? res.tbars : res.ts).push_back(f.idx);
    out.add(res, Rat(c->sign));
    return out;
}

}  // namespace

TEST_CASE("fermionic action basics") {
    FermVec one = FermVec::vacuum();
    CHECK(ferm_act(H(-1), H(-3), one) == fv(fm({-1}, {-3})));
    CHECK(ferm_act(H(1), H(-1), one).is_zero());
    CHECK(ferm_act(H(3), H(-1), fv(fm({}, {-1}))).is_zero());
    // eigenvalue of the corrected diagonal case
    CHECK(ferm_act(H(1), H(-1), fv(fm({}, {-1}))) == fv(fm({}, {-1})) * Rat(-1));
    // linearity
    FermVec v = fv(fm({}, {-1})) + fv(fm({}, {-3})) * Rat(2);
    CHECK(ferm_act(H(-5), H(-7), v) ==
          ferm_act(H(-5), H(-7), fv(fm({}, {-1}))) + ferm_act(H(-5), H(-7), fv(fm({}, {-3}))) * Rat(2));
}

TEST_CASE("fermionic signs against the word oracle") {
    std::mt19937_64 g(31);
    for (int t = 0; t < 400; ++t) {
        FermMono m = random_ferm_mono(g, 4);
        std::uniform_int_distribution<std::int64_t> idx(-5, 4);
        HalfInt l = HalfInt::half_odd(idx(g)), k = HalfInt::half_odd(idx(g));
        CHECK(ferm_act_E(l, k, m) == oracle_act_E(l, k, m));
        // composition of two actions
        HalfInt l2 = HalfInt::half_odd(idx(g)), k2 = HalfInt::half_odd(idx(g));
        FermVec via_impl = ferm_act(l2, k2, ferm_act_E(l, k, m));
        FermVec via_oracle;
        for (auto& [mm, c] : oracle_act_E(l, k, m).terms) {
            FermVec piece = oracle_act_E(l2, k2, mm);
            piece *= c;
            via_oracle += piece;
        }
        CHECK(via_impl == via_oracle);
    }
}

TEST_CASE("bosonic action basics") {
    BoseVec one = BoseVec::vacuum();
    CHECK(bose_act(H(1), H(1), one).is_zero());
    BoseMono expect;
    expect.xbars[H(-1)] = 1;
    expect.xs[H(-3)] = 1;
    CHECK(bose_act(H(-1), H(-3), one).terms.begin()->first == expect);
    // normal ordering on the diagonal: E_{1/2,-1/2} x^k = -k x^k
    BoseMono xk;
    xk.xs[H(-1)] = 3;
    BoseVec v;
    v.add(xk, Rat(1));
    CHECK(bose_act(H(1), H(-1), v) == v * Rat(-3));
    // linearity
    BoseMono other;
    other.xbars[H(-3)] = 2;
    BoseVec w = v;
    w.add(other, rat(5, 2));
    BoseVec lhs = bose_act(H(3), H(-5), w);
    BoseVec r1 = bose_act(H(3), H(-5), v);
    BoseVec sv;
    sv.add(other, rat(5, 2));
    CHECK(lhs == r1 + bose_act(H(3), H(-5), sv));
}

namespace {

template <class M, class Act>
void rep_property_suite(std::mt19937_64& g, Act&& act, Rat kappa0, int pairs,
                        const std::vector<FockVec<M>>& probes) {
    std::uniform_int_distribution<std::int64_t> idx(-5, 4);
    Cocycle st = Cocycle::standard();
    for (int t = 0; t < pairs; ++t) {
        HalfInt l1 = HalfInt::half_odd(idx(g)), k1 = HalfInt::half_odd(idx(g));
        HalfInt l2 = HalfInt::half_odd(idx(g)), k2 = HalfInt::half_odd(idx(g));
        InfMat br = ibracket(InfMat::unit_E(l1, k1), InfMat::unit_E(l2, k2));
        for (auto& v : probes) {
            FockVec<M> lhs = act(l1, k1, act(l2, k2, v)) - act(l2, k2, act(l1, k1, v));
            FockVec<M> rhs;
            for (auto& [key, c] : br.terms()) {
                FockVec<M> piece = act(key.l, key.k, v);
                piece *= c;
                rhs += piece;
            }
            FockVec<M> central = v;
            central *= br.kappa0() * kappa0;
            rhs += central;
            CHECK(lhs == rhs);
        }
    }
}

}  // namespace

TEST_CASE("representation property with central charge +1 / -1") {
    std::mt19937_64 g(77);
    std::vector<FermVec> fprobes;
    fprobes.push_back(FermVec::vacuum());
    for (int t = 0; t < 9; ++t) {
        FermVec v;
        v.add(random_ferm_mono(g, 4), Rat(1));
        fprobes.push_back(v);
    }
    rep_property_suite<FermMono>(
        g, [](HalfInt l, HalfInt k, const FermVec& v) { return ferm_act(l, k, v); }, ferm_kappa0(), 100,
        fprobes);

    std::vector<BoseVec> bprobes;
    bprobes.push_back(BoseVec::vacuum());
    for (int t = 0; t < 9; ++t) {
        BoseVec v;
        v.add(random_bose_mono(g, 4), Rat(1));
        bprobes.push_back(v);
    }
    rep_property_suite<BoseMono>(
        g, [](HalfInt l, HalfInt k, const BoseVec& v) { return bose_act(l, k, v); }, bose_kappa0(), 100,
        bprobes);
}

TEST_CASE("charge") {
    CHECK(charge(FermVec::vacuum()) == 0);
    CHECK(charge(fv(fm({}, {-1, -3}))) == 2);
    BoseMono xb3;
    xb3.xbars[H(-1)] = 3;
    BoseVec v;
    v.add(xb3, Rat(1));
    CHECK(charge(v) == -3);
    FermVec mixed = fv(fm({}, {-1})) + fv(fm({-1}, {}));
    CHECK_THROWS(charge(mixed));
}

TEST_CASE("highest weight vectors and weights") {
    CHECK(ferm_hw_vector(0) == FermVec::vacuum());
    CHECK(ferm_hw_vector(-2) == fv(fm({-3, -1}, {}), Rat(-1)));  // tbar_{-1/2} tbar_{-3/2}
    WeightFn l0 = ferm_hw_weight(0);
    CHECK(l0.kappa0_val == 1);
    CHECK(supp(l0).empty());

    BoseVec bk = bose_hw_vector(3);
    BoseMono xk;
    xk.xs[H(-1)] = 3;
    CHECK(bk.terms.begin()->first == xk);
    CHECK(bose_hw_weight(3).kappa0_val == -1);
    CHECK(bose_hw_weight(3).diag.at(H(1)) == -3);
    CHECK(bose_hw_weight(-2).diag.at(H(-1)) == 2);

    // highest weight property: E_{l,k} with l + k > 0 annihilates v_k and the
    // diagonal acts by the printed weight, fermionic and bosonic.
    for (std::int64_t k = -3; k <= 3; ++k) {
        FermVec vf = ferm_hw_vector(k);
        WeightFn wf = ferm_hw_weight(k);
        BoseVec vb = bose_hw_vector(k);
        WeightFn wb = bose_hw_weight(k);
        for (std::int64_t a = -11; a <= 11; a += 2)
            for (std::int64_t b = -11; b <= 11; b += 2) {
                if (a + b > 0) {
                    CHECK(ferm_act(H(a), H(b), vf).is_zero());
                    CHECK(bose_act(H(a), H(b), vb).is_zero());
                }
                if (a + b == 0) {
                    CHECK(ferm_act(H(a), H(b), vf) == vf * wf.at(H(a)));
                    CHECK(bose_act(H(a), H(b), vb) == vb * wb.at(H(a)));
                }
            }
    }
}

TEST_CASE("level-zero window annihilates the vacuum") {
    // E_{l,-k} and E_{-l,k} for l, k > 0 all kill 1
    for (std::int64_t a = 1; a <= 11; a += 2)
        for (std::int64_t b = 1; b <= 11; b += 2) {
            CHECK(ferm_act(H(a), H(-b), FermVec::vacuum()).is_zero());
            CHECK(ferm_act(H(-a), H(b), FermVec::vacuum()).is_zero());
            CHECK(bose_act(H(a), H(-b), BoseVec::vacuum()).is_zero());
            CHECK(bose_act(H(-a), H(b), BoseVec::vacuum()).is_zero());
        }
}

TEST_CASE("translation operator") {
    CHECK(translation(FermVec::vacuum()).is_zero());
    CHECK(translation(BoseVec::vacuum()).is_zero());
    CHECK(translation(fv(fm({}, {-1}))) == fv(fm({}, {-3})));

    // commutator with E_{a,b} matches the bracket with the defining sum,
    // including the central contribution
    std::mt19937_64 g(13);
    std::uniform_int_distribution<std::int64_t> idx(-4, 3);
    for (int t = 0; t < 120; ++t) {
        HalfInt a = HalfInt::half_odd(idx(g)), b = HalfInt::half_odd(idx(g));
        FermVec v;
        v.add(random_ferm_mono(g, 3), Rat(1));
        FermVec lhs = translation(ferm_act(a, b, v)) - ferm_act(a, b, translation(v));
        // [D, E_{a,b}] = (1/2 - a) E_{a-1,b} - (b - 1/2) E_{a,b-1} + central
        FermVec rhs = ferm_act(a - 1, b, v) * (rat(1, 2) - to_rat(a)) -
                      ferm_act(a, b - 1, v) * (to_rat(b) - rat(1, 2));
        if (a + b == HalfInt::of_int(1)) {
            // central term of sum_l (l+1/2)[E_{-1-l,l}, E_{a,b}]
            Cocycle st = Cocycle::standard();
            Rat z = 0;
            for (std::int64_t dl = -13; dl <= 13; dl += 2) {
                HalfInt l(dl);
                z += (to_rat(l) + rat(1, 2)) * st.value(HalfInt(-2) - l, l, a, b);
            }
            FermVec cv = v;
            cv *= z;
            rhs += cv;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("diagonal tensor action") {
    TensorVec<FermMono> two = TensorVec<FermMono>::vacuum(2);
    TensorVec<FermMono> moved = tensor_act(H(-1), H(-3), two);
    CHECK(moved.terms.size() == 2);
    for (auto& [factors, c] : moved.terms) CHECK(c == 1);

    // bracket with central charge equal to the number of factors
    std::mt19937_64 g(29);
    std::uniform_int_distribution<std::int64_t> idx(-4, 3);
    for (int t = 0; t < 60; ++t) {
        HalfInt l1 = HalfInt::half_odd(idx(g)), k1 = HalfInt::half_odd(idx(g));
        HalfInt l2 = HalfInt::half_odd(idx(g)), k2 = HalfInt::half_odd(idx(g));
        InfMat br = ibracket(InfMat::unit_E(l1, k1), InfMat::unit_E(l2, k2));
        TensorVec<FermMono> v = TensorVec<FermMono>::vacuum(3);
        std::vector<FermMono> fs = {random_ferm_mono(g, 3), random_ferm_mono(g, 3), random_ferm_mono(g, 3)};
        v.terms.clear();
        v.add(fs, Rat(1));
        TensorVec<FermMono> lhs = tensor_act(l1, k1, tensor_act(l2, k2, v));
        lhs -= tensor_act(l2, k2, tensor_act(l1, k1, v));
        TensorVec<FermMono> rhs;
        for (auto& [key, c] : br.terms()) {
            TensorVec<FermMono> piece = tensor_act(key.l, key.k, v);
            piece *= c;
            rhs += piece;
        }
        TensorVec<FermMono> central = v;
        central *= br.kappa0() * Rat(3);  // chi = 3 factors, fermionic
        rhs += central;
        CHECK(lhs == rhs);
    }
}
