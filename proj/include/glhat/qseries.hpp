#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "glhat/numkernel.hpp"
#include "glhat/rational.hpp"

namespace glhat {

// Power series in q truncated at a fixed order: coefficients c[0..order].
struct QSeries {
    std::vector<Rat> c;

    explicit QSeries(int order = 0) : c(order + 1, Rat(0)) {}
    int order() const { return (int)c.size() - 1; }

    static QSeries one(int order) {
        QSeries s(order);
        s.c[0] = 1;
        return s;
    }

    friend bool operator==(const QSeries& a, const QSeries& b) { return a.c == b.c; }
};

inline QSeries qseries_mul(const QSeries& a, const QSeries& b) {
    int n = std::min(a.order(), b.order());
    QSeries out(n);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

// (1 - q^e)^{-d} truncated at `order`.
inline QSeries qseries_inv_factor(int e, int d, int order) {
    if (e <= 0 || d <= 0) throw std::invalid_argument("qseries_inv_factor: e, d must be positive");
    QSeries s(order);
    for (int k = 0; e * k <= order; ++k) s.c[e * k] = gbinom((long)k + d - 1, (unsigned)(d - 1));
    return s;
}

// prod over factors (e, d) of (1 - q^e)^{-d}, truncated at `order`.
// Factors with e > order contribute nothing and may be omitted by callers.
inline QSeries qseries_expand_product(const std::vector<std::pair<int, int>>& factors, int order) {
    QSeries acc = QSeries::one(order);
    for (auto [e, d] : factors) {
        if (e > order) continue;
        acc = qseries_mul(acc, qseries_inv_factor(e, d, order));
    }
    return acc;
}

inline std::string qseries_str(const QSeries& s) {
    std::string out;
    for (int i = 0; i <= s.order(); ++i) {
        if (i) out += " ";
        out += rat_str(s.c[i]);
    }
    return out;
}

}  // namespace glhat
