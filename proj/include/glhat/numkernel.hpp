#pragma once

#include <stdexcept>

#include "glhat/rational.hpp"

namespace glhat {

// Falling factorial <mu>_m = mu (mu-1) ... (mu-(m-1)), with <mu>_0 = 1.
inline Rat falling(const Rat& mu, unsigned m) {
    Rat acc = 1;
    Rat f = mu;
    for (unsigned s = 0; s < m; ++s) {
        acc *= f;
        f -= 1;
    }
    return acc;
}

inline Rat factorial(unsigned m) {
    Rat acc = 1;
    for (unsigned s = 2; s <= m; ++s) acc *= (long)s;
    return acc;
}

// Generalized binomial coefficient C(mu, k) = <mu>_k / k!. The top may be
// negative or rational; for integer tops the result is an integer.
inline Rat gbinom(const Rat& mu, unsigned k) {
    return falling(mu, k) / factorial(k);
}

inline Rat gbinom(long m, unsigned k) { return gbinom(Rat(m), k); }

// Central-correction coefficients I_{r1,r2}(iota): the coefficient of
// x^{r1} y^{r2} z^{-r1-r2-1} in the expansion of
//     ((z+y)/(z+x))^iota - 1) / (x - y),
// computed from the explicit double-sum form of the series, which avoids
// any branch choice for the fractional power:
//     I_{r1,r2} = - sum_{u=0}^{r1} C(iota, u+r2+1) C(-iota, r1-u).
inline Rat im_coeff(const Rat& iota, unsigned r1, unsigned r2) {
    Rat acc = 0;
    for (unsigned u = 0; u <= r1; ++u)
        acc += gbinom(iota, u + r2 + 1) * gbinom(-iota, r1 - u);
    return -acc;
}

}  // namespace glhat
