#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "glhat/rational.hpp"

namespace glhat {

// Index ranging over Z + 1/2 (odd `doubled`) or Z (even `doubled`).
// Storing twice the value lets both lattices share one exact integer type
// with O(1) parity checks.
struct HalfInt {
    std::int64_t doubled = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(std::int64_t d) : doubled(d) {}

    static constexpr HalfInt of_int(std::int64_t n) { return HalfInt(2 * n); }
    // k + 1/2
    static constexpr HalfInt half_odd(std::int64_t k) { return HalfInt(2 * k + 1); }

    constexpr bool is_integer() const { return doubled % 2 == 0; }
    constexpr bool is_half_odd() const { return doubled % 2 != 0; }
    constexpr bool positive() const { return doubled > 0; }
    constexpr bool negative() const { return doubled < 0; }

    // for l = k + 1/2 returns k, for l = k - 1/2 returns k - 1
    constexpr std::int64_t int_floor() const {
        std::int64_t d = doubled;
        return d >= 0 ? d / 2 : -((-d + 1) / 2);
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.doubled + b.doubled); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.doubled - b.doubled); }
    constexpr HalfInt operator-() const { return HalfInt(-doubled); }
    friend constexpr HalfInt operator+(HalfInt a, std::int64_t n) { return HalfInt(a.doubled + 2 * n); }
    friend constexpr HalfInt operator-(HalfInt a, std::int64_t n) { return HalfInt(a.doubled - 2 * n); }
    auto operator<=>(const HalfInt&) const = default;
};

inline Rat to_rat(HalfInt h) { return rat(h.doubled, 2); }

inline std::string to_string(HalfInt h) {
    if (h.is_integer()) return std::to_string(h.doubled / 2);
    return std::to_string(h.doubled) + "/2";
}

// The step function H: 1 for l > 0, 0 for l < 0. Only ever evaluated on
// half-odd indices, so the value at 0 never matters.
inline int step(HalfInt l) { return l.doubled > 0 ? 1 : 0; }

}  // namespace glhat
