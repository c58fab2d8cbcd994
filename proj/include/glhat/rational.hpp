#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace glhat {

// Exact rational scalar; the whole library computes over Q, there is no
// floating point anywhere. Backed by GMP's mpq_class, which keeps values
// reduced with positive denominator.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline bool fits_long(const Rat& q) {
    return is_integer(q) && q.get_num().fits_slong_p();
}

inline long to_long(const Rat& q) {
    if (!fits_long(q)) throw std::domain_error("to_long: not a machine integer");
    return q.get_num().get_si();
}

// Serialized form is "p/q", or just "p" when q = 1.
inline std::string rat_str(const Rat& q) {
    std::string s = q.get_num().get_str();
    if (!is_integer(q)) s += "/" + q.get_den().get_str();
    return s;
}

// Strict parser for the "p/q" form. Returns nullopt on malformed input
// (leading '+', whitespace, empty or zero denominator, ...).
inline std::optional<Rat> rat_parse(const std::string& s) {
    auto digits = [](const std::string& t, size_t from, size_t to) {
        if (from >= to) return false;
        for (size_t p = from; p < to; ++p)
            if (t[p] < '0' || t[p] > '9') return false;
        return true;
    };
    size_t slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    size_t start = (!num.empty() && num[0] == '-') ? 1 : 0;
    if (!digits(num, start, num.size())) return std::nullopt;
    if (slash != std::string::npos) {
        std::string den = s.substr(slash + 1);
        if (!digits(den, 0, den.size())) return std::nullopt;
        if (mpz_class(den) == 0) return std::nullopt;
    }
    Rat q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    q.canonicalize();
    return q;
}

}  // namespace glhat
