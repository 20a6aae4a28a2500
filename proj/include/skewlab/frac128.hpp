#pragma once

// Fixed-point arithmetic on the circle R/Z: a value is an unsigned 128-bit
// numerator over 2^128. Addition, subtraction and integer multiples are the
// native unsigned wrap, so n*alpha mod 1 carries no rounding error beyond the
// 2^-128 seeding of alpha itself.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "skewlab/errors.hpp"

namespace skewlab {

using u128 = unsigned __int128;

namespace detail {

inline std::uint64_t hi64(u128 v) { return static_cast<std::uint64_t>(v >> 64); }
inline std::uint64_t lo64(u128 v) { return static_cast<std::uint64_t>(v); }

// floor(p * 2^128 / q); requires p < q < 2^127 so the shift cannot overflow.
inline u128 mul_div_pow2_128(u128 p, u128 q) {
    u128 res = 0;
    u128 rem = p;
    for (int i = 0; i < 128; ++i) {
        rem <<= 1;
        res <<= 1;
        if (rem >= q) {
            rem -= q;
            res |= 1;
        }
    }
    return res;
}

}  // namespace detail

class Frac128 {
  public:
    constexpr Frac128() : v_(0) {}

    static constexpr Frac128 from_raw(u128 v) {
        Frac128 f;
        f.v_ = v;
        return f;
    }

    // Nearest representable point to x mod 1 (ties to even).
    static Frac128 from_double(double x) {
        if (!std::isfinite(x)) throw ParseError("Frac128: non-finite value");
        double y = x - std::floor(x);
        if (y >= 1.0) y = 0.0;
        if (y < 0.0) y = 0.0;
        const double hi_d = std::ldexp(y, 64);  // exact: power-of-two scale
        const double hi_f = std::floor(hi_d);
        const double rem = hi_d - hi_f;  // exact: low bits of hi_d
        const double lo_d = std::nearbyint(std::ldexp(rem, 64));
        u128 v = static_cast<u128>(hi_f) << 64;
        if (lo_d >= 18446744073709551616.0) {  // 2^64: carry from rounding up
            v += static_cast<u128>(1) << 64;
        } else {
            v += static_cast<u128>(static_cast<std::uint64_t>(lo_d));
        }
        return from_raw(v);
    }

    // Parses "0", "0.d...", ".d..." with value in [0,1). The digit loop takes
    // floor at 2^-128; for the terminating expansions produced by to_decimal
    // the floor error telescopes to zero, so round trips are exact.
    static Frac128 from_decimal(std::string_view s) {
        std::size_t i = 0;
        if (i < s.size() && s[i] == '0') ++i;
        if (i == s.size()) {
            if (i == 0) throw ParseError("Frac128: empty decimal");
            return Frac128();
        }
        if (s[i] != '.') throw ParseError("Frac128: expected value in [0,1): " + std::string(s));
        ++i;
        if (i == s.size()) throw ParseError("Frac128: no digits after point: " + std::string(s));
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw ParseError("Frac128: bad digit in: " + std::string(s));
        u128 acc = 0;
        for (std::size_t j = s.size(); j-- > i;) {
            const unsigned d = static_cast<unsigned>(s[j] - '0');
            // acc <- floor((d * 2^128 + acc) / 10), long division over limbs
            const u128 t1 = (static_cast<u128>(d) << 64) | detail::hi64(acc);
            const u128 q1 = t1 / 10;
            const u128 t2 = ((t1 % 10) << 64) | detail::lo64(acc);
            const u128 q2 = t2 / 10;
            acc = (q1 << 64) | q2;
        }
        return from_raw(acc);
    }

    // (sqrt(5)-1)/2 to within one unit of 2^-128, via Fibonacci convergents.
    static Frac128 golden() {
        static const Frac128 g = [] {
            u128 a = 1, b = 1;  // consecutive Fibonacci numbers
            while (b < (static_cast<u128>(1) << 82)) {
                const u128 c = a + b;
                a = b;
                b = c;
            }
            return from_raw(detail::mul_div_pow2_128(a, b));
        }();
        return g;
    }

    // sqrt(2)-1 to within one unit of 2^-128, via its continued fraction
    // [0;2,2,2,...].
    static Frac128 sqrt2m1() {
        static const Frac128 s = [] {
            u128 p0 = 1, p1 = 0, q0 = 0, q1 = 1;  // p_{-1},p_0,q_{-1},q_0
            while (q1 < (static_cast<u128>(1) << 82)) {
                const u128 p2 = 2 * p1 + p0;
                const u128 q2 = 2 * q1 + q0;
                p0 = p1;
                p1 = p2;
                q0 = q1;
                q1 = q2;
            }
            return from_raw(detail::mul_div_pow2_128(p1, q1));
        }();
        return s;
    }

    u128 raw() const { return v_; }

    Frac128 operator+(Frac128 o) const { return from_raw(v_ + o.v_); }
    Frac128 operator-(Frac128 o) const { return from_raw(v_ - o.v_); }
    Frac128 operator-() const { return from_raw(-v_); }
    bool operator==(const Frac128&) const = default;

    // Exact n*x mod 1: the truncating 128-bit product is the reduction mod 1.
    Frac128 times(std::int64_t n) const {
        const std::uint64_t mag =
            n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
        u128 prod = v_ * static_cast<u128>(mag);
        if (n < 0) prod = -prod;
        return from_raw(prod);
    }

    // Value in [0,1); relative error < 2^-52.
    double to_double() const {
        return std::ldexp(static_cast<double>(detail::hi64(v_)), -64) +
               std::ldexp(static_cast<double>(detail::lo64(v_)), -128);
    }

    // min(x, 1-x): distance to the nearest integer.
    double dist_to_int() const {
        u128 d = v_;
        if (v_ >> 127) d = -v_;  // 1 - x, exact
        return std::ldexp(static_cast<double>(detail::hi64(d)), -64) +
               std::ldexp(static_cast<double>(detail::lo64(d)), -128);
    }

    // Exact terminating decimal expansion (at most 128 digits).
    std::string to_decimal() const {
        if (v_ == 0) return "0";
        std::string out = "0.";
        u128 v = v_;
        for (int i = 0; i < 130 && v != 0; ++i) {
            const u128 bl = (v & 0xffffffffffffffffULL) * 10;
            const u128 ah = (v >> 64) * 10 + (bl >> 64);
            out.push_back(static_cast<char>('0' + static_cast<unsigned>(ah >> 64)));
            v = ((ah & 0xffffffffffffffffULL) << 64) | (bl & 0xffffffffffffffffULL);
        }
        return out;
    }

  private:
    u128 v_;
};

inline double dist_to_int(Frac128 x) { return x.dist_to_int(); }

// n * alpha mod 1, exact for |n| < 2^63.
inline Frac128 frac_mul(std::int64_t n, Frac128 alpha) { return alpha.times(n); }

}  // namespace skewlab
