#pragma once

// Continued-fraction expansion of a circle point by exact integer Euclid on
// the 2^-128 numerator, with convergents p_i/q_i.

#include <cstdint>
#include <utility>
#include <vector>

#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"

namespace skewlab {

struct ContinuedFraction {
    std::vector<std::uint64_t> quotients;        // a0 = 0 first, then a1, a2, ...
    std::vector<std::pair<u128, u128>> convergents;  // (p_i, q_i) per quotient a_i, i >= 1
    bool terminated = false;                     // expansion ended: input is rational
};

// Expands alpha = [0; a1, a2, ...] up to `depth` partial quotients past a0.
// Stops early when the representation is exactly rational; throws
// RationalInput then if the caller requires an irrational.
inline ContinuedFraction continued_fraction(Frac128 alpha, int depth,
                                            bool require_irrational = false) {
    if (depth < 1 || depth > 64) throw BadIndex("continued_fraction: depth must be in [1,64]");
    ContinuedFraction cf;
    cf.quotients.push_back(0);
    u128 num = alpha.raw();
    if (num == 0) {
        cf.terminated = true;
        if (require_irrational) throw RationalInput("continued_fraction: alpha is 0");
        return cf;
    }

    // First step divides 2^128 (not representable) by num: use 2^128 - 1 and
    // fold the remainder's +1 back in.
    const u128 max128 = ~static_cast<u128>(0);
    u128 a = max128 / num;
    u128 rem = max128 % num + 1;
    if (rem == num) {
        a += 1;
        rem = 0;
    }
    u128 prev = num;

    u128 p0 = 1, p1 = 0, q0 = 0, q1 = 1;  // p_{-1}, p_0, q_{-1}, q_0
    bool conv_ok = true;
    for (int i = 0; i < depth; ++i) {
        if (a > static_cast<u128>(UINT64_MAX))
            throw Error("continued_fraction: partial quotient exceeds 64 bits");
        cf.quotients.push_back(static_cast<std::uint64_t>(a));
        if (conv_ok) {
            u128 p2 = 0, q2 = 0;
            if (__builtin_mul_overflow(a, p1, &p2) || __builtin_add_overflow(p2, p0, &p2) ||
                __builtin_mul_overflow(a, q1, &q2) || __builtin_add_overflow(q2, q0, &q2)) {
                conv_ok = false;  // keep quotients, stop recording convergents
            } else {
                cf.convergents.emplace_back(p2, q2);
                p0 = p1;
                p1 = p2;
                q0 = q1;
                q1 = q2;
            }
        }
        if (rem == 0) {
            cf.terminated = true;
            break;
        }
        a = prev / rem;
        const u128 next = prev % rem;
        prev = rem;
        rem = next;
    }
    if (require_irrational && cf.terminated)
        throw RationalInput("continued_fraction: expansion terminated before depth");
    return cf;
}

}  // namespace skewlab
