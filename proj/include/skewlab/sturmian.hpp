#pragma once

// Two-letter coding of a rotation orbit: letter i is 1 exactly when
// x0 + i*alpha mod 1 lands in [0, alpha). Comparisons are exact, so the word
// is reproducible bit for bit.

#include <cstdint>
#include <set>
#include <string>

#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"

namespace skewlab {

inline std::string sturmian_code(Frac128 alpha, Frac128 x0, std::int64_t N) {
    if (N < 0) throw BadIndex("sturmian_code: N must be >= 0");
    std::string word;
    word.reserve(static_cast<std::size_t>(N));
    Frac128 cur = x0;
    for (std::int64_t i = 0; i < N; ++i) {
        word.push_back(cur.raw() < alpha.raw() ? '1' : '0');
        cur = cur + alpha;
    }
    return word;
}

// Number of distinct length-n substrings of the word. For a coding of an
// irrational rotation sampled long enough this is n + 1.
inline std::size_t factor_count(const std::string& word, std::size_t n) {
    if (n == 0 || word.size() < n) return 0;
    std::set<std::string> factors;
    for (std::size_t i = 0; i + n <= word.size(); ++i) factors.insert(word.substr(i, n));
    return factors.size();
}

}  // namespace skewlab
