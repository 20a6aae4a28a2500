#pragma once

// Pulls a fiber function across an orbit equivalence: the value at y is the
// finite orbit sum of F read through the intertwining map h while y advances
// under S, with the number of terms chosen per point by j_fn.

#include <cstdint>
#include <utility>

#include "skewlab/errors.hpp"

namespace skewlab {

template <typename Point, typename FEval, typename HMap, typename JFn, typename SStep>
double transfer_coboundary(FEval&& F_eval, HMap&& h, JFn&& j_fn, SStep&& S_step, Point y) {
    const std::int64_t j = j_fn(y);
    if (j < 0) throw BadIndex("transfer_coboundary: j_fn must be nonnegative");
    double acc = 0;
    for (std::int64_t k = 0; k < j; ++k) {
        acc += F_eval(h(y));
        y = S_step(std::move(y));
    }
    return acc;
}

}  // namespace skewlab
