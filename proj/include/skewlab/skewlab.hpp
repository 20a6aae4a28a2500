#pragma once

// Umbrella header for the whole library.

#include "skewlab/chain.hpp"
#include "skewlab/commands.hpp"
#include "skewlab/config.hpp"
#include "skewlab/continued_fraction.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"
#include "skewlab/halton.hpp"
#include "skewlab/json_io.hpp"
#include "skewlab/rpk.hpp"
#include "skewlab/skew_spec.hpp"
#include "skewlab/sparse_series.hpp"
#include "skewlab/sturmian.hpp"
#include "skewlab/subsequence.hpp"
#include "skewlab/torus_point.hpp"
#include "skewlab/transfer.hpp"
#include "skewlab/verify.hpp"
