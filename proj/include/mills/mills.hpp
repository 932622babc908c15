#pragma once

// Umbrella header: exact Laplace-polynomial combinatorics and certified
// Mills-ratio numerics.

#include "mills/big_real.hpp"
#include "mills/errors.hpp"
#include "mills/identities.hpp"
#include "mills/int_poly.hpp"
#include "mills/laplace.hpp"
#include "mills/mills_ratio.hpp"
#include "mills/rational.hpp"
#include "mills/verify.hpp"
