#ifndef TROPCANON_TROPCANON_HPP
#define TROPCANON_TROPCANON_HPP

#include "tropcanon/errors.hpp"
#include "tropcanon/rational.hpp"
#include "tropcanon/linear.hpp"
#include "tropcanon/curve.hpp"
#include "tropcanon/connectivity.hpp"
#include "tropcanon/canonical.hpp"
#include "tropcanon/divisor.hpp"
#include "tropcanon/solve.hpp"
#include "tropcanon/level.hpp"
#include "tropcanon/realize.hpp"
#include "tropcanon/enumerate.hpp"
#include "tropcanon/catalog.hpp"

#endif  // TROPCANON_TROPCANON_HPP
