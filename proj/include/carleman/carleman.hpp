#pragma once

// Scalar first-order IVPs y' = phi(y) f(t) + g(t) recast as truncated
// superdiagonal linear systems, solved by the exact nilpotent matrix
// exponential and variation of constants, and reconstructed as power series.

#include "carleman/cascade.hpp"
#include "carleman/config.hpp"
#include "carleman/gauge.hpp"
#include "carleman/matrix.hpp"
#include "carleman/oracles.hpp"
#include "carleman/phi.hpp"
#include "carleman/problem.hpp"
#include "carleman/reconstruct.hpp"
#include "carleman/runner.hpp"
#include "carleman/system.hpp"
#include "carleman/taylor.hpp"
