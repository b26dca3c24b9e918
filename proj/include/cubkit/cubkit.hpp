#pragma once

// Umbrella header.

#include "cubkit/basis.hpp"
#include "cubkit/cubature.hpp"
#include "cubkit/geometry.hpp"
#include "cubkit/interpolation.hpp"
#include "cubkit/io.hpp"
#include "cubkit/jacobi.hpp"
#include "cubkit/numerics.hpp"
#include "cubkit/weight.hpp"
