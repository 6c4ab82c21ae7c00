#pragma once

// Fractional normal inverse Gaussian process: analytic formulas, path
// simulation, and Monte Carlo validation.

#include "fnig/fbm_kernels.hpp"
#include "fnig/fnig_analytics.hpp"
#include "fnig/fnig_noise.hpp"
#include "fnig/gaussian_sim.hpp"
#include "fnig/ig.hpp"
#include "fnig/io.hpp"
#include "fnig/mc_validate.hpp"
#include "fnig/n_fnig.hpp"
#include "fnig/quadrature.hpp"
#include "fnig/rng.hpp"
#include "fnig/special_fn.hpp"

#define FNIG_VERSION "0.1.0"
