#pragma once

// Exact and asymptotic confidence intervals for the odds ratio of two
// binomial samples, with enumerated coverage probabilities.

#include "orci/coverage.hpp"
#include "orci/distribution.hpp"
#include "orci/errors.hpp"
#include "orci/exact_ci.hpp"
#include "orci/odds_ratio.hpp"
#include "orci/prob.hpp"
#include "orci/quadrature.hpp"
#include "orci/types.hpp"
#include "orci/wald_ci.hpp"
