#pragma once

// Umbrella header for the weibull_mix library.

#include "weibull_mix/asymmetric.hpp"
#include "weibull_mix/errors.hpp"
#include "weibull_mix/ks.hpp"
#include "weibull_mix/mixtures.hpp"
#include "weibull_mix/montecarlo.hpp"
#include "weibull_mix/quadrature.hpp"
#include "weibull_mix/randsum.hpp"
#include "weibull_mix/report_io.hpp"
#include "weibull_mix/rng.hpp"
#include "weibull_mix/special.hpp"
#include "weibull_mix/stable.hpp"
#include "weibull_mix/verify.hpp"
#include "weibull_mix/version.hpp"
#include "weibull_mix/weibull.hpp"
