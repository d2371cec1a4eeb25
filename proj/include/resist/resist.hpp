#pragma once

// Umbrella header for the C++ core.

#include "resist/chart.hpp"
#include "resist/curve.hpp"
#include "resist/errors.hpp"
#include "resist/extremal.hpp"
#include "resist/flowsim.hpp"
#include "resist/metric.hpp"
#include "resist/optimizer.hpp"
#include "resist/quadrature.hpp"
#include "resist/resistance.hpp"
