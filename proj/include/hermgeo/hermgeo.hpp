#pragma once

// Umbrella header: the whole library in one include.

#include "hermgeo/chart.hpp"
#include "hermgeo/connection.hpp"
#include "hermgeo/curvature.hpp"
#include "hermgeo/field_expr.hpp"
#include "hermgeo/forms.hpp"
#include "hermgeo/hodge.hpp"
#include "hermgeo/jet.hpp"
#include "hermgeo/linalg.hpp"
#include "hermgeo/metric.hpp"
#include "hermgeo/quadrature.hpp"
#include "hermgeo/sampling.hpp"
#include "hermgeo/types.hpp"
#include "hermgeo/verify.hpp"
#include "hermgeo/version.hpp"
#include "hermgeo/wirtinger.hpp"
