#pragma once

#include "hardy/error.hpp"
#include "hardy/exactnum.hpp"
#include "hardy/kernels.hpp"
#include "hardy/montecarlo.hpp"
#include "hardy/multiindex.hpp"
#include "hardy/sphere.hpp"
#include "hardy/sphere_poly.hpp"
#include "hardy/tracetest.hpp"
#include "hardy/transforms.hpp"
