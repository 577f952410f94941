#pragma once

#include "zonalpd/analysis.hpp"
#include "zonalpd/coeffs.hpp"
#include "zonalpd/derivative.hpp"
#include "zonalpd/error.hpp"
#include "zonalpd/io.hpp"
#include "zonalpd/jacobi.hpp"
#include "zonalpd/kernels.hpp"
#include "zonalpd/quadrature.hpp"
#include "zonalpd/spaces.hpp"
