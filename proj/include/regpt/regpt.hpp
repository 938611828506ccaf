#pragma once

#include "regpt/errors.hpp"
#include "regpt/grid.hpp"
#include "regpt/oracle.hpp"
#include "regpt/potential.hpp"
#include "regpt/scattering.hpp"
#include "regpt/specfun.hpp"
#include "regpt/spectrum.hpp"
