#pragma once

#include "starlab/corner.hpp"
#include "starlab/critical.hpp"
#include "starlab/energy.hpp"
#include "starlab/errors.hpp"
#include "starlab/kinetic.hpp"
#include "starlab/params.hpp"
#include "starlab/picard.hpp"
#include "starlab/potential.hpp"
#include "starlab/profile.hpp"
#include "starlab/quadrature.hpp"
#include "starlab/rates.hpp"
#include "starlab/rescale.hpp"
#include "starlab/shooting.hpp"
#include "starlab/solver.hpp"
#include "starlab/sweep.hpp"
