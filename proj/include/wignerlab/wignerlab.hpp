#pragma once

#include "wignerlab/curves.hpp"
#include "wignerlab/errors.hpp"
#include "wignerlab/loss.hpp"
#include "wignerlab/negativity.hpp"
#include "wignerlab/optimize.hpp"
#include "wignerlab/phase_grid.hpp"
#include "wignerlab/special_functions.hpp"
#include "wignerlab/squeeze.hpp"
#include "wignerlab/states.hpp"
#include "wignerlab/version.hpp"
#include "wignerlab/wigner_field.hpp"
