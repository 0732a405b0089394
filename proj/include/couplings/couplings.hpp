#pragma once

// Umbrella header.

#include "couplings/errors.hpp"
#include "couplings/extreme_measures.hpp"
#include "couplings/g_good.hpp"
#include "couplings/good_sets.hpp"
#include "couplings/group_action.hpp"
#include "couplings/instance.hpp"
#include "couplings/linalg.hpp"
#include "couplings/rational.hpp"
#include "couplings/ratios.hpp"
