#pragma once

// Umbrella header for the periodic pseudospectral toolkit.

#include "mch/besov.hpp"
#include "mch/bounds.hpp"
#include "mch/config.hpp"
#include "mch/diagnostics.hpp"
#include "mch/dynamics.hpp"
#include "mch/field.hpp"
#include "mch/grid.hpp"
#include "mch/inequalities.hpp"
#include "mch/initial_data.hpp"
#include "mch/littlewood_paley.hpp"
#include "mch/picard.hpp"
#include "mch/random_fields.hpp"
#include "mch/simulate.hpp"
#include "mch/snapshot.hpp"
#include "mch/solver.hpp"
#include "mch/spectral.hpp"
#include "mch/verify.hpp"
