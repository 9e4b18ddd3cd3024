#pragma once

// Umbrella header for the whole library.

#include "ds2d/green.hpp"
#include "ds2d/model.hpp"
#include "ds2d/output.hpp"
#include "ds2d/rng.hpp"
#include "ds2d/scenario_io.hpp"
#include "ds2d/selection.hpp"
#include "ds2d/session.hpp"
#include "ds2d/simkit.hpp"
#include "ds2d/split.hpp"
#include "ds2d/version.hpp"
