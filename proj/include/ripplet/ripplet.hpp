#pragma once

// Umbrella header for the numerical core (io.hpp is separate: it needs nlohmann/json).

#include "ripplet/error.hpp"
#include "ripplet/laurent.hpp"
#include "ripplet/masks.hpp"
#include "ripplet/sampled.hpp"
#include "ripplet/refinable.hpp"
#include "ripplet/prewavelet.hpp"
#include "ripplet/biorthogonal.hpp"
#include "ripplet/filterbank.hpp"
