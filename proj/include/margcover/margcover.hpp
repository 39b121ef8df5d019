#pragma once

#include "margcover/bounds.hpp"
#include "margcover/combinatorics.hpp"
#include "margcover/constructions.hpp"
#include "margcover/cover_core.hpp"
#include "margcover/cube_sim.hpp"
#include "margcover/errors.hpp"
#include "margcover/exact_search.hpp"
#include "margcover/weighted.hpp"
