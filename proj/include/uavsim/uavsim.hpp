#pragma once

#include "config.hpp"
#include "core.hpp"
#include "energetics.hpp"
#include "harness.hpp"
#include "lasercharge.hpp"
#include "random.hpp"
#include "roadmap.hpp"
#include "stats.hpp"
#include "strategies.hpp"
#include "worldgen.hpp"
