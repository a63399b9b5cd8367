#pragma once

#include "hca/ca1d.hpp"
#include "hca/embed.hpp"
#include "hca/engine.hpp"
#include "hca/geometry.hpp"
#include "hca/grid.hpp"
#include "hca/region.hpp"
#include "hca/render.hpp"
#include "hca/symmetry.hpp"
