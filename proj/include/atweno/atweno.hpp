#pragma once

#include "atweno/exact.hpp"
#include "atweno/grid.hpp"
#include "atweno/harness.hpp"
#include "atweno/integrators.hpp"
#include "atweno/models.hpp"
#include "atweno/numdiff.hpp"
#include "atweno/opcount.hpp"
#include "atweno/reconstruct.hpp"
#include "atweno/solver2d.hpp"
