#pragma once

#include "ccpivot/charge.hpp"
#include "ccpivot/constrained.hpp"
#include "ccpivot/core.hpp"
#include "ccpivot/generators.hpp"
#include "ccpivot/io.hpp"
#include "ccpivot/nodeweighted.hpp"
#include "ccpivot/oracle.hpp"
#include "ccpivot/pivot.hpp"
#include "ccpivot/rng.hpp"
#include "ccpivot/sampler.hpp"
#include "ccpivot/verify.hpp"
