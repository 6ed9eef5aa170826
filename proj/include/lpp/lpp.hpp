#pragma once

#include "lpp/config.hpp"
#include "lpp/error.hpp"
#include "lpp/experiments.hpp"
#include "lpp/geodesic.hpp"
#include "lpp/lattice.hpp"
#include "lpp/numeric.hpp"
#include "lpp/oracle.hpp"
#include "lpp/parallel.hpp"
#include "lpp/passage.hpp"
#include "lpp/run.hpp"
#include "lpp/scaling.hpp"
#include "lpp/stats.hpp"
#include "lpp/weights.hpp"
#include "lpp/verify.hpp"
