#pragma once

#include "scatterkit/analytic_states.hpp"
#include "scatterkit/common.hpp"
#include "scatterkit/io.hpp"
#include "scatterkit/nonorth_delta.hpp"
#include "scatterkit/oracle.hpp"
#include "scatterkit/overlap_engine.hpp"
#include "scatterkit/potentials.hpp"
#include "scatterkit/quadrature.hpp"
#include "scatterkit/regcompare.hpp"
#include "scatterkit/special_functions.hpp"
#include "scatterkit/wavepacket.hpp"
