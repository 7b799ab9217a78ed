#pragma once

#include "qfluct/tensor_state.hpp"
#include "qfluct/measurements.hpp"
#include "qfluct/me_analysis.hpp"
#include "qfluct/me_basis.hpp"
#include "qfluct/slocc.hpp"
#include "qfluct/oscillator.hpp"
#include "qfluct/state_io.hpp"
#include "qfluct/report.hpp"
