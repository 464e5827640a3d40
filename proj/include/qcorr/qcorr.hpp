// qcorr.hpp
// Umbrella header for the qcorr library.
#pragma once

#include "covariance.hpp"
#include "cuts.hpp"
#include "distill.hpp"
#include "linops.hpp"
#include "named_states.hpp"
#include "observables.hpp"
#include "postulates.hpp"
#include "pure_state.hpp"
#include "serialize.hpp"
#include "state.hpp"
#include "types.hpp"
#include "work.hpp"
