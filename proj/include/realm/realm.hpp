// realm.hpp
// Umbrella header: entanglement detection from bordered realignment moments.

#pragma once

#include "criteria.hpp"
#include "explorer.hpp"
#include "io.hpp"
#include "moments.hpp"
#include "realignment.hpp"
#include "reproduce.hpp"
#include "states.hpp"
#include "types.hpp"
