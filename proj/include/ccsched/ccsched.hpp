#pragma once

// Umbrella header for the coded-caching scheduling engine and finite-SNR
// link-level simulator.

#include "ccsched/beamforming.hpp"
#include "ccsched/channel.hpp"
#include "ccsched/elevation.hpp"
#include "ccsched/errors.hpp"
#include "ccsched/experiment.hpp"
#include "ccsched/network.hpp"
#include "ccsched/oracle.hpp"
#include "ccsched/placement.hpp"
#include "ccsched/profiles.hpp"
#include "ccsched/rate.hpp"
#include "ccsched/rational.hpp"
#include "ccsched/scenario.hpp"
#include "ccsched/schedule.hpp"
#include "ccsched/unicast.hpp"
#include "ccsched/virtual_schedule.hpp"
