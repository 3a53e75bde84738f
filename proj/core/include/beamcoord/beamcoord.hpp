// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.
#pragma once

#include "beamcoord/beamgain.hpp"
#include "beamcoord/channel.hpp"
#include "beamcoord/codebook.hpp"
#include "beamcoord/geometry.hpp"
#include "beamcoord/linkeval.hpp"
#include "beamcoord/rng.hpp"
#include "beamcoord/scenario.hpp"
#include "beamcoord/selection.hpp"
#include "beamcoord/simrunner.hpp"
