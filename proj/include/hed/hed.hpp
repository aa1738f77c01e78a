#pragma once

// Umbrella header for the HED scoring toolkit.

#include "hed/bootstrap.hpp"
#include "hed/detectors.hpp"
#include "hed/errors.hpp"
#include "hed/fbm.hpp"
#include "hed/frontier.hpp"
#include "hed/io.hpp"
#include "hed/regime.hpp"
#include "hed/rng.hpp"
#include "hed/score.hpp"
#include "hed/stream.hpp"
#include "hed/svg.hpp"
#include "hed/synth.hpp"

namespace hed {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hed
