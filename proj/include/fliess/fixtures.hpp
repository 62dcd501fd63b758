#pragma once

namespace fliess::fixtures {

// Single-axle maglev train model: 3 states, 2 inputs, 2 outputs.
const char* axle_json();

// Decoupled PI controller around the operating point (2, 2).
const char* pi_controller_json();

}  // namespace fliess::fixtures
