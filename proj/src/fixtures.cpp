#include "fliess/fixtures.hpp"

namespace fliess::fixtures {

const char* axle_json() {
  return R"json({
  "n": 3, "m": 2, "l": 2,
  "z0": [0, 0, 0],
  "g": [
    [{"taylor": {}}, {"taylor": {}}, {"taylor": {}}],
    [{"builtin": "cos", "var": 3}, {"builtin": "sin", "var": 3}, {"taylor": {}}],
    [{"taylor": {}}, {"taylor": {}}, {"taylor": {"0 0 0": 1}}]
  ],
  "h": [{"taylor": {"1 0 0": 1}}, {"taylor": {"0 1 0": 1}}]
}
)json";
}

const char* pi_controller_json() {
  return R"json({
  "n": 2, "m": 2, "l": 2,
  "z0": [2, 2],
  "g": [
    [{"taylor": {}}, {"taylor": {}}],
    [{"taylor": {"0 0": 1}}, {"taylor": {}}],
    [{"taylor": {}}, {"taylor": {"0 0": 1}}]
  ],
  "h": [{"taylor": {"1 0": 2}}, {"taylor": {"0 1": 10}}]
}
)json";
}

}  // namespace fliess::fixtures
