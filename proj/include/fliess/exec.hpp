#pragma once

namespace fliess {

// Kernel selector: Serial is the plain reference implementation, Parallel the
// OpenMP one. Both must produce identical (exact) results.
enum class Exec { Serial, Parallel };

}  // namespace fliess
