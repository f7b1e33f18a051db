#pragma once

namespace vsb {

/// Kernel execution policy. Both paths produce bit-identical results:
/// the parallel path only distributes independent work items, reductions
/// always run in a fixed order.
enum class Execution { serial, parallel };

} // namespace vsb
