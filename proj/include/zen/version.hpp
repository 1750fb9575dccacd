#pragma once

namespace zen {

/// Interface version stamped into every report; bump on wire-format changes.
inline constexpr const char* spec_version = "1.0.0";

} // namespace zen
