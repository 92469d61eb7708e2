#pragma once

namespace qforms {

inline constexpr const char* kEngineVersion = "qforms-1.0.0";

}  // namespace qforms
