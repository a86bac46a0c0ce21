#pragma once

namespace hermgeo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hermgeo
