#pragma once

namespace evidencia {

inline constexpr const char* kVersion = "0.1.0";

} // namespace evidencia
