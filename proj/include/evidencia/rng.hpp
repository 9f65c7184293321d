#pragma once

#include <array>
#include <cstdint>

namespace evidencia {

/// Philox4x32-10 counter-based generator block function.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

/// Two 32-bit words -> a 53-bit uniform in (0, 1]; never 0, so safe under log.
double uniform53(std::uint32_t hi, std::uint32_t lo);

/// Role index selecting an independent substream within one replicate.
enum class StreamRole : std::uint32_t { Phi = 0, Epsilon = 1, Aux = 2 };

/// Deterministic standard normal draw: one Philox block keyed by seed with
/// counter (replicate, role, index, 0) feeds a cosine-branch Box-Muller.
/// Order-independent: any (replicate, role, index) can be evaluated anywhere.
double standard_normal(std::uint64_t seed, std::uint32_t replicate, StreamRole role,
                       std::uint32_t index);

} // namespace evidencia
