#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "abe/bytes.hpp"

namespace abe {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);

// sha256(label || data); labels act as domain separators.
Digest sha256_labeled(std::string_view label, std::span<const std::uint8_t> data);

}  // namespace abe
