#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace landsketch {

/// Standard alphabet with padding, no line breaks.
std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws Error(InvalidArgument) on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace landsketch
