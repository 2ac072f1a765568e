#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maes {

using Bytes = std::vector<std::uint8_t>;

std::string hex_encode(std::span<const std::uint8_t> data);
Bytes hex_decode(std::string_view hex); // throws FormatError

std::string base64_encode(std::span<const std::uint8_t> data);
Bytes base64_decode(std::string_view text); // throws FormatError

Bytes load_file(const std::string& path);                      // throws IoError
void save_file(const std::string& path, std::span<const std::uint8_t> data);

} // namespace maes
