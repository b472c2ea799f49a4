#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mbc/bitstream.hpp"

namespace mbc {

// On-disk wrapper for an encoded grammar.
//
//   offset  size  field
//   0       4     magic "MBLK"
//   4       1     version (1)
//   5       2     alphabet size m, big-endian
//   7       8     payload length in bits, big-endian
//   15      ...   payload, MSB-first, last byte zero-padded
//   ...     ...   optional alphabet table: byte value of symbol 1, 2, ...
//
// The alphabet table takes whatever bytes follow the payload (at most m).
// When it is absent, symbol s stands for byte s - 1.
struct Container {
    std::uint16_t alphabet_size = 0;
    BitString payload;
    std::vector<std::uint8_t> alphabet;

    friend bool operator==(const Container&, const Container&) = default;
};

inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kContainerHeaderSize = 15;

std::vector<std::uint8_t> write_container(const Container& c);
Container read_container(std::span<const std::uint8_t> bytes);

}  // namespace mbc
