#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mbc {

// Bit sequence packed MSB-first into bytes. The exact bit length is kept
// separately; padding bits of the last byte are always zero, so two
// BitStrings compare equal iff they hold the same bits.
class BitString {
public:
    BitString() = default;

    // Takes ownership of packed bytes. Throws PreconditionError if the byte
    // count does not match the bit length or a padding bit is set.
    BitString(std::vector<std::uint8_t> bytes, std::size_t bit_length);

    static BitString from_string(std::string_view zeros_and_ones);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool operator[](std::size_t i) const noexcept {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
    }

    void push_back(bool bit);
    // Appends the low `width` bits of `value`, most significant first.
    void append_bits(std::uint64_t value, unsigned width);
    void append(const BitString& other);
    void reserve_bits(std::size_t n) { bytes_.reserve((n + 7) / 8); }

    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
    std::string to_string() const;

    bool is_prefix_of(const BitString& other) const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t size_ = 0;
};

// Single-owner read cursor over a BitString.
class BitReader {
public:
    explicit BitReader(const BitString& bits, std::size_t position = 0)
        : bits_(&bits), pos_(position) {}

    bool read_bit();
    std::uint64_t read_bits(unsigned width);

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return bits_->size() - pos_; }
    bool at_end() const noexcept { return pos_ >= bits_->size(); }

private:
    const BitString* bits_;
    std::size_t pos_;
};

}  // namespace mbc
