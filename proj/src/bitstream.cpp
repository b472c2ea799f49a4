#include "mbc/bitstream.hpp"

#include "mbc/errors.hpp"

namespace mbc {

BitString::BitString(std::vector<std::uint8_t> bytes, std::size_t bit_length)
    : bytes_(std::move(bytes)), size_(bit_length) {
    if (bytes_.size() != (bit_length + 7) / 8) {
        throw PreconditionError("BitString: byte count does not match bit length");
    }
    if (const unsigned used = bit_length & 7; used != 0) {
        const std::uint8_t padding = static_cast<std::uint8_t>(0xFFu >> used);
        if (bytes_.back() & padding) {
            throw PreconditionError("BitString: nonzero padding bits");
        }
    }
}

BitString BitString::from_string(std::string_view zeros_and_ones) {
    BitString out;
    for (char c : zeros_and_ones) {
        if (c == '0' || c == '1') {
            out.push_back(c == '1');
        } else if (c != ' ') {
            throw PreconditionError("BitString::from_string: expected '0', '1' or ' '");
        }
    }
    return out;
}

void BitString::push_back(bool bit) {
    if ((size_ & 7) == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (size_ & 7));
    ++size_;
}

void BitString::append_bits(std::uint64_t value, unsigned width) {
    while (width > 0) {
        const unsigned offset = size_ & 7;
        if (offset == 0) bytes_.push_back(0);
        const unsigned room = 8 - offset;
        const unsigned take = width < room ? width : room;
        const auto chunk = static_cast<unsigned>((value >> (width - take)) & ((1u << take) - 1));
        bytes_.back() |= static_cast<std::uint8_t>(chunk << (room - take));
        size_ += take;
        width -= take;
    }
}

void BitString::append(const BitString& other) {
    if ((size_ & 7) == 0) {
        bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
        size_ += other.size_;
        return;
    }
    std::size_t i = 0;
    for (; i + 8 <= other.size_; i += 8) append_bits(other.bytes_[i >> 3], 8);
    for (; i < other.size_; ++i) push_back(other[i]);
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) s.push_back((*this)[i] ? '1' : '0');
    return s;
}

bool BitString::is_prefix_of(const BitString& other) const {
    if (size_ > other.size_) return false;
    const std::size_t whole = size_ >> 3;
    for (std::size_t b = 0; b < whole; ++b) {
        if (bytes_[b] != other.bytes_[b]) return false;
    }
    if (const unsigned rest = size_ & 7; rest != 0) {
        const auto mask = static_cast<std::uint8_t>(0xFFu << (8 - rest));
        if ((bytes_[whole] & mask) != (other.bytes_[whole] & mask)) return false;
    }
    return true;
}

bool BitReader::read_bit() {
    if (pos_ >= bits_->size()) throw TruncationError("bitstream exhausted");
    return (*bits_)[pos_++];
}

std::uint64_t BitReader::read_bits(unsigned width) {
    if (width > remaining()) throw TruncationError("bitstream exhausted");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | ((*bits_)[pos_++] ? 1u : 0u);
    return v;
}

}  // namespace mbc
