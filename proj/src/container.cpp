#include "mbc/container.hpp"

#include <algorithm>
#include <array>

#include "mbc/errors.hpp"

namespace mbc {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'M', 'B', 'L', 'K'};

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
    for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(std::span<const std::uint8_t> in, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | in[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace

std::vector<std::uint8_t> write_container(const Container& c) {
    if (c.alphabet.size() > c.alphabet_size) {
        throw PreconditionError("container: alphabet table longer than alphabet size");
    }
    std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
    out.reserve(kContainerHeaderSize + c.payload.bytes().size() + c.alphabet.size());
    out.push_back(kContainerVersion);
    put_be(out, c.alphabet_size, 2);
    put_be(out, c.payload.size(), 8);
    out.insert(out.end(), c.payload.bytes().begin(), c.payload.bytes().end());
    out.insert(out.end(), c.alphabet.begin(), c.alphabet.end());
    return out;
}

Container read_container(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kContainerHeaderSize) throw TruncationError("container: short header");
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw CorruptionError("container: bad magic");
    }
    if (bytes[4] != kContainerVersion) throw CorruptionError("container: unsupported version");

    Container c;
    c.alphabet_size = static_cast<std::uint16_t>(get_be(bytes.subspan(5), 2));
    const std::uint64_t bit_length = get_be(bytes.subspan(7), 8);
    const auto body = bytes.subspan(kContainerHeaderSize);
    if (bit_length > std::uint64_t{body.size()} * 8) throw TruncationError("container: short payload");

    const auto payload_bytes = static_cast<std::size_t>((bit_length + 7) / 8);
    const auto trailer = body.subspan(payload_bytes);
    if (trailer.size() > c.alphabet_size) {
        throw CorruptionError("container: alphabet table longer than alphabet size");
    }
    try {
        c.payload = BitString({body.begin(), body.begin() + static_cast<std::ptrdiff_t>(payload_bytes)},
                              static_cast<std::size_t>(bit_length));
    } catch (const PreconditionError&) {
        throw CorruptionError("container: nonzero payload padding");
    }
    c.alphabet.assign(trailer.begin(), trailer.end());
    return c;
}

}  // namespace mbc
