#include "mbc/psi_code.hpp"

#include <bit>
#include <string>

#include "mbc/errors.hpp"

namespace mbc {

namespace {

unsigned floor_log2(std::uint64_t x) noexcept { return std::bit_width(x) - 1; }

void check_domain(ExtendedNatural n) {
    if (n < -1) throw DomainError("psi: argument " + std::to_string(n) + " < -1");
}

}  // namespace

PsiCode::PsiCode(std::uint32_t alphabet_size) : m_(alphabet_size) {
    if (alphabet_size < 2) {
        throw DomainError("PsiCode: alphabet size must be at least 2");
    }
    // ceil(log2(m + 2)) == bit_width(m + 1) for m + 2 >= 2.
    c1_ = static_cast<unsigned>(std::bit_width(std::uint64_t{m_} + 1)) + 1;
}

unsigned PsiCode::rank_length(std::uint64_t j) noexcept {
    const unsigned lg = floor_log2(j);
    return lg + 2 * floor_log2(lg + 1) + 3;
}

unsigned PsiCode::length(ExtendedNatural n) const {
    check_domain(n);
    if (n <= static_cast<ExtendedNatural>(m_)) return c1_;
    return rank_length(static_cast<std::uint64_t>(n) - m_);
}

void PsiCode::encode(ExtendedNatural n, BitString& out) const {
    check_domain(n);
    if (n <= static_cast<ExtendedNatural>(m_)) {
        out.push_back(false);
        out.append_bits(static_cast<std::uint64_t>(n + 1), c1_ - 1);
        return;
    }
    const std::uint64_t j = static_cast<std::uint64_t>(n) - m_;
    const unsigned len = floor_log2(j) + 1;
    const unsigned len_bits = floor_log2(len) + 1;
    out.append_bits(0b10, 2);
    out.append_bits(0, len_bits - 1);
    out.append_bits(len, len_bits);
    out.append_bits(j, len - 1);
}

BitString PsiCode::encode(ExtendedNatural n) const {
    BitString out;
    encode(n, out);
    return out;
}

ExtendedNatural PsiCode::decode(BitReader& in) const {
    if (!in.read_bit()) {
        const std::uint64_t v = in.read_bits(c1_ - 1);
        if (v > std::uint64_t{m_} + 1) {
            throw CorruptionError("psi: fixed-length codeword " + std::to_string(v) +
                                  " exceeds alphabet range");
        }
        return static_cast<ExtendedNatural>(v) - 1;
    }
    if (in.read_bit()) throw CorruptionError("psi: unused codeword prefix '11'");

    unsigned zeros = 0;
    while (!in.read_bit()) {
        if (++zeros > 5) throw CorruptionError("psi: rank codeword too long");
    }
    const std::uint64_t len = (std::uint64_t{1} << zeros) | in.read_bits(zeros);
    if (len > 62) throw CorruptionError("psi: rank codeword too long");
    const std::uint64_t j =
        (std::uint64_t{1} << (len - 1)) | in.read_bits(static_cast<unsigned>(len - 1));
    return static_cast<ExtendedNatural>(j + m_);
}

}  // namespace mbc
