#include "abe/rng.hpp"

#include "abe/bytes.hpp"
#include "abe/hash.hpp"

namespace abe {

namespace {

std::uint64_t seed_from_bytes(std::span<const std::uint8_t> seed_bytes) {
    Digest d = sha256(seed_bytes);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
    return v;
}

}  // namespace

SeededRng::SeededRng(std::span<const std::uint8_t> seed_bytes)
    : eng_(seed_from_bytes(seed_bytes)) {}

SeededRng SeededRng::derive(std::span<const std::uint8_t> seed_bytes,
                            std::uint64_t index) {
    Bytes buf(seed_bytes.begin(), seed_bytes.end());
    append_u64(buf, index);
    return SeededRng(seed_from_bytes(buf));
}

SystemRng::SystemRng() {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
    eng_.seed(seq);
}

}  // namespace abe
