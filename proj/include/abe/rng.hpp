#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>

namespace abe {

// Randomness source. Callers own one per thread; nothing global.
class Rng {
public:
    virtual ~Rng() = default;
    virtual std::uint64_t next_u64() = 0;
};

// Deterministic stream from an explicit seed. Same seed, same stream.
class SeededRng : public Rng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}
    explicit SeededRng(std::span<const std::uint8_t> seed_bytes);

    std::uint64_t next_u64() override { return eng_(); }

    // Independent stream for a numbered subtask (e.g. one game trial).
    static SeededRng derive(std::span<const std::uint8_t> seed_bytes,
                            std::uint64_t index);

private:
    std::mt19937_64 eng_;
};

// Nondeterministic entropy for production paths.
class SystemRng : public Rng {
public:
    SystemRng();
    std::uint64_t next_u64() override { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace abe
