#pragma once

#include <cstdint>
#include <string>

namespace trapsim {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(const std::string& s) noexcept;

// Counter-based stream keyed by (seed, label). Copies are independent cursors
// over the same sequence; child() derives a statistically independent stream.
class RandomStream {
public:
    RandomStream() : RandomStream(0, "root") {}
    RandomStream(std::uint64_t seed, std::string label);

    RandomStream child(const std::string& sub) const;
    RandomStream child(std::uint64_t index) const;

    std::uint64_t next_u64() noexcept { return draw(counter_++); }
    // Uniform on the open interval (0,1).
    double uniform() noexcept { return to_unit(next_u64()); }
    // Keyed draw that does not move the cursor.
    double uniform_at(std::uint64_t counter) const noexcept { return to_unit(draw(counter)); }

    std::uint64_t seed() const noexcept { return seed_; }
    const std::string& label() const noexcept { return label_; }
    std::uint64_t counter() const noexcept { return counter_; }
    void set_counter(std::uint64_t c) noexcept { counter_ = c; }

    static double to_unit(std::uint64_t u) noexcept {
        return (static_cast<double>(u >> 12) + 0.5) * 0x1.0p-52;
    }

private:
    std::uint64_t draw(std::uint64_t c) const noexcept {
        return mix64(mix64(k1_ + c * 0x9E3779B97F4A7C15ULL) ^ k2_);
    }

    std::uint64_t seed_;
    std::string label_;
    std::uint64_t k1_ = 0;
    std::uint64_t k2_ = 0;
    std::uint64_t counter_ = 0;
};

// Zigzag map of a signed site index onto a stream counter.
constexpr std::uint64_t zigzag(std::int64_t i) noexcept {
    return (static_cast<std::uint64_t>(i) << 1) ^ static_cast<std::uint64_t>(i >> 63);
}

}  // namespace trapsim
