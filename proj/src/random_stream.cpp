#include "trapsim/random_stream.hpp"

#include <utility>

namespace trapsim {

std::uint64_t fnv1a64(const std::string& s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

RandomStream::RandomStream(std::uint64_t seed, std::string label)
    : seed_(seed), label_(std::move(label)) {
    const std::uint64_t h = fnv1a64(label_);
    k1_ = mix64(seed_ ^ mix64(h));
    k2_ = mix64((k1_ + 0x9E3779B97F4A7C15ULL) ^ h);
}

RandomStream RandomStream::child(const std::string& sub) const {
    return RandomStream(seed_, label_ + "/" + sub);
}

RandomStream RandomStream::child(std::uint64_t index) const {
    return child(std::to_string(index));
}

}  // namespace trapsim
