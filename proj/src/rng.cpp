#include "ranksel/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "ranksel/math_util.hpp"

namespace ranksel {

namespace {

// splitmix64 finalizer (Stafford mix 13).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t n0 = hi1 ^ c[1] ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c[3] ^ k1;
    const std::uint32_t n3 = lo0;
    c[0] = n0; c[1] = n1; c[2] = n2; c[3] = n3;
}

}  // namespace

std::uint64_t derive_stream_id(StreamPurpose purpose, std::uint64_t feature,
                               std::uint64_t fold) {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(purpose));
    h = mix64(h ^ feature);
    h = mix64(h ^ fold);
    return h;
}

StreamKey make_key(std::uint64_t seed, StreamPurpose purpose,
                   std::uint64_t feature, std::uint64_t fold) {
    return StreamKey{seed, derive_stream_id(purpose, feature, fold)};
}

RandomStream::RandomStream(StreamKey key) : key_(key) {
    const std::uint64_t k = mix64(key.seed);
    k0_ = static_cast<std::uint32_t>(k);
    k1_ = static_cast<std::uint32_t>(k >> 32);
    sid_lo_ = static_cast<std::uint32_t>(key.stream_id);
    sid_hi_ = static_cast<std::uint32_t>(key.stream_id >> 32);
}

void RandomStream::refill() {
    std::uint32_t c[4] = {
        static_cast<std::uint32_t>(counter_),
        static_cast<std::uint32_t>(counter_ >> 32),
        sid_lo_,
        sid_hi_,
    };
    std::uint32_t k0 = k0_, k1 = k1_;
    for (int round = 0; round < 10; ++round) {
        philox_round(c, k0, k1);
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    buf_[0] = c[0]; buf_[1] = c[1]; buf_[2] = c[2]; buf_[3] = c[3];
    buf_pos_ = 0;
    ++counter_;
}

std::uint32_t RandomStream::next_u32() {
    if (buf_pos_ >= 4) refill();
    return buf_[buf_pos_++];
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double RandomStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform_int(std::uint64_t bound) {
    if (bound == 0) throw std::domain_error("uniform_int: bound must be >= 1");
    if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
    // Rejection sampling: discard draws below 2^64 mod bound.
    const std::uint64_t threshold = (-bound) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

double RandomStream::next_normal() {
    const double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    return inverse_normal_cdf(u);
}

void RandomStream::jump_to_block(std::uint64_t block) {
    counter_ = block;
    buf_pos_ = 4;
}

std::vector<std::int32_t> uniform_subset(RandomStream& stream,
                                         std::int64_t n, std::int64_t m) {
    if (m < 1 || m > n) throw std::domain_error("uniform_subset: need 1 <= m <= n");
    std::unordered_set<std::int64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2);
    for (std::int64_t j = n - m; j < n; ++j) {
        const std::int64_t t =
            static_cast<std::int64_t>(stream.uniform_int(static_cast<std::uint64_t>(j) + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::int32_t> out;
    out.reserve(static_cast<std::size_t>(m));
    for (std::int64_t v : chosen) out.push_back(static_cast<std::int32_t>(v));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ranksel
