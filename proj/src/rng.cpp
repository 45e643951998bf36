#include "zlrr/rng.hpp"

#include "zlrr/error.hpp"

namespace zlrr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream_id))) {}

Int RandomStream::uniform_below(const Int& n) {
    if (n <= 0) fail(ErrorCode::EmptyInterval, "uniform_below needs a positive bound");
    if (n == 1) return 0;
    Int top = n - 1;
    std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    std::size_t top_bits = bits - (words - 1) * 64;
    std::uint64_t top_mask = top_bits == 64 ? ~0ull : ((1ull << top_bits) - 1);
    while (true) {
        Int candidate = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t word = next_u64();
            if (w == 0) word &= top_mask;
            candidate <<= 64;
            candidate += static_cast<unsigned long>(word);
        }
        if (candidate < n) return candidate;
    }
}

std::uint64_t RandomStream::uniform_below_u64(std::uint64_t n) {
    if (n == 0) fail(ErrorCode::EmptyInterval, "uniform_below needs a positive bound");
    if (n == 1) return 0;
    std::uint64_t top = n - 1;
    unsigned bits = 64u - static_cast<unsigned>(__builtin_clzll(top));
    std::uint64_t mask = bits == 64 ? ~0ull : ((1ull << bits) - 1);
    while (true) {
        std::uint64_t candidate = next_u64() & mask;
        if (candidate < n) return candidate;
    }
}

}  // namespace zlrr
