#include "asam/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace asam {

namespace {

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

std::mt19937_64& RngStreams::stream(const std::string& name)
{
    auto it = streams_.find(name);
    if (it == streams_.end()) {
        const std::uint64_t h = fnv1a(name);
        std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                          static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
        it = streams_.emplace(name, std::mt19937_64(seq)).first;
    }
    return it->second;
}

double RngStreams::uniform01(const std::string& name)
{
    return asam::uniform01(stream(name));
}

std::int64_t RngStreams::uniform_int(const std::string& name, std::int64_t lo, std::int64_t hi)
{
    return asam::uniform_int(stream(name), lo, hi);
}

std::size_t RngStreams::weighted_index(const std::string& name, std::span<const double> weights)
{
    return asam::weighted_index(stream(name), weights);
}

double uniform01(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::int64_t uniform_int(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi)
{
    if (hi < lo)
        throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0)
        return static_cast<std::int64_t>(gen());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

std::size_t weighted_index(std::mt19937_64& gen, std::span<const double> weights)
{
    if (weights.empty())
        throw std::invalid_argument("weighted_index: no weights");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0))
            throw std::invalid_argument("weighted_index: negative weight");
        total += w;
    }
    if (!(total > 0.0))
        throw std::invalid_argument("weighted_index: weights sum to zero");
    const double r = uniform01(gen) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (r < acc)
            return i;
    }
    // r landed on the rounding edge; return the last positive weight
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0.0)
            return i;
    return weights.size() - 1;
}

} // namespace asam
