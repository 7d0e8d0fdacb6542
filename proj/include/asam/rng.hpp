#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>

namespace asam {

/// One seeded generator per named consumer, so the number of draws made by
/// one consumer never shifts another consumer's sequence.
class RngStreams {
public:
    explicit RngStreams(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::mt19937_64& stream(const std::string& name);

    /// Uniform double in [0,1) built from the top 53 bits.
    double uniform01(const std::string& name);
    /// Uniform integer in [lo,hi] (inclusive) by rejection sampling.
    std::int64_t uniform_int(const std::string& name, std::int64_t lo, std::int64_t hi);
    /// Index drawn proportionally to non-negative weights.
    std::size_t weighted_index(const std::string& name, std::span<const double> weights);

private:
    std::uint64_t seed_;
    std::map<std::string, std::mt19937_64> streams_;
};

double uniform01(std::mt19937_64& gen);
std::int64_t uniform_int(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi);
std::size_t weighted_index(std::mt19937_64& gen, std::span<const double> weights);

} // namespace asam
