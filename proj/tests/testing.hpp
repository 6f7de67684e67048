#pragma once

#include "moravak/algebra.hpp"

#include <cstdint>
#include <cstdlib>
#include <random>

namespace moravak::testing {

/// Seed for randomized property tests; MORAVAK_SEED overrides the default.
inline std::uint64_t seed()
{
    if (const char* s = std::getenv("MORAVAK_SEED"))
        return std::strtoull(s, nullptr, 10);
    return 20240611u;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0)
{
    return std::mt19937_64(seed() ^ (salt * 0x9E3779B97F4A7C15ull));
}

/// Uniformly random element of degree d in the quotient basis.
inline Element random_element(const Algebra& a, int d, std::mt19937_64& gen)
{
    auto dim = a.dim(d);
    BitVector v(dim);
    for (std::size_t i = 0; i < dim; ++i)
        v.set(i, gen() & 1u);
    return a.from_coordinates(d, v);
}

/// Random homogeneous element of a random degree in [lo, hi].
inline Element random_homogeneous(const Algebra& a, int lo, int hi, std::mt19937_64& gen)
{
    std::uniform_int_distribution<int> deg(lo, hi);
    return random_element(a, deg(gen), gen);
}

inline std::string fixture(const std::string& name)
{
    const char* dir = std::getenv("MORAVAK_FIXTURES");
    return std::string(dir ? dir : "fixtures") + "/" + name;
}

}  // namespace moravak::testing
