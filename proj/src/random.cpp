#include "rotor/random.hpp"

namespace rotor {

std::uint64_t Rng::below(std::uint64_t n)
{
    // Rejection sampling on the top of the range keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next();
    while (x >= limit)
        x = next();
    return x % n;
}

} // namespace rotor
