#pragma once

#include "loopfilt/exact.hpp"

#include <cstdint>
#include <random>

namespace lf {

// Deterministic sampler; reductions are done by hand so results do not depend
// on the standard library's distribution implementations.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    // Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(rng_() % span);
    }
    // Rational p/q with |p| <= bound and 1 <= q <= max_den.
    Rat rational(long bound, long max_den = 1) { return make_rat(uniform(-bound, bound), uniform(1, max_den)); }
    Scalar coeff(long bound) { return Scalar(uniform(-bound, bound)); }

private:
    std::mt19937_64 rng_;
};

}  // namespace lf
