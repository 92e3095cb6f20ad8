#pragma once

#include <cstdint>
#include <random>

#include "billiards/geometry.hpp"
#include "billiards/rational.hpp"

namespace test_support {

using billiards::Rational;

inline Rational random_rational(std::mt19937_64& rng, std::int64_t max_num = 60, std::int64_t max_den = 24) {
    std::uniform_int_distribution<std::int64_t> num(-max_num, max_num);
    std::uniform_int_distribution<std::int64_t> den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline billiards::ScaledPoint random_point(std::mt19937_64& rng) {
    return {random_rational(rng), random_rational(rng)};
}

inline billiards::InclineClass random_class(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, billiards::kAllInclines.size() - 1);
    return billiards::kAllInclines[pick(rng)];
}

// True-metric inner product in scaled coordinates.
inline Rational inner(const billiards::ScaledDirection& u, const billiards::ScaledDirection& v) {
    return u.dx * v.dx + 3 * u.dy * v.dy;
}

inline billiards::ScaledDirection along(billiards::InclineClass c) {
    const auto slope = billiards::scaled_slope(c);
    return slope ? billiards::ScaledDirection{1, *slope} : billiards::ScaledDirection{0, 1};
}

}  // namespace test_support
