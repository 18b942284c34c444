#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "ulam/cvec.hpp"

namespace ulam {

// Seeded random stream. Uniform doubles are derived from the raw engine
// output so the values do not depend on the standard library's
// distribution implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0,1)
    double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    Cplx unit_complex() {
        const double theta = 2.0 * std::numbers::pi * u01();
        return Cplx(std::cos(theta), std::sin(theta));
    }

    // uniform over the square [-r,r] x [-r,r] in the complex plane
    Cplx box_complex(double r) { return Cplx(uniform(-r, r), uniform(-r, r)); }

    CVec box_tuple(int n, double r) {
        CVec x(static_cast<std::size_t>(n));
        for (auto& z : x) z = box_complex(r);
        return x;
    }

    // uniform over the disc of radius r
    Cplx disc_complex(double r) {
        const double rad = r * std::sqrt(u01());
        const double theta = 2.0 * std::numbers::pi * u01();
        return Cplx(rad * std::cos(theta), rad * std::sin(theta));
    }

    CVec disc_tuple(int n, double r) {
        CVec x(static_cast<std::size_t>(n));
        for (auto& z : x) z = disc_complex(r);
        return x;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ulam
