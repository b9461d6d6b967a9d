#pragma once

#include "thermoexact/tensor4.hpp"

#include <cstdint>
#include <random>

namespace te {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Deterministic sampler. Doubles are built from raw 64-bit draws so that
// sequences are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uni(double a = -1.0, double b = 1.0) { return a + (b - a) * unit(); }
    cplx cuni() { return {uni(), uni()}; }
    std::uint64_t raw() { return eng_(); }

    Mat2 mat2() { return (Mat2() << uni(), uni(), uni(), uni()).finished(); }
    Mat2 spd2(double floor = 0.3) {
        const Mat2 a = mat2();
        return a * a.transpose() + floor * Mat2::Identity();
    }
    Mat4 mat4() {
        Mat4 m;
        for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = uni();
        return m;
    }
    Mat4 spd4(double floor = 0.3) {
        const Mat4 a = mat4();
        return a * a.transpose() + floor * Mat4::Identity();
    }
    CMat2 cmat2() { return (CMat2() << cuni(), cuni(), cuni(), cuni()).finished(); }
    CMat2 herm() {
        const CMat2 a = cmat2();
        return 0.5 * (a + a.adjoint());
    }
    CMat2 csym() {
        const CMat2 a = cmat2();
        return 0.5 * (a + a.transpose());
    }
    Vec2 unit_vec() {
        const double t = uni(0.0, 6.283185307179586);
        return {std::cos(t), std::sin(t)};
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace te
