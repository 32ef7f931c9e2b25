#pragma once

#include "rfs/lie.hpp"

#include <random>

namespace rfs::test {

inline Vec3 randomUnit(std::mt19937 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3 v;
    do {
        v = Vec3(n(rng), n(rng), n(rng));
    } while (v.norm() < 1e-6);
    return v.normalized();
}

inline Vec3 randomVec(std::mt19937 &rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng)};
}

inline Mat3 randomRotation(std::mt19937 &rng) {
    std::uniform_real_distribution<double> angle(0.0, M_PI - 1e-3);
    return rotExp(randomUnit(rng), angle(rng));
}

inline Pose randomPose(std::mt19937 &rng, double scale = 1.0) {
    return {randomRotation(rng), randomVec(rng, scale)};
}

inline ScrewAxis randomRevolute(std::mt19937 &rng, double scale = 1.0) {
    return screwFromGeometry(randomUnit(rng), randomVec(rng, scale), 0.0);
}

} // namespace rfs::test
