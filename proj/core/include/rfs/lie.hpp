#pragma once

#include <Eigen/Dense>

#include <span>
#include <utility>

namespace rfs {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Rigid transform (R, p) acting on points as x -> R x + p.
struct Pose {
    Mat3 R = Mat3::Identity();
    Vec3 p = Vec3::Zero();

    Pose() = default;
    Pose(const Mat3 &R_, const Vec3 &p_) : R(R_), p(p_) {}

    Pose operator*(const Pose &other) const { return {R * other.R, R * other.p + p}; }
    Pose inverse() const { return {R.transpose(), -(R.transpose() * p)}; }
    Vec3 apply(const Vec3 &x) const { return R * x + p; }

    Eigen::Matrix4d matrix() const;
    static Pose Identity() { return {}; }
};

// Unit screw axis (omega; v) with v = -omega x q + h omega for a point q on
// the axis and pitch h. A pure translation has omega = 0 and unit v.
struct ScrewAxis {
    Vec3 omega = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    double pitch = 0.0;

    bool rotational() const { return omega.squaredNorm() > 0.25; }
    Vec6 vector() const {
        Vec6 xi;
        xi << omega, v;
        return xi;
    }
};

// Instantaneous rigid velocity (angular; linear) in a fixed frame.
struct Twist {
    Vec3 angular = Vec3::Zero();
    Vec3 linear = Vec3::Zero();

    Vec6 vector() const {
        Vec6 t;
        t << angular, linear;
        return t;
    }
    static Twist fromVector(const Vec6 &t) { return {t.head<3>(), t.tail<3>()}; }
};

// [w] with [w] x = w cross x.
Mat3 skew(const Vec3 &w);

// Rodrigues' formula. Throws std::domain_error unless ||omega|| = 1.
Mat3 rotExp(const Vec3 &omega, double theta);

// Inverse of rotExp. Returns (axis, theta) with theta in [0, pi]; the axis is
// (1,0,0) by convention when theta = 0.
std::pair<Vec3, double> rotLog(const Mat3 &R);

// Checks R^T R = I and det R = +1 within tol.
bool isRotation(const Mat3 &R, double tol = 1e-12);

ScrewAxis screwFromGeometry(const Vec3 &omega, const Vec3 &q, double pitch = 0.0);

// exp([xi] theta); handles both the rotational and the pure-translation case.
Pose poseExp(const ScrewAxis &xi, double theta);

// Matrix logarithm on SE(3). The motion magnitude is encoded as the norm of
// the angular part, or of the linear part when the rotation is the identity.
Twist poseLog(const Pose &T);

// 6x6 adjoint [[R, 0], [[p]R, R]] acting on (angular; linear) twists.
Mat6 adjoint(const Pose &T);

// e^{[xi_1] th_1} ... e^{[xi_n] th_n} M. Throws std::invalid_argument on
// length mismatch.
Pose poeForward(std::span<const ScrewAxis> screws, std::span<const double> thetas,
                const Pose &home = Pose::Identity());

// Space Jacobian: column i = Ad_{e^{[xi_1] th_1} ... e^{[xi_{i-1}] th_{i-1}}}(xi_i).
Eigen::MatrixXd spaceJacobian(std::span<const ScrewAxis> screws, std::span<const double> thetas);

} // namespace rfs
