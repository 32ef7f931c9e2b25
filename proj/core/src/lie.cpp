#include "rfs/lie.hpp"

#include <cmath>
#include <stdexcept>

namespace rfs {

Eigen::Matrix4d Pose::matrix() const {
    Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
    T.topLeftCorner<3, 3>() = R;
    T.topRightCorner<3, 1>() = p;
    return T;
}

Mat3 skew(const Vec3 &w) {
    Mat3 W;
    W << 0, -w.z(), w.y(),
         w.z(), 0, -w.x(),
        -w.y(), w.x(), 0;
    return W;
}

Mat3 rotExp(const Vec3 &omega, double theta) {
    if (std::abs(omega.norm() - 1.0) > 1e-9)
        throw std::domain_error("rotExp: rotation axis must be a unit vector");
    const Mat3 W = skew(omega);
    return Mat3::Identity() + std::sin(theta) * W + (1.0 - std::cos(theta)) * W * W;
}

std::pair<Vec3, double> rotLog(const Mat3 &R) {
    // atan2(sin, cos) keeps theta accurate over the whole range; the axis
    // comes from the antisymmetric part except near pi where it degrades and
    // the largest-diagonal extraction from the symmetric part takes over.
    const Vec3 a(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
    const double s = 0.5 * a.norm();
    const double c = std::clamp(0.5 * (R.trace() - 1.0), -1.0, 1.0);
    const double theta = std::atan2(s, c);

    if (theta < 1e-12) return {Vec3::UnitX(), 0.0};

    if (M_PI - theta < 1e-4) {
        const Mat3 S = 0.5 * (R + R.transpose()); // = c I + (1-c) w w^T
        int k = 0;
        S.diagonal().maxCoeff(&k);
        const double denom = 1.0 - c;
        Vec3 w = Vec3::Zero();
        w[k] = std::sqrt(std::max(0.0, (S(k, k) - c) / denom));
        for (int j = 0; j < 3; ++j)
            if (j != k) w[j] = S(k, j) / (denom * w[k]);
        if (s > 1e-14) {
            if (a.dot(w) < 0.0) w = -w;
        } else {
            int m = 0;
            w.cwiseAbs().maxCoeff(&m);
            if (w[m] < 0.0) w = -w;
        }
        w.normalize();
        return {w, theta};
    }
    return {a / (2.0 * s), theta};
}

bool isRotation(const Mat3 &R, double tol) {
    const double ortho = (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff();
    return ortho <= tol && std::abs(R.determinant() - 1.0) <= tol;
}

ScrewAxis screwFromGeometry(const Vec3 &omega, const Vec3 &q, double pitch) {
    if (std::abs(omega.norm() - 1.0) > 1e-9)
        throw std::domain_error("screwFromGeometry: rotation axis must be a unit vector");
    return {omega, -omega.cross(q) + pitch * omega, pitch};
}

Pose poseExp(const ScrewAxis &xi, double theta) {
    if (!xi.rotational()) return {Mat3::Identity(), xi.v * theta};

    const Mat3 W = skew(xi.omega);
    const Mat3 W2 = W * W;
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const Mat3 R = Mat3::Identity() + st * W + (1.0 - ct) * W2;
    const Mat3 G = theta * Mat3::Identity() + (1.0 - ct) * W + (theta - st) * W2;
    return {R, G * xi.v};
}

Twist poseLog(const Pose &T) {
    auto [w, theta] = rotLog(T.R);
    if (theta < 1e-12) return {Vec3::Zero(), T.p};

    // theta * Ginv(theta) = I - (theta/2) [w] + c2 [w]^2 with
    // c2 = 1 - (theta/2) cot(theta/2); the series avoids the cancellation
    // in c2 for small theta.
    const Mat3 W = skew(w);
    double c2;
    if (theta < 1e-6) {
        const double t2 = theta * theta;
        c2 = t2 / 12.0 + t2 * t2 / 720.0;
    } else {
        c2 = 1.0 - 0.5 * theta * std::cos(0.5 * theta) / std::sin(0.5 * theta);
    }
    const Mat3 Vinv = Mat3::Identity() - 0.5 * theta * W + c2 * W * W;
    return {w * theta, Vinv * T.p};
}

Mat6 adjoint(const Pose &T) {
    Mat6 Ad = Mat6::Zero();
    Ad.topLeftCorner<3, 3>() = T.R;
    Ad.bottomRightCorner<3, 3>() = T.R;
    Ad.bottomLeftCorner<3, 3>() = skew(T.p) * T.R;
    return Ad;
}

Pose poeForward(std::span<const ScrewAxis> screws, std::span<const double> thetas, const Pose &home) {
    if (screws.size() != thetas.size())
        throw std::invalid_argument("poeForward: screw and angle counts differ");
    Pose T;
    for (size_t i = 0; i < screws.size(); ++i) T = T * poseExp(screws[i], thetas[i]);
    return T * home;
}

Eigen::MatrixXd spaceJacobian(std::span<const ScrewAxis> screws, std::span<const double> thetas) {
    if (screws.size() != thetas.size())
        throw std::invalid_argument("spaceJacobian: screw and angle counts differ");
    Eigen::MatrixXd J(6, static_cast<Eigen::Index>(screws.size()));
    Pose T;
    for (size_t i = 0; i < screws.size(); ++i) {
        J.col(static_cast<Eigen::Index>(i)) = adjoint(T) * screws[i].vector();
        T = T * poseExp(screws[i], thetas[i]);
    }
    return J;
}

} // namespace rfs
