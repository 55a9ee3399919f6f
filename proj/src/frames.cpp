#include "tailsim/frames.hpp"

#include <algorithm>
#include <cmath>

namespace tailsim {

Quat hover_reference() {
    return Quat(Eigen::AngleAxisd(kPi, Vec3::UnitX()));
}

Quat hover_attitude(double yaw) {
    return quat_from_euler({0.0, 0.0, yaw});
}

Quat quat_from_euler(const EulerAngles& e) {
    const Quat q = hover_reference() * Eigen::AngleAxisd(-e.yaw, Vec3::UnitZ()) *
                   Eigen::AngleAxisd(e.pitch, Vec3::UnitY()) *
                   Eigen::AngleAxisd(e.roll, Vec3::UnitX());
    return q.normalized();
}

EulerAngles euler_from_quat(const Quat& q) {
    const Mat3 r = (hover_reference().conjugate() * q).toRotationMatrix();
    EulerAngles e;
    e.pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
    e.roll = std::atan2(r(2, 1), r(2, 2));
    e.yaw = wrap_pi(-std::atan2(r(1, 0), r(0, 0)));
    return e;
}

double wrap_pi(double angle) {
    double a = std::remainder(angle, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

double wrap_two_pi(double angle) {
    double a = std::fmod(angle, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi) a = 0.0;
    return a;
}

}  // namespace tailsim
