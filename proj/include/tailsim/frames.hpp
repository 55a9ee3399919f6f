#pragma once

// Frame and unit conventions.
//
// Body frame (multi-rotor mode): x is normal to the main-wing plane, y runs
// along the wing, z points to the tail. Rotor thrust acts along body -z,
// toward the nose. Roll, pitch and yaw are rotations about body x, y, z.
//
// World frame is East-North-Up; gravity is -9.81 m/s^2 along world z.
// Attitude quaternions rotate body vectors into the world frame.
//
// Reported Euler angles are taken relative to the upright hover pose
// (body z pointing straight down): R = H * Rz(-yaw) * Ry(pitch) * Rx(roll)
// with H a half turn about world x. With this split, `yaw` is the ENU heading
// of the body x axis, which is what trajectory references command.

#include <Eigen/Geometry>

#include <numbers>

namespace tailsim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

inline constexpr double kGravity = 9.81;
inline constexpr double kPi = std::numbers::pi;

/// Thrust direction in body coordinates.
inline const Vec3 kThrustAxisBody{0.0, 0.0, -1.0};

struct EulerAngles {
    double roll = 0.0;
    double pitch = 0.0;
    double yaw = 0.0;
};

/// Half turn about world x: body frame of the level hover pose at zero heading.
Quat hover_reference();

/// Upright hover attitude with body x pointing along ENU heading `yaw`.
Quat hover_attitude(double yaw);

Quat quat_from_euler(const EulerAngles& e);
EulerAngles euler_from_quat(const Quat& q);

/// Wraps an angle to (-pi, pi].
double wrap_pi(double angle);

/// Wraps an angle to [0, 2 pi).
double wrap_two_pi(double angle);

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace tailsim
