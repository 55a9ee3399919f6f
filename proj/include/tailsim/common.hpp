#pragma once

#include "tailsim/frames.hpp"

#include <string>
#include <string_view>

namespace tailsim {

/// Actuation scheme. SEA: swashplateless rotors carry pitch, elevons carry yaw.
/// CEA: elevons carry both pitch and yaw.
enum class Variant { Sea, Cea };

/// Rotor model resolution: cycle-averaged or resolved within each revolution.
enum class Fidelity { Averaged, Cyclic };

/// Body-frame collective thrust (along -z) plus torque.
struct Wrench {
    double f_t = 0.0;        // N
    Vec3 tau = Vec3::Zero(); // N m
};

std::string_view to_string(Variant v);
std::string_view to_string(Fidelity f);
Variant parse_variant(std::string_view s);
Fidelity parse_fidelity(std::string_view s);

}  // namespace tailsim
