#pragma once

#include <optional>

#include "fluctoptics/units.hpp"

// Mean squared fields from ambient sources, for comparison against the
// squeezed-state values: blackbody radiation and the static vacuum
// distortion outside a reflecting plate.

namespace fluctoptics::ambient {

// Isotropic blackbody value, (pi^2/15) (k_B T / hbar c)^4 in um^-4.
// Scales exactly as T^4; about 1.09 um^-4 at 2600 K.
units::Quantity e2_thermal(const units::Quantity& temperature,
                           const units::ConversionConstants& cc = {});

enum class CasimirRegime { perfect_plate, plasma };

struct CasimirResult {
    units::Quantity e2_total;     // um^-4
    units::Quantity e2_per_axis;  // e2_total / 3, isotropic thirds
    units::Quantity b2_total;     // -e2_total
    CasimirRegime regime = CasimirRegime::perfect_plate;
    // Populated when z is within a factor 2 of lambda_p: the other regime's
    // total, so the hard switch is visible near the crossover.
    std::optional<double> e2_other_regime;
};

// Mean squared field at distance z (um) from a single plane mirror.
//   perfect plate: 3 / (16 pi^2 z^4)
//   plasma regime (z < lambda_p): sqrt(2) / (16 lambda_p z^3)
// lambda_p is the plasma wavelength of the mirror material (um); omit it
// for an ideal mirror. z must be positive.
CasimirResult e2_casimir(double z_um, std::optional<double> lambda_p_um = {});

}  // namespace fluctoptics::ambient
