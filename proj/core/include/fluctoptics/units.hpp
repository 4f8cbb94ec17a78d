#pragma once

#include <string>

#include "fluctoptics/errors.hpp"

// Unit handling for the natural-unit system used throughout the library:
// hbar = c = 1 with Lorentz-Heaviside electromagnetic conventions, all
// dimensionful quantities expressed as powers of microns. Electric fields
// carry um^-2, <:E^2:> carries um^-4, chi3 carries um^4, temperatures map
// to inverse microns.

namespace fluctoptics::units {

struct Unit {
    enum class Kind {
        dimensionless,
        micron_power,  // um^power
        si_chi3,       // m^2/V^2
        si_chi2,       // m/V
        si_field,      // V/m
        kelvin,
    };

    Kind kind = Kind::dimensionless;
    int power = 0;  // micron exponent; meaningful only for micron_power

    static constexpr Unit dimensionless() { return {Kind::dimensionless, 0}; }
    static constexpr Unit microns(int n) { return {Kind::micron_power, n}; }
    static constexpr Unit si_chi3() { return {Kind::si_chi3, 0}; }
    static constexpr Unit si_chi2() { return {Kind::si_chi2, 0}; }
    static constexpr Unit si_field() { return {Kind::si_field, 0}; }
    static constexpr Unit kelvin() { return {Kind::kelvin, 0}; }

    friend constexpr bool operator==(Unit a, Unit b) {
        if (a.kind != b.kind) return false;
        if (a.kind == Kind::micron_power) return a.power == b.power;
        return true;
    }
    friend constexpr bool operator!=(Unit a, Unit b) { return !(a == b); }
};

std::string to_string(Unit u);

// Value plus unit tag. Addition and subtraction require identical tags;
// multiplication and division are defined only within the micron-power
// algebra (dimensionless acts as um^0). Anything else throws UnitError:
// general-purpose unit algebra is out of scope on purpose.
struct Quantity {
    double value = 0.0;
    Unit unit = Unit::dimensionless();

    Quantity() = default;
    Quantity(double v, Unit u) : value(v), unit(u) {}

    Quantity operator+(const Quantity& o) const;
    Quantity operator-(const Quantity& o) const;
    Quantity operator*(const Quantity& o) const;
    Quantity operator/(const Quantity& o) const;
    Quantity operator*(double s) const { return {value * s, unit}; }
    Quantity operator/(double s) const { return {value / s, unit}; }
    friend Quantity operator*(double s, const Quantity& q) { return q * s; }

    // Value extraction that asserts the expected tag; the preferred way to
    // get a raw double out of a public result.
    double value_in(Unit expected) const;
};

// Conversion anchors between SI and the natural system. The one physical
// input is the value of 1 volt in inverse meters,
//   volt = sqrt(eps0 / (hbar c)) = 1.6735e7 m^-1,
// stored to 5 significant figures; everything else is exact SI scaling.
struct ConversionConstants {
    double volt_in_inverse_meters = 1.6735e7;

    // chi3 [m^2/V^2] -> [um^4]: 1e24 / volt^2.
    double chi3_si_to_natural() const;
    // chi2 [m/V] -> [um^2]: 1e12 / volt.
    double chi2_si_to_natural() const;
    // E [V/m] -> [um^-2]: volt * 1e-12.
    double field_si_to_natural() const;
    // T [K] -> [um^-1]: k_B / (hbar c) * 1e-6.
    double kelvin_to_inverse_micron() const;

    // Defining relation check: volt^2 must equal eps0/(hbar c) in SI within
    // the given relative tolerance (the stored constant is rounded).
    bool self_consistent(double rel_tol = 5e-3) const;
};

// CODATA 2018 SI reference values used by the conversions.
inline constexpr double k_boltzmann_si = 1.380649e-23;   // J/K, exact
inline constexpr double hbar_si = 1.054571817e-34;       // J s
inline constexpr double c_si = 2.99792458e8;             // m/s, exact
inline constexpr double epsilon0_si = 8.8541878128e-12;  // F/m

// chi3 given in m^2/V^2 -> um^4. Input tag must be si_chi3.
Quantity convert_chi3_si_to_natural(const Quantity& chi_si,
                                    const ConversionConstants& cc = {});
// Inverse of the above. Input tag must be um^4.
Quantity convert_chi3_natural_to_si(const Quantity& chi_nat,
                                    const ConversionConstants& cc = {});

// E given in V/m -> um^-2, and back.
Quantity convert_field_si_to_natural(const Quantity& e_si,
                                     const ConversionConstants& cc = {});
Quantity convert_field_natural_to_si(const Quantity& e_nat,
                                     const ConversionConstants& cc = {});

// Temperature in kelvin -> um^-1 (k_B T / hbar c), and back.
Quantity kelvin_to_natural(const Quantity& t_kelvin,
                           const ConversionConstants& cc = {});
Quantity natural_to_kelvin(const Quantity& t_natural,
                           const ConversionConstants& cc = {});

// Squeeze parameter from a decibel noise-reduction figure: q = dB ln(10)/20.
// 10 dB -> 1.1513. (Scenario presets may pin q directly instead.)
double db_to_squeeze_parameter(double db);
double squeeze_parameter_to_db(double q);

}  // namespace fluctoptics::units
