#include "fluctoptics/units.hpp"

#include <cmath>
#include <sstream>

namespace fluctoptics {

std::string ConfigError::join(const std::vector<std::string>& issues) {
    std::ostringstream os;
    os << issues.size() << " configuration issue(s)";
    for (const auto& s : issues) os << "\n  " << s;
    return os.str();
}

}  // namespace fluctoptics

namespace fluctoptics::units {

std::string to_string(Unit u) {
    switch (u.kind) {
        case Unit::Kind::dimensionless: return "1";
        case Unit::Kind::micron_power: {
            std::ostringstream os;
            os << "um^" << u.power;
            return os.str();
        }
        case Unit::Kind::si_chi3: return "m^2/V^2";
        case Unit::Kind::si_chi2: return "m/V";
        case Unit::Kind::si_field: return "V/m";
        case Unit::Kind::kelvin: return "K";
    }
    return "?";
}

namespace {

[[noreturn]] void incompatible(const char* op, Unit a, Unit b) {
    throw UnitError(std::string("incompatible units for ") + op + ": " +
                    to_string(a) + " vs " + to_string(b));
}

// micron_power with dimensionless treated as um^0; anything else rejected.
int micron_exponent(Unit u, const char* op, Unit other) {
    if (u.kind == Unit::Kind::dimensionless) return 0;
    if (u.kind == Unit::Kind::micron_power) return u.power;
    incompatible(op, u, other);
}

Unit micron_unit(int n) {
    return n == 0 ? Unit::dimensionless() : Unit::microns(n);
}

}  // namespace

Quantity Quantity::operator+(const Quantity& o) const {
    if (unit != o.unit) incompatible("+", unit, o.unit);
    return {value + o.value, unit};
}

Quantity Quantity::operator-(const Quantity& o) const {
    if (unit != o.unit) incompatible("-", unit, o.unit);
    return {value - o.value, unit};
}

Quantity Quantity::operator*(const Quantity& o) const {
    int n = micron_exponent(unit, "*", o.unit) + micron_exponent(o.unit, "*", unit);
    return {value * o.value, micron_unit(n)};
}

Quantity Quantity::operator/(const Quantity& o) const {
    int n = micron_exponent(unit, "/", o.unit) - micron_exponent(o.unit, "/", unit);
    return {value / o.value, micron_unit(n)};
}

double Quantity::value_in(Unit expected) const {
    if (unit != expected) {
        throw UnitError("expected quantity in " + to_string(expected) +
                        ", got " + to_string(unit));
    }
    return value;
}

double ConversionConstants::chi3_si_to_natural() const {
    return 1e24 / (volt_in_inverse_meters * volt_in_inverse_meters);
}

double ConversionConstants::chi2_si_to_natural() const {
    return 1e12 / volt_in_inverse_meters;
}

double ConversionConstants::field_si_to_natural() const {
    return volt_in_inverse_meters * 1e-12;
}

double ConversionConstants::kelvin_to_inverse_micron() const {
    return k_boltzmann_si / (hbar_si * c_si) * 1e-6;
}

bool ConversionConstants::self_consistent(double rel_tol) const {
    const double lhs = volt_in_inverse_meters * volt_in_inverse_meters;
    const double rhs = epsilon0_si / (hbar_si * c_si);
    return std::abs(lhs - rhs) <= rel_tol * rhs;
}

Quantity convert_chi3_si_to_natural(const Quantity& chi_si,
                                    const ConversionConstants& cc) {
    return {chi_si.value_in(Unit::si_chi3()) * cc.chi3_si_to_natural(),
            Unit::microns(4)};
}

Quantity convert_chi3_natural_to_si(const Quantity& chi_nat,
                                    const ConversionConstants& cc) {
    return {chi_nat.value_in(Unit::microns(4)) / cc.chi3_si_to_natural(),
            Unit::si_chi3()};
}

Quantity convert_field_si_to_natural(const Quantity& e_si,
                                     const ConversionConstants& cc) {
    return {e_si.value_in(Unit::si_field()) * cc.field_si_to_natural(),
            Unit::microns(-2)};
}

Quantity convert_field_natural_to_si(const Quantity& e_nat,
                                     const ConversionConstants& cc) {
    return {e_nat.value_in(Unit::microns(-2)) / cc.field_si_to_natural(),
            Unit::si_field()};
}

Quantity kelvin_to_natural(const Quantity& t_kelvin,
                           const ConversionConstants& cc) {
    return {t_kelvin.value_in(Unit::kelvin()) * cc.kelvin_to_inverse_micron(),
            Unit::microns(-1)};
}

Quantity natural_to_kelvin(const Quantity& t_natural,
                           const ConversionConstants& cc) {
    return {t_natural.value_in(Unit::microns(-1)) / cc.kelvin_to_inverse_micron(),
            Unit::kelvin()};
}

double db_to_squeeze_parameter(double db) {
    if (db < 0.0) throw DomainError("noise reduction in dB must be >= 0");
    return db * std::log(10.0) / 20.0;
}

double squeeze_parameter_to_db(double q) {
    if (q < 0.0) throw DomainError("squeeze parameter must be >= 0");
    return q * 20.0 / std::log(10.0);
}

}  // namespace fluctoptics::units
