#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fluctoptics/units.hpp"

// Nonlinear optical media: susceptibility tensors up to chi(3), probe
// refractive index under a strong x-polarized background field, and the
// Kerr birefringence coefficients that couple <:E^2:> to delta n.
//
// Geometry is fixed: background field along x, probe propagating along z,
// probe polarizations x and y.

namespace fluctoptics::media {

enum class Axis : int { x = 0, y = 1, z = 2 };

// Unit system a tensor's entries are stored in. SI: chi2 in m/V, chi3 in
// m^2/V^2. Natural: chi2 in um^2, chi3 in um^4. chi1 is dimensionless
// either way.
enum class ChiUnit { si, natural };

struct SusceptibilityTensors {
    std::array<double, 9> chi1{};    // chi1[i][j]
    std::array<double, 27> chi2{};   // chi2[i][j][k]
    std::array<double, 81> chi3{};   // chi3[i][j][k][l]
    ChiUnit chi2_unit = ChiUnit::natural;
    ChiUnit chi3_unit = ChiUnit::natural;

    double chi1_at(Axis i, Axis j) const;
    double& chi1_at(Axis i, Axis j);
    double chi2_at(Axis i, Axis j, Axis k) const;
    double& chi2_at(Axis i, Axis j, Axis k);
    double chi3_at(Axis i, Axis j, Axis k, Axis l) const;
    double& chi3_at(Axis i, Axis j, Axis k, Axis l);

    // Copy with chi2/chi3 entries rescaled into the requested unit system.
    SusceptibilityTensors in_units(ChiUnit target,
                                   const units::ConversionConstants& cc = {}) const;
};

struct Material {
    std::string name;
    SusceptibilityTensors tensors;
    double n0 = 1.0;                       // linear index, must be > 1
    double validity_lo_um = 0.0;           // wavelength window the tensor
    double validity_hi_um = 0.0;           // table is trusted in (0 = unset)

    // Consistency issues: n0^2 != 1 + chi1_xx, chi1_xx != chi1_yy, n0 <= 1.
    std::vector<std::string> validate() const;
};

// Strong background field amplitude. Unit tag must be um^-2 (natural) or
// V/m (SI) and must match the unit system of the tensors it is used with.
struct FieldStrength {
    units::Quantity amplitude{0.0, units::Unit::microns(-2)};
};

// Pair symmetrization over the last two indices of chi2:
// chi2_i(jk) = (chi2_ijk + chi2_ikj) / 2.
double chi2_pair_symmetrized(const SusceptibilityTensors& t, Axis i, Axis j, Axis k);

// Cyclic symmetrization over the last three indices of chi3:
// chi3_i{jkl} = (chi3_ijkl + chi3_iklj + chi3_iljk) / 3.
double chi3_cyclic_symmetrized(const SusceptibilityTensors& t,
                               Axis i, Axis j, Axis k, Axis l);

// Squared probe refractive index for an x- or y-polarized probe in the
// presence of a static background field E0 along x:
//   probe x: n0^2 + 2 chi2_x(xx) E0 + 3 chi3_x{xxx} E0^2
//   probe y: n0^2 + 2 chi2_y(yx) E0 + 3 chi3_y{yxx} E0^2
// E0's unit system must match the tensor unit system.
double probe_n_squared(const Material& m, Axis probe_polarization,
                       const FieldStrength& e0,
                       const units::ConversionConstants& cc = {});

struct DeltaNClassical {
    double pockels = 0.0;       // linear-in-E0 term
    double kerr = 0.0;          // quadratic-in-E0 term
    double total = 0.0;
    bool hierarchy_ok = true;   // false when |kerr| >= |pockels| with chi2 != 0
};

// Two-term expansion of the classical birefringence
//   delta n = (chi2_x(xx) - chi2_y(yx))/n0^2 * E0
//           + (3/2)(chi3_x{xxx} - chi3_y{yxx})/n0^2 * E0^2.
DeltaNClassical delta_n_classical(const Material& m, const FieldStrength& e0,
                                  const units::ConversionConstants& cc = {});

// Coefficient relating the normal-ordered mean squared field to the
// expectation of the birefringence operator:
//   <delta n> = C * <:E^2:>,
//   C = (3 chi3_xxxx - chi3_yyxx - chi3_yxxy - chi3_yxyx) / (2 n0^2).
// Returned in um^4 regardless of the stored tensor unit system.
units::Quantity quantum_coefficient(const Material& m,
                                    const units::ConversionConstants& cc = {});

// <delta n> for a given <:E^2:> (tag um^-4). Exactly linear in e2.
units::Quantity delta_n_quantum(const Material& m, const units::Quantity& e2,
                                const units::ConversionConstants& cc = {});

struct ValidityCheck {
    std::string name;
    double margin = 0.0;   // ratio that must be small for the check to hold
    bool applicable = true;
    bool pass = true;
};

struct ValidityReport {
    std::vector<ValidityCheck> checks;
    bool all_pass() const;
};

// Perturbative-hierarchy checks for the index expansion at field E0, using
// the probe-relevant symmetrized components. A check passes when its margin
// is below `threshold` (default 0.1); inapplicable checks (vanishing
// denominator) are reported but not failed.
ValidityReport expansion_validity(const Material& m, const FieldStrength& e0,
                                  double threshold = 0.1,
                                  const units::ConversionConstants& cc = {});

// Built-in CdGeAs2 tensor table (natural units): n0 = 3.5,
// chi3_xxxx = chi3_yyyy = 7.28e-18 m^2/V^2 and the six xxyy-type entries
// -1.4e-18 m^2/V^2, converted to um^4; trusted window 8-12 um. The equal-
// component assumption chi3_yyxx = chi3_yxxy = chi3_yxyx = chi3_xxyy is
// applied because only chi3_xxyy is tabulated.
Material cdgeas2();

// Key-value material file: one entry per line, "key = value [unit]".
// Keys: name, n0, validity_um (two numbers), chi1.i.j, chi2.i.j.k,
// chi3.i.j.k.l with axis letters x|y|z. Units: um2|mV-1 for chi2,
// um4|m2V-2 for chi3. Throws FileError / ConfigError.
Material load_material_file(const std::string& path);
Material parse_material_text(const std::string& text,
                             const std::string& origin = "<string>");

}  // namespace fluctoptics::media
