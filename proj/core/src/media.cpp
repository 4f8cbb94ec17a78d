#include "fluctoptics/media.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fluctoptics::media {

namespace {

int ax(Axis a) { return static_cast<int>(a); }

// Tensor system + field tag must describe the same unit system.
void require_matching_units(const SusceptibilityTensors& t,
                            const units::Quantity& e0) {
    if (t.chi2_unit != t.chi3_unit) {
        throw UnitError("chi2 and chi3 blocks are stored in different unit systems");
    }
    const bool natural = (t.chi3_unit == ChiUnit::natural);
    const units::Unit expected =
        natural ? units::Unit::microns(-2) : units::Unit::si_field();
    if (e0.unit != expected) {
        throw UnitError("field unit " + units::to_string(e0.unit) +
                        " does not match tensor unit system (expected " +
                        units::to_string(expected) + ")");
    }
}

}  // namespace

double SusceptibilityTensors::chi1_at(Axis i, Axis j) const {
    return chi1[ax(i) * 3 + ax(j)];
}
double& SusceptibilityTensors::chi1_at(Axis i, Axis j) {
    return chi1[ax(i) * 3 + ax(j)];
}
double SusceptibilityTensors::chi2_at(Axis i, Axis j, Axis k) const {
    return chi2[(ax(i) * 3 + ax(j)) * 3 + ax(k)];
}
double& SusceptibilityTensors::chi2_at(Axis i, Axis j, Axis k) {
    return chi2[(ax(i) * 3 + ax(j)) * 3 + ax(k)];
}
double SusceptibilityTensors::chi3_at(Axis i, Axis j, Axis k, Axis l) const {
    return chi3[((ax(i) * 3 + ax(j)) * 3 + ax(k)) * 3 + ax(l)];
}
double& SusceptibilityTensors::chi3_at(Axis i, Axis j, Axis k, Axis l) {
    return chi3[((ax(i) * 3 + ax(j)) * 3 + ax(k)) * 3 + ax(l)];
}

SusceptibilityTensors SusceptibilityTensors::in_units(
    ChiUnit target, const units::ConversionConstants& cc) const {
    SusceptibilityTensors out = *this;
    if (chi2_unit != target) {
        const double f = cc.chi2_si_to_natural();
        const double s = (target == ChiUnit::natural) ? f : 1.0 / f;
        for (auto& v : out.chi2) v *= s;
        out.chi2_unit = target;
    }
    if (chi3_unit != target) {
        const double f = cc.chi3_si_to_natural();
        const double s = (target == ChiUnit::natural) ? f : 1.0 / f;
        for (auto& v : out.chi3) v *= s;
        out.chi3_unit = target;
    }
    return out;
}

std::vector<std::string> Material::validate() const {
    std::vector<std::string> issues;
    std::ostringstream os;
    if (!(n0 > 1.0)) {
        os.str("");
        os << "material '" << name << "': n0 must be > 1, got " << n0;
        issues.push_back(os.str());
    }
    const double xx = tensors.chi1_at(Axis::x, Axis::x);
    const double yy = tensors.chi1_at(Axis::y, Axis::y);
    const double tol = 1e-9 * std::max(1.0, n0 * n0);
    if (std::abs(n0 * n0 - (1.0 + xx)) > tol) {
        os.str("");
        os << "material '" << name << "': n0^2 = " << n0 * n0
           << " does not equal 1 + chi1_xx = " << 1.0 + xx;
        issues.push_back(os.str());
    }
    if (std::abs(xx - yy) > tol) {
        os.str("");
        os << "material '" << name << "': chi1_xx (" << xx
           << ") must equal chi1_yy (" << yy << ") for a z-propagating probe";
        issues.push_back(os.str());
    }
    if (validity_lo_um < 0.0 || validity_hi_um < validity_lo_um) {
        issues.push_back("material '" + name + "': bad validity window");
    }
    return issues;
}

double chi2_pair_symmetrized(const SusceptibilityTensors& t, Axis i, Axis j, Axis k) {
    return 0.5 * (t.chi2_at(i, j, k) + t.chi2_at(i, k, j));
}

double chi3_cyclic_symmetrized(const SusceptibilityTensors& t,
                               Axis i, Axis j, Axis k, Axis l) {
    return (t.chi3_at(i, j, k, l) + t.chi3_at(i, k, l, j) + t.chi3_at(i, l, j, k)) / 3.0;
}

double probe_n_squared(const Material& m, Axis probe_polarization,
                       const FieldStrength& e0,
                       const units::ConversionConstants& cc) {
    (void)cc;
    require_matching_units(m.tensors, e0.amplitude);
    const double e = e0.amplitude.value;
    const auto& t = m.tensors;
    double chi2_eff = 0.0, chi3_eff = 0.0;
    switch (probe_polarization) {
        case Axis::x:
            chi2_eff = chi2_pair_symmetrized(t, Axis::x, Axis::x, Axis::x);
            chi3_eff = chi3_cyclic_symmetrized(t, Axis::x, Axis::x, Axis::x, Axis::x);
            break;
        case Axis::y:
            chi2_eff = chi2_pair_symmetrized(t, Axis::y, Axis::y, Axis::x);
            chi3_eff = chi3_cyclic_symmetrized(t, Axis::y, Axis::y, Axis::x, Axis::x);
            break;
        case Axis::z:
            throw DomainError("probe polarization must be x or y (propagation is along z)");
    }
    return m.n0 * m.n0 + 2.0 * chi2_eff * e + 3.0 * chi3_eff * e * e;
}

DeltaNClassical delta_n_classical(const Material& m, const FieldStrength& e0,
                                  const units::ConversionConstants& cc) {
    (void)cc;
    require_matching_units(m.tensors, e0.amplitude);
    const double e = e0.amplitude.value;
    const auto& t = m.tensors;
    const double n0sq = m.n0 * m.n0;
    const double chi2_diff =
        chi2_pair_symmetrized(t, Axis::x, Axis::x, Axis::x) -
        chi2_pair_symmetrized(t, Axis::y, Axis::y, Axis::x);
    const double chi3_diff =
        chi3_cyclic_symmetrized(t, Axis::x, Axis::x, Axis::x, Axis::x) -
        chi3_cyclic_symmetrized(t, Axis::y, Axis::y, Axis::x, Axis::x);
    DeltaNClassical r;
    r.pockels = chi2_diff / n0sq * e;
    r.kerr = 1.5 * chi3_diff / n0sq * e * e;
    r.total = r.pockels + r.kerr;
    const bool has_chi2 = chi2_diff != 0.0;
    r.hierarchy_ok = !has_chi2 || e == 0.0 || std::abs(r.kerr) < std::abs(r.pockels);
    return r;
}

units::Quantity quantum_coefficient(const Material& m,
                                    const units::ConversionConstants& cc) {
    const SusceptibilityTensors t = m.tensors.in_units(ChiUnit::natural, cc);
    const double combo = 3.0 * t.chi3_at(Axis::x, Axis::x, Axis::x, Axis::x) -
                         t.chi3_at(Axis::y, Axis::y, Axis::x, Axis::x) -
                         t.chi3_at(Axis::y, Axis::x, Axis::x, Axis::y) -
                         t.chi3_at(Axis::y, Axis::x, Axis::y, Axis::x);
    return {combo / (2.0 * m.n0 * m.n0), units::Unit::microns(4)};
}

units::Quantity delta_n_quantum(const Material& m, const units::Quantity& e2,
                                const units::ConversionConstants& cc) {
    const double c = quantum_coefficient(m, cc).value;
    return {c * e2.value_in(units::Unit::microns(-4)), units::Unit::dimensionless()};
}

bool ValidityReport::all_pass() const {
    for (const auto& c : checks) {
        if (c.applicable && !c.pass) return false;
    }
    return true;
}

ValidityReport expansion_validity(const Material& m, const FieldStrength& e0,
                                  double threshold,
                                  const units::ConversionConstants& cc) {
    (void)cc;
    require_matching_units(m.tensors, e0.amplitude);
    const double e = std::abs(e0.amplitude.value);
    const auto& t = m.tensors;
    const double pockels =
        std::abs(2.0 * chi2_pair_symmetrized(t, Axis::x, Axis::x, Axis::x) * e);
    const double kerr = std::abs(
        3.0 * chi3_cyclic_symmetrized(t, Axis::x, Axis::x, Axis::x, Axis::x) * e * e);

    ValidityReport rep;
    ValidityCheck c1{"kerr_term_below_pockels_term", 0.0, pockels > 0.0, true};
    if (c1.applicable) {
        c1.margin = kerr / pockels;
        c1.pass = c1.margin < threshold;
    }
    rep.checks.push_back(c1);

    ValidityCheck c2{"pockels_term_below_unity", pockels, pockels > 0.0, true};
    if (c2.applicable) c2.pass = c2.margin < threshold;
    rep.checks.push_back(c2);

    ValidityCheck c3{"kerr_term_below_unity", kerr, true, kerr < threshold};
    rep.checks.push_back(c3);
    return rep;
}

Material cdgeas2() {
    const units::ConversionConstants cc{};
    const double f = cc.chi3_si_to_natural();
    Material m;
    m.name = "cdgeas2";
    m.n0 = 3.5;
    m.validity_lo_um = 8.0;
    m.validity_hi_um = 12.0;
    const double chi1 = m.n0 * m.n0 - 1.0;
    m.tensors.chi1_at(Axis::x, Axis::x) = chi1;
    m.tensors.chi1_at(Axis::y, Axis::y) = chi1;
    m.tensors.chi1_at(Axis::z, Axis::z) = chi1;
    m.tensors.chi2_unit = ChiUnit::natural;
    m.tensors.chi3_unit = ChiUnit::natural;
    const double chi3_aaaa = 7.28e-18 * f;   // 72800e-22 m^2/V^2
    const double chi3_aabb = -1.4e-18 * f;   // -14000e-22 m^2/V^2
    auto& t = m.tensors;
    t.chi3_at(Axis::x, Axis::x, Axis::x, Axis::x) = chi3_aaaa;
    t.chi3_at(Axis::y, Axis::y, Axis::y, Axis::y) = chi3_aaaa;
    const Axis X = Axis::x, Y = Axis::y;
    t.chi3_at(X, X, Y, Y) = chi3_aabb;
    t.chi3_at(X, Y, X, Y) = chi3_aabb;
    t.chi3_at(X, Y, Y, X) = chi3_aabb;
    t.chi3_at(Y, Y, X, X) = chi3_aabb;
    t.chi3_at(Y, X, Y, X) = chi3_aabb;
    t.chi3_at(Y, X, X, Y) = chi3_aabb;
    return m;
}

// ---------------------------------------------------------------------------
// Key-value material format

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc{} && p == e;
}

bool parse_axis(char c, Axis& out) {
    switch (c) {
        case 'x': out = Axis::x; return true;
        case 'y': out = Axis::y; return true;
        case 'z': out = Axis::z; return true;
        default: return false;
    }
}

// "chi3.x.x.y.y" -> axis list; rank fixed by prefix.
bool parse_axes(const std::string& key, size_t rank, std::vector<Axis>& axes) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : key) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != rank + 1) return false;
    axes.clear();
    for (size_t i = 1; i < parts.size(); ++i) {
        Axis a;
        if (parts[i].size() != 1 || !parse_axis(parts[i][0], a)) return false;
        axes.push_back(a);
    }
    return true;
}

struct MaterialBuilder {
    Material m;
    bool n0_set = false;
    bool chi1_set = false;
    bool chi2_unit_locked = false;
    bool chi3_unit_locked = false;

    bool apply(const std::string& key, const std::string& raw_value,
               std::string& error);
    void finish(std::vector<std::string>& errors);
};

bool MaterialBuilder::apply(const std::string& key, const std::string& raw_value,
                            std::string& error) {
    const std::string value = trim(raw_value);
    if (key == "name") {
        m.name = value;
        return true;
    }
    if (key == "n0") {
        double v;
        if (!parse_double(value, v)) {
            error = "n0: not a number: '" + value + "'";
            return false;
        }
        m.n0 = v;
        n0_set = true;
        return true;
    }
    if (key == "validity_um") {
        std::istringstream is(value);
        std::string a, b, rest;
        is >> a >> b;
        if (a.empty() || b.empty() || (is >> rest)) {
            error = "validity_um: expected two numbers, got '" + value + "'";
            return false;
        }
        double lo, hi;
        if (!parse_double(a, lo) || !parse_double(b, hi)) {
            error = "validity_um: not numbers: '" + value + "'";
            return false;
        }
        m.validity_lo_um = lo;
        m.validity_hi_um = hi;
        return true;
    }
    if (key.rfind("chi1.", 0) == 0) {
        std::vector<Axis> axes;
        if (!parse_axes(key, 2, axes)) {
            error = "bad chi1 key '" + key + "' (expected chi1.i.j with i,j in x|y|z)";
            return false;
        }
        double v;
        if (!parse_double(value, v)) {
            error = key + ": not a number: '" + value + "'";
            return false;
        }
        m.tensors.chi1_at(axes[0], axes[1]) = v;
        chi1_set = true;
        return true;
    }
    auto tensor_entry = [&](const char* prefix, size_t rank, ChiUnit si_like,
                            const char* nat_unit, const char* si_unit,
                            bool& locked, ChiUnit& stored) -> int {
        (void)si_like;
        if (key.rfind(prefix, 0) != 0) return 0;
        std::vector<Axis> axes;
        if (!parse_axes(key, rank, axes)) {
            error = "bad key '" + key + "'";
            return -1;
        }
        std::istringstream is(value);
        std::string num, unit, rest;
        is >> num >> unit;
        if (num.empty() || unit.empty() || (is >> rest)) {
            error = key + ": expected '<number> <unit>' with unit " +
                    nat_unit + " or " + si_unit + ", got '" + value + "'";
            return -1;
        }
        double v;
        if (!parse_double(num, v)) {
            error = key + ": not a number: '" + num + "'";
            return -1;
        }
        ChiUnit u;
        if (unit == nat_unit) {
            u = ChiUnit::natural;
        } else if (unit == si_unit) {
            u = ChiUnit::si;
        } else {
            error = key + ": unknown unit '" + unit + "' (expected " + nat_unit +
                    " or " + si_unit + ")";
            return -1;
        }
        if (locked && u != stored) {
            error = key + ": mixes unit systems within one tensor block";
            return -1;
        }
        stored = u;
        locked = true;
        if (rank == 3) {
            m.tensors.chi2_at(axes[0], axes[1], axes[2]) = v;
        } else {
            m.tensors.chi3_at(axes[0], axes[1], axes[2], axes[3]) = v;
        }
        return 1;
    };
    if (int r = tensor_entry("chi2.", 3, ChiUnit::si, "um2", "mV-1",
                             chi2_unit_locked, m.tensors.chi2_unit)) {
        return r > 0;
    }
    if (int r = tensor_entry("chi3.", 4, ChiUnit::si, "um4", "m2V-2",
                             chi3_unit_locked, m.tensors.chi3_unit)) {
        return r > 0;
    }
    error = "unknown material key '" + key + "'";
    return false;
}

void MaterialBuilder::finish(std::vector<std::string>& errors) {
    if (!n0_set && !chi1_set) {
        errors.push_back("neither n0 nor chi1 entries given");
        return;
    }
    if (n0_set && !chi1_set) {
        const double chi1 = m.n0 * m.n0 - 1.0;
        m.tensors.chi1_at(Axis::x, Axis::x) = chi1;
        m.tensors.chi1_at(Axis::y, Axis::y) = chi1;
        m.tensors.chi1_at(Axis::z, Axis::z) = chi1;
    }
    if (!n0_set && chi1_set) {
        const double xx = m.tensors.chi1_at(Axis::x, Axis::x);
        if (1.0 + xx <= 0.0) {
            errors.push_back("1 + chi1_xx must be positive");
            return;
        }
        m.n0 = std::sqrt(1.0 + xx);
    }
    for (auto& issue : m.validate()) errors.push_back(issue);
}

Material parse_material_lines(std::istream& in, const std::string& origin) {
    MaterialBuilder b;
    std::vector<std::string> errors;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back(origin + ":" + std::to_string(lineno) +
                             ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::string error;
        if (!b.apply(key, value, error)) {
            errors.push_back(origin + ":" + std::to_string(lineno) + ": " + error);
        }
    }
    const size_t line_errors = errors.size();
    b.finish(errors);
    // File-level diagnostics name the origin just like line-level ones.
    for (size_t i = line_errors; i < errors.size(); ++i)
        errors[i] = origin + ": " + errors[i];
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return b.m;
}

}  // namespace

Material parse_material_text(const std::string& text, const std::string& origin) {
    std::istringstream is(text);
    return parse_material_lines(is, origin);
}

Material load_material_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open material file '" + path + "'");
    return parse_material_lines(in, path);
}

}  // namespace fluctoptics::media
