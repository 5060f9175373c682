#include "cpforce/core.hpp"

#include <cmath>
#include <sstream>

namespace cpforce {

const char* to_string(State s) { return s == State::Ground ? "ground" : "excited"; }

AtomSpec AtomSpec::from_wavelength(double lambda0, double alpha, State state) {
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
        throw ValidationError("lambda0 must be positive and finite");
    return {phys::c / lambda0, alpha, state};
}

double MediumSpec::real_eps() const {
    if (const auto* r = std::get_if<RealConstant>(&permittivity)) return r->eps;
    throw ValidationError("medium is not a real constant permittivity");
}

std::complex<double> MediumSpec::complex_eps() const {
    if (const auto* r = std::get_if<RealConstant>(&permittivity)) return {r->eps, 0.0};
    if (const auto* c = std::get_if<ComplexPermittivity>(&permittivity)) return {c->eps_r, c->eps_i};
    throw ValidationError("perfect conductor has no finite permittivity");
}

std::string MediumSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (is_conductor()) {
        os << "conductor";
    } else if (const auto* r = std::get_if<RealConstant>(&permittivity)) {
        os << "eps=" << r->eps;
    } else {
        const auto& c = std::get<ComplexPermittivity>(permittivity);
        os << "eps=" << c.eps_r << "+" << c.eps_i << "i";
    }
    return os.str();
}

double thermal_wavelength(double temperature) {
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw ValidationError("temperature must be finite and non-negative");
    if (temperature == 0.0) return kInf;
    return phys::hbar * phys::c / (phys::kB * temperature);
}

double temperature_from_wavelength(double beta) {
    if (std::isinf(beta)) return 0.0;
    return phys::hbar * phys::c / (phys::kB * beta);
}

ThermalConfig ThermalConfig::from_temperatures(double Ts, double Te) {
    return {thermal_wavelength(Ts), thermal_wavelength(Te)};
}

double DimensionlessParams::a(double beta_bar) const {
    if (conductor) throw DomainError("a is undefined for a perfect conductor");
    return 2.0 * zbar * std::sqrt(eps - 1.0) / beta_bar;
}

double DimensionlessParams::b(double beta_bar) const { return 2.0 * zbar / beta_bar; }

void validate(const AtomSpec& atom) {
    if (!(atom.omega0 > 0.0) || !std::isfinite(atom.omega0))
        throw ValidationError("atom.omega0 must be positive and finite");
    if (!(atom.alpha > 0.0) || !std::isfinite(atom.alpha))
        throw ValidationError("atom.alpha must be positive and finite");
}

void validate(const MediumSpec& medium) {
    if (const auto* r = std::get_if<RealConstant>(&medium.permittivity)) {
        if (!std::isfinite(r->eps) || !(r->eps >= 1.0))
            throw ValidationError("real permittivity must be finite and >= 1");
    } else if (const auto* c = std::get_if<ComplexPermittivity>(&medium.permittivity)) {
        if (!std::isfinite(c->eps_r) || !std::isfinite(c->eps_i))
            throw ValidationError("complex permittivity must be finite");
        if (c->eps_i < 0.0) throw ValidationError("complex permittivity requires eps_i >= 0");
    }
}

void validate(const ThermalConfig& thermal) {
    if (!(thermal.beta_s > 0.0) || std::isnan(thermal.beta_s))
        throw ValidationError("thermal.beta_s must be positive (infinity encodes T = 0)");
    if (!(thermal.beta_e > 0.0) || std::isnan(thermal.beta_e))
        throw ValidationError("thermal.beta_e must be positive (infinity encodes T = 0)");
}

void validate(const Geometry& geom) {
    if (!(geom.z > 0.0) || !std::isfinite(geom.z))
        throw ValidationError("geometry.z must be positive and finite");
}

DimensionlessParams nondimensionalize(const AtomSpec& atom, const MediumSpec& medium,
                                      const ThermalConfig& thermal, const Geometry& geom) {
    validate(atom);
    validate(medium);
    validate(thermal);
    validate(geom);
    const double lambda0 = atom.lambda0();
    DimensionlessParams p;
    p.zbar = geom.z / lambda0;
    p.bs = thermal.beta_s / lambda0;
    p.be = thermal.beta_e / lambda0;
    p.conductor = medium.is_conductor();
    if (medium.is_real()) {
        p.eps = medium.real_eps();
    } else if (!p.conductor) {
        p.eps = medium.complex_eps().real();
    } else {
        p.eps = kInf;
    }
    return p;
}

ShiftUnit shift_unit(const AtomSpec& atom) {
    validate(atom);
    const double l0 = atom.lambda0();
    ShiftUnit u;
    u.lambda0 = l0;
    u.scale = phys::hbar / (4.0 * phys::pi * phys::eps0) * atom.alpha * atom.omega0 / (l0 * l0 * l0);
    return u;
}

}  // namespace cpforce
