#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>

namespace cpforce {

namespace phys {
// CODATA 2018
inline constexpr double c = 299792458.0;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double eps0 = 8.8541878128e-12;
inline constexpr double kB = 1.380649e-23;
inline constexpr double pi = 3.14159265358979323846;
}  // namespace phys

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class State { Ground, Excited };

const char* to_string(State s);

struct AtomSpec {
    double omega0 = 0.0;  // rad/s
    double alpha = 0.0;   // C^2 m^2 / J
    State state = State::Ground;

    static AtomSpec from_wavelength(double lambda0, double alpha, State state);

    double omega_ab() const { return state == State::Ground ? -omega0 : omega0; }
    double lambda0() const { return phys::c / omega0; }
    // +1 for the excited state, -1 for the ground state
    int sign() const { return state == State::Ground ? -1 : 1; }
};

struct RealConstant {
    double eps = 1.0;
};
struct ComplexPermittivity {
    double eps_r = 1.0;
    double eps_i = 0.0;
};
struct PerfectConductor {};

struct MediumSpec {
    std::variant<RealConstant, ComplexPermittivity, PerfectConductor> permittivity = RealConstant{};

    static MediumSpec real(double eps) { return {RealConstant{eps}}; }
    static MediumSpec complex(double eps_r, double eps_i) { return {ComplexPermittivity{eps_r, eps_i}}; }
    static MediumSpec conductor() { return {PerfectConductor{}}; }

    bool is_conductor() const { return std::holds_alternative<PerfectConductor>(permittivity); }
    bool is_real() const { return std::holds_alternative<RealConstant>(permittivity); }
    // Throws unless the medium is RealConstant.
    double real_eps() const;
    std::complex<double> complex_eps() const;
    std::string describe() const;
};

// Thermal wavelength hbar c / (kB T); T = 0 maps to infinity.
double thermal_wavelength(double temperature);
double temperature_from_wavelength(double beta);

struct ThermalConfig {
    double beta_s = kInf;  // m
    double beta_e = kInf;  // m

    static ThermalConfig from_temperatures(double Ts, double Te);
    static ThermalConfig zero() { return {}; }
};

struct Geometry {
    double z = 0.0;  // m
};

struct DimensionlessParams {
    double zbar = 0.0;
    double bs = kInf;
    double be = kInf;
    double eps = 1.0;
    bool conductor = false;

    // a = 2 z sqrt(eps-1) / beta and b = 2 z / beta for a reduced thermal
    // wavelength beta_bar = beta / lambda0.
    double a(double beta_bar) const;
    double b(double beta_bar) const;
    double y0(double beta_bar) const { return beta_bar; }
};

void validate(const AtomSpec& atom);
void validate(const MediumSpec& medium);
void validate(const ThermalConfig& thermal);
void validate(const Geometry& geom);

DimensionlessParams nondimensionalize(const AtomSpec& atom, const MediumSpec& medium,
                                      const ThermalConfig& thermal, const Geometry& geom);

// Natural energy unit hbar/(4 pi eps0) * alpha omega0 / lambda0^3. Forces use
// scale / lambda0.
struct ShiftUnit {
    double scale = 1.0;     // J
    double lambda0 = 1.0;   // m

    double to_joule(double units) const { return units * scale; }
    double from_joule(double joule) const { return joule / scale; }
    double force_scale() const { return scale / lambda0; }
    double to_newton(double units) const { return units * force_scale(); }
    double from_newton(double newton) const { return newton / force_scale(); }
};

ShiftUnit shift_unit(const AtomSpec& atom);

}  // namespace cpforce
