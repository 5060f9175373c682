#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpforce/core.hpp"
#include "cpforce/kernels.hpp"

namespace cpforce {

inline constexpr double kZeta3 = 1.2020569031595942854;
inline constexpr double kZeta5 = 1.0369277551433699263;

// Coefficient of the z^-4 ground-state vacuum term; always negative.
double coeff_g(double eps);
double coeff_g(const MediumSpec& medium);
inline constexpr double kConductorG = -6.0;

struct Coefficient {
    double value = 0.0;
    double abs_err = 0.0;
};

// f_1..f_7; f_2 and f_3 are integrals and carry a quadrature error.
Coefficient coeff_f(int k, double eps, double tol = 1e-12);

enum class TempRegime { LowT, HighT, Crossover };
enum class DistRegime { Short, Intermediate, Long, Crossover };

const char* to_string(TempRegime r);
const char* to_string(DistRegime r);

struct RegimeLabel {
    TempRegime temperature = TempRegime::Crossover;
    DistRegime distance = DistRegime::Crossover;
    double margin_factor = 10.0;
    // Each "a << b" condition with its achieved ratio b/a.
    std::vector<std::pair<std::string, double>> margins;
    std::string reason;  // why the label is Crossover, if it is

    bool resolved() const {
        return temperature != TempRegime::Crossover && distance != DistRegime::Crossover;
    }
    std::string str() const;  // "lowT.short", "crossover", ...
    double min_margin() const;
};

RegimeLabel classify_regime(const DimensionlessParams& p, double margin = 10.0);
RegimeLabel classify_regime(const AtomSpec& atom, const Geometry& geom, const ThermalConfig& thermal,
                            const MediumSpec& medium, double margin = 10.0);

class RegimeRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sum of c * zbar^p * {1, cos 2zbar, sin 2zbar} with exact derivatives.
struct Series {
    enum class Osc { None, Cos, Sin };
    struct Term {
        double coef;
        double power;
        Osc osc;
    };
    std::vector<Term> terms;

    Series& add(double coef, double power, Osc osc = Osc::None);
    Series& add(const Series& other, double factor = 1.0);
    double value(double zbar) const;
    double slope(double zbar) const;  // d/dzbar
};

struct ReducedExpansion {
    Series vac, eq, neq;
    std::string formula_id;
};

// Closed-form block for a resolved regime in shift units. Throws RegimeRefused
// for Crossover labels.
ReducedExpansion asymptotic_expansion(const DimensionlessParams& p, int sign, const RegimeLabel& regime);

// Large-distance vacuum expansion through zbar^-4, including the oscillating
// terms for the excited state.
Series vac_long_series(const KernelSet& k, int sign);

struct AsymptoticValue {
    double value = 0.0;  // J (shift) or N (force)
    double vac = 0.0, eq = 0.0, neq = 0.0;
    double value_unit = 0.0;  // shift units or shift units per lambda0
    RegimeLabel regime;
    std::string formula_id;
};

AsymptoticValue asymptotic_shift(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                                 const ThermalConfig& thermal, const RegimeLabel& regime);
AsymptoticValue asymptotic_force(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                                 const ThermalConfig& thermal, const RegimeLabel& regime);

}  // namespace cpforce
