#pragma once

#include <string>

#include "cpforce/core.hpp"
#include "cpforce/kernels.hpp"

namespace cpforce {

struct EngineOptions {
    double vac_tol = 1e-13;      // relative target of the vacuum integrals
    double thermal_tol = 1e-8;   // relative target of the thermal double integrals
    // Zero of the thermal parts. Far from the surface they vanish by
    // themselves. Inside the thermal near zone (every distance scale below the
    // thermal wavelength) they sit on a z-independent offset that the regime
    // formulas leave out; Contact removes it by subtracting the z -> 0 limit
    // of the integrals. Auto picks Contact inside the near zone. Forces are
    // unaffected.
    enum class ThermalReference { Auto, Contact, Infinity };
    ThermalReference thermal_reference = ThermalReference::Auto;
    // Add the z-independent g21 piece to the neq part.
    bool include_g21 = false;
    // Beyond 2 zbar = cutoff the vacuum part comes from the long-distance series.
    double oscillation_cutoff = 1e3;
    double fd_step = 0.02;       // central-difference step relative to zbar
};

enum class PartStatus { Ok, NotConverged, Asymptotic };
const char* to_string(PartStatus s);

// One shift part in shift units, with its derivative in zbar.
struct PartValue {
    double value = 0.0, err = 0.0;
    double slope = 0.0, slope_err = 0.0;
    PartStatus status = PartStatus::Ok;
    std::string method;  // closed-form, quadrature, quadrature.contact, asymptotic, exact-zero
};

struct ReducedProblem {
    KernelSet kernels;
    int sign = -1;  // -1 ground, +1 excited
    double zbar = 1.0;
    double bs = kInf, be = kInf;

    static ReducedProblem from(const AtomSpec& atom, const MediumSpec& medium, const ThermalConfig& thermal,
                               const Geometry& geom);
};

struct ReducedVac {
    PartValue vac1, vac2, vac3, total;
};

ReducedVac reduced_vac(const ReducedProblem& p, const EngineOptions& opts = {});
PartValue reduced_eq(const ReducedProblem& p, const EngineOptions& opts = {});
PartValue reduced_neq(const ReducedProblem& p, const EngineOptions& opts = {});

struct PartSI {
    double value = 0.0;  // J or N
    double err = 0.0;
    PartStatus status = PartStatus::Ok;
    std::string method;
};

struct VacBreakdown {
    PartSI vac1, vac2, vac3, total;
};

struct ShiftBreakdown {
    PartSI vac, eq, neq;
    double total = 0.0, total_err = 0.0;  // J
    double unit = 1.0;                    // J per shift unit
    ReducedVac vac_detail;
    bool ok() const;
    double total_unit() const { return total / unit; }
};

enum class ForceMethod { DifferentiateUnderIntegral, CentralDifference };
const char* to_string(ForceMethod m);

struct ForceBreakdown {
    PartSI vac, eq, neq, total;  // N; F = -dE/dz
    ForceMethod method = ForceMethod::DifferentiateUnderIntegral;
};

VacBreakdown shift_vac(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                       const EngineOptions& opts = {});
PartSI shift_eq(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom, double beta_e,
                const EngineOptions& opts = {});
PartSI shift_neq(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                 const ThermalConfig& thermal, const EngineOptions& opts = {});
ShiftBreakdown total_shift(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                           const ThermalConfig& thermal, const EngineOptions& opts = {});
ForceBreakdown force(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                     const ThermalConfig& thermal, ForceMethod method = ForceMethod::DifferentiateUnderIntegral,
                     const EngineOptions& opts = {});

}  // namespace cpforce
