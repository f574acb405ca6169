#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pverify/bracket.hpp"
#include "pverify/system.hpp"

namespace pverify {

// Trajectories must keep every coordinate that appears in a compiled
// denominator at least this far from zero; violating runs abort with
// SingularityApproach rather than report garbage drift.
inline constexpr double kSingularityMargin = 1e-3;

// Relative drift is measured against max(|initial value|, this floor) so
// integrals that start at zero still get a finite, meaningful ratio.
inline constexpr double kDriftFloor = 1e-12;

// Real phase-space state: three coordinates and three conjugate momenta.
struct PhasePoint {
    std::array<double, 3> q{};
    std::array<double, 3> p{};
};

struct TrajectorySample {
    double t = 0;
    PhasePoint state;
};

// Exact parameter values for a run.  Rationals rather than doubles so the
// realness check in compile_numeric and the exact-vs-float agreement tests
// have an unambiguous exact reference.
using ParamValues = std::map<std::string, mpq_class>;

// Substitutes exact values for every parameter occurring in the expression
// and renormalizes (common factors introduced by vanished terms cancel).
// Throws UnboundName when a parameter occurs but has no value.
RatExpr substitute_parameters(const RatExpr& expr, const ParamValues& values);

// A rational function of the six phase variables with double-precision
// coefficients, evaluable on a PhasePoint.  Produced by compile_numeric.
class CompiledExpr {
  public:
    double operator()(const PhasePoint& s) const;

    bool has_denominator() const { return !den_.empty(); }
    // Whether the denominator depends on coordinate 0..2 (x, y, z); such
    // coordinates are subject to the singularity margin during integration.
    bool den_uses_coordinate(int coord) const { return den_coords_[coord]; }

    struct Term {
        std::array<std::uint8_t, 6> e{};
        double c = 0;
    };

  private:
    friend CompiledExpr compile_numeric(const RatExpr&, const ParamValues&);

    static double eval_terms(const std::vector<Term>& terms, const double* vals);

    std::vector<Term> num_;
    std::vector<Term> den_;  // empty means 1
    std::array<bool, 3> den_coords_{};
};

// Substitutes the parameter values, cancels, and converts to doubles.  Throws
// ComplexResidue when any surviving coefficient has a nonzero imaginary part
// (the catalog's complex-coefficient systems are rejected here), UnboundName
// when a parameter occurring in the expression has no value.
CompiledExpr compile_numeric(const RatExpr& expr, const ParamValues& params);

// dt may be negative (backward integration) but not zero; horizon is the
// total integrated time, always positive.
struct IntegrationSpec {
    double dt = 1e-3;
    double horizon = 1.0;
    double margin = kSingularityMargin;
};

// Velocity-Verlet trajectory of the system's Hamiltonian under the given
// convention.  The Hamiltonian must split as kinetic(p) + V(q) after
// convention resolution and parameter substitution: k*(p_x^2+p_y^2+p_z^2)
// with constant k plus a momentum-free rational V.  Samples are returned for
// t = 0, dt, 2 dt, ..., horizon.  Throws SingularityApproach when a
// denominator coordinate of V crosses the margin (or a state goes
// non-finite), std::invalid_argument for dt == 0, a non-splitting H, or a
// non-finite start.  Runs are independent and share no mutable state, so
// different (system, start) pairs may integrate concurrently.
std::vector<TrajectorySample> integrate(const SystemDefinition& sys, const ParamValues& params,
                                        const PhasePoint& start, const IntegrationSpec& spec,
                                        const BracketConvention& conv = {});

// Conservation quality of one integral along a trajectory.
struct DriftReport {
    std::string name;
    double initial = 0;
    // max_t |S(t) - S(0)| / max(|S(0)|, kDriftFloor) over the horizon.
    double max_relative_drift = 0;
    double dt = 0;
    double horizon = 0;
};

// One DriftReport per generator (H first, evaluated under the convention),
// all measured along a single integration of the run.  The singularity margin
// covers every coordinate appearing in any compiled generator's denominator.
std::vector<DriftReport> conservation_drift(const SystemDefinition& sys,
                                            const ParamValues& params, const PhasePoint& start,
                                            const IntegrationSpec& spec,
                                            const BracketConvention& conv = {});

// Drift of one explicit phase-space expression (e.g. a deliberately corrupted
// integral) along the system's trajectory; the label only names the report.
DriftReport expression_drift(const SystemDefinition& sys, const RatExpr& expr,
                             const std::string& label, const ParamValues& params,
                             const PhasePoint& start, const IntegrationSpec& spec,
                             const BracketConvention& conv = {});

// CSV dump of every stride-th sample: header row, then columns t, x, y, z,
// p_x, p_y, p_z, and one column per generator value (catalog order).
void write_trajectory_csv(std::ostream& out, const SystemDefinition& sys,
                          const ParamValues& params, const PhasePoint& start,
                          const IntegrationSpec& spec, int stride = 1,
                          const BracketConvention& conv = {});

}  // namespace pverify
