#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "normlab/errors.hpp"

namespace normlab {

// Any intermediate beyond this aborts with NonIntegrable/NoBracket instead of
// silently returning inf.
inline constexpr double kOverflowGuard = 1e300;

struct Tolerances {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 10000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1)
            throw DomainError("tolerances must be strictly positive");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subdivisions = 1;
};

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7,K15) quadrature of f over (lo, hi).
///
/// Endpoint singularities of integrable type are handled by dyadic
/// refinement toward the endpoints (Kronrod nodes never touch them).
/// hi may be +infinity; the tail is mapped to (0,1) by t = 1/u with the
/// split at max(lo, 1).
QuadratureResult integrate(const RealFn& f, double lo, double hi, const Tolerances& tol = {});

/// Gamma function for x > 0, Lanczos rational approximation.
double gamma_fn(double x);

/// Root of a strictly monotone g, bracketed in [lo, hi] after automatic
/// expansion (multiplicative when the interval is positive). Brent steps
/// until the bracket width is below max(abs_tol, a few ulps).
double find_root_monotone(const RealFn& g, double lo, double hi, const Tolerances& tol = {});

enum class OptSense { Min, Max };

struct Optimum {
    double arg = 0.0;
    double value = 0.0;
};

/// Scan of `grid_points` points clustered toward both (open) endpoints,
/// then golden-section refinement around the best grid cell. hi may be
/// +infinity (mapped through u -> lo + u/(1-u)). Non-finite objective
/// values are skipped; if every grid point is non-finite -> AllSingular.
Optimum optimize_1d(const RealFn& h, double lo, double hi, OptSense sense,
                    const Tolerances& tol = {}, int grid_points = 512);

/// Deterministic uniform generator. All randomness in the library flows
/// from explicit seeds through this type; no global state.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw in the open interval (0, 1).
    double uniform01() {
        for (;;) {
            double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace normlab
