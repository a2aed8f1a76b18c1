// Scalar coefficient functions α_k(t) of the polynomial flow representation
// exp(tL) = Σ_{k<m} α_k(t) L^k, evaluated two independent ways (the companion
// ODE system and exponential interpolation on the spectrum), plus the time-
// grid determinant det[α_k(c_j t)] and measurement-time selection.

#pragma once

#include "strobo/cyclicity.hpp"
#include "strobo/hamiltonian.hpp"
#include "strobo/types.hpp"

#include <vector>

namespace strobo {

struct AlphaSystem {
    int m = 0;                  // minimal polynomial degree
    RealVector d_coeffs;        // L^m = Σ d_k L^k
    std::vector<double> roots;  // distinct eigenvalues of L, simple, ascending

    static AlphaSystem from_minimal_polynomial(const MinimalPolynomial& mu);
    static AlphaSystem from_hamiltonian(const HamiltonianSpec& H,
                                        double tol = kGroupingTol);
};

enum class AlphaMethod { Interp, Ode };

// Integrates α_0' = d_0 α_{m-1}, α_k' = α_{k-1} + d_k α_{m-1} (k ≥ 1) from
// α_k(0) = δ_{k0}; returns the matrix [α_k(t_j)] with rows indexed by time.
RealMatrix alpha_ode(const AlphaSystem& sys, const std::vector<double>& t_points,
                     double tol = kOdeTol);

// Coefficients of the degree-(m-1) polynomial interpolating e^{tz} at the
// roots; computed by Newton divided differences. Requires simple roots.
RealVector alpha_interp(const AlphaSystem& sys, double t);

RealVector alpha_at(const AlphaSystem& sys, double t,
                    AlphaMethod method = AlphaMethod::Interp, double ode_tol = kOdeTol);

// Measurement instants t_j = c_j * t_scale with fixed mutual distribution.
struct TimeGrid {
    std::vector<double> c;  // strictly increasing, nonnegative
    double t_scale = 1.0;

    std::vector<double> instants() const;
    void validate() const;
};

// c_j = j for j = 1..m
std::vector<double> default_c_list(int m);

// det[α_k(c_j t_scale)], rows j, columns k; requires |c| = m.
double grid_determinant(const AlphaSystem& sys, const TimeGrid& grid,
                        AlphaMethod method = AlphaMethod::Interp);

// Taylor coefficients of α_k at t = 0 up to the given order: result[p](k) is
// the coefficient of t^p in α_k(t).
std::vector<RealVector> alpha_taylor_coefficients(const AlphaSystem& sys, int order);

struct TaylorLowestOrder {
    int order = 0;
    double coefficient = 0.0;
};

// First nonvanishing Taylor order of det[α_k(c_j t)] at t = 0 and its
// coefficient; the order equals m(m-1)/2 for strictly increasing c.
TaylorLowestOrder taylor_lowest_order(const AlphaSystem& sys,
                                      const std::vector<double>& c);

struct TimeScaleSelection {
    double t_star = 0.0;
    double det_value = 0.0;
    std::vector<double> zero_locations;
};

// Scans t over (0, T/c_m], returns the |det|-maximizing scale (refined
// locally), the determinant there, and all detected zeros of the determinant
// (always including t = 0 for m ≥ 2, where the rows coincide).
TimeScaleSelection select_time_scale(const AlphaSystem& sys, const std::vector<double>& c,
                                     double T, int samples,
                                     AlphaMethod method = AlphaMethod::Interp);

// Condition number of the Vandermonde matrix V_{jk} = ν_j^k underlying
// alpha_interp; a conditioning report for downstream solves.
double vandermonde_condition(const AlphaSystem& sys);

}  // namespace strobo
