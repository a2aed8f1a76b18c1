#include "strobo/alpha.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace strobo {

AlphaSystem AlphaSystem::from_minimal_polynomial(const MinimalPolynomial& mu) {
    AlphaSystem sys;
    sys.m = mu.degree;
    sys.d_coeffs = mu.d_coeffs;
    sys.roots = mu.roots;
    return sys;
}

AlphaSystem AlphaSystem::from_hamiltonian(const HamiltonianSpec& H, double tol) {
    return from_minimal_polynomial(minimal_polynomial(generator_spectrum(H, tol)));
}

namespace {

void check_simple_roots(const AlphaSystem& sys) {
    double scale = 1.0;
    for (double nu : sys.roots) scale = std::max(scale, std::abs(nu));
    for (std::size_t i = 1; i < sys.roots.size(); ++i)
        if (std::abs(sys.roots[i] - sys.roots[i - 1]) <= 1e-12 * scale)
            throw std::invalid_argument("alpha: repeated roots are not supported");
}

}  // namespace

RealMatrix alpha_ode(const AlphaSystem& sys, const std::vector<double>& t_points,
                     double tol) {
    const int m = sys.m;
    for (double t : t_points)
        if (t < 0.0) throw std::invalid_argument("alpha_ode: negative time point");

    // evaluate in increasing-time order, then scatter back
    std::vector<std::size_t> order(t_points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return t_points[a] < t_points[b]; });

    using state_type = std::vector<double>;
    const auto system = [&](const state_type& a, state_type& dadt, double) {
        const double last = a[static_cast<std::size_t>(m - 1)];
        dadt[0] = sys.d_coeffs(0) * last;
        for (int k = 1; k < m; ++k)
            dadt[static_cast<std::size_t>(k)] =
                a[static_cast<std::size_t>(k - 1)] + sys.d_coeffs(k) * last;
    };

    namespace odeint = boost::numeric::odeint;
    auto stepper =
        odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<state_type>());

    state_type state(static_cast<std::size_t>(m), 0.0);
    state[0] = 1.0;  // α_k(0) = δ_{k0}
    double t_now = 0.0;

    RealMatrix result(static_cast<Eigen::Index>(t_points.size()), m);
    for (std::size_t idx : order) {
        const double t_target = t_points[idx];
        if (t_target > t_now) {
            const double dt0 = std::max(1e-8, (t_target - t_now) / 16.0);
            odeint::integrate_adaptive(stepper, system, state, t_now, t_target, dt0);
            t_now = t_target;
        }
        for (int k = 0; k < m; ++k)
            result(static_cast<Eigen::Index>(idx), k) = state[static_cast<std::size_t>(k)];
    }
    return result;
}

RealVector alpha_interp(const AlphaSystem& sys, double t) {
    const int m = sys.m;
    check_simple_roots(sys);

    // Newton divided differences of e^{t z} on the roots
    std::vector<double> coef(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        coef[static_cast<std::size_t>(j)] = std::exp(t * sys.roots[static_cast<std::size_t>(j)]);
    for (int level = 1; level < m; ++level)
        for (int j = m - 1; j >= level; --j)
            coef[static_cast<std::size_t>(j)] =
                (coef[static_cast<std::size_t>(j)] - coef[static_cast<std::size_t>(j - 1)]) /
                (sys.roots[static_cast<std::size_t>(j)] -
                 sys.roots[static_cast<std::size_t>(j - level)]);

    // Newton form -> monomial coefficients
    RealVector alpha = RealVector::Zero(m);
    alpha(0) = coef[static_cast<std::size_t>(m - 1)];
    int len = 1;
    for (int j = m - 2; j >= 0; --j) {
        // multiply by (z - root_j), then add coef[j]
        for (int k = len; k >= 1; --k)
            alpha(k) = alpha(k - 1) - sys.roots[static_cast<std::size_t>(j)] * alpha(k);
        alpha(0) *= -sys.roots[static_cast<std::size_t>(j)];
        alpha(0) += coef[static_cast<std::size_t>(j)];
        ++len;
    }
    return alpha;
}

RealVector alpha_at(const AlphaSystem& sys, double t, AlphaMethod method, double ode_tol) {
    if (method == AlphaMethod::Interp) return alpha_interp(sys, t);
    return alpha_ode(sys, {t}, ode_tol).row(0);
}

std::vector<double> TimeGrid::instants() const {
    std::vector<double> out;
    out.reserve(c.size());
    for (double cj : c) out.push_back(cj * t_scale);
    return out;
}

void TimeGrid::validate() const {
    if (c.empty()) throw std::invalid_argument("TimeGrid: empty c list");
    if (c.front() < 0.0) throw std::invalid_argument("TimeGrid: c values must be nonnegative");
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] <= c[i - 1])
            throw std::invalid_argument("TimeGrid: c values must be strictly increasing");
    if (t_scale <= 0.0) throw std::invalid_argument("TimeGrid: t_scale must be positive");
}

std::vector<double> default_c_list(int m) {
    std::vector<double> c(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) c[static_cast<std::size_t>(j)] = j + 1;
    return c;
}

namespace {

RealMatrix alpha_grid_matrix(const AlphaSystem& sys, const std::vector<double>& instants,
                             AlphaMethod method) {
    const int m = sys.m;
    RealMatrix A(static_cast<Eigen::Index>(instants.size()), m);
    if (method == AlphaMethod::Ode) {
        A = alpha_ode(sys, instants);
    } else {
        for (std::size_t j = 0; j < instants.size(); ++j)
            A.row(static_cast<Eigen::Index>(j)) = alpha_interp(sys, instants[j]).transpose();
    }
    return A;
}

}  // namespace

double grid_determinant(const AlphaSystem& sys, const TimeGrid& grid, AlphaMethod method) {
    grid.validate();
    if (static_cast<int>(grid.c.size()) != sys.m)
        throw DimensionError("grid_determinant: c list length must equal the polynomial degree");
    const RealMatrix A = alpha_grid_matrix(sys, grid.instants(), method);
    return A.partialPivLu().determinant();
}

std::vector<RealVector> alpha_taylor_coefficients(const AlphaSystem& sys, int order) {
    const int m = sys.m;
    // companion matrix of the ODE system: a' = C a
    RealMatrix C = RealMatrix::Zero(m, m);
    for (int k = 1; k < m; ++k) C(k, k - 1) = 1.0;
    for (int k = 0; k < m; ++k) C(k, m - 1) += sys.d_coeffs(k);

    std::vector<RealVector> coeffs;
    coeffs.reserve(static_cast<std::size_t>(order) + 1);
    RealVector a = RealVector::Zero(m);
    a(0) = 1.0;
    coeffs.push_back(a);
    for (int p = 1; p <= order; ++p) {
        a = (C * a) / static_cast<double>(p);
        coeffs.push_back(a);
    }
    return coeffs;
}

namespace {

// truncated power-series product
std::vector<double> series_mul(const std::vector<double>& a, const std::vector<double>& b,
                               std::size_t len) {
    std::vector<double> out(len, 0.0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

int permutation_sign(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

TaylorLowestOrder taylor_lowest_order(const AlphaSystem& sys, const std::vector<double>& c) {
    const int m = sys.m;
    if (static_cast<int>(c.size()) != m)
        throw DimensionError("taylor_lowest_order: c list length must equal the polynomial degree");
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] <= c[i - 1])
            throw std::invalid_argument("taylor_lowest_order: degenerate c list");

    const std::size_t len = static_cast<std::size_t>(m * (m - 1) / 2 + 4);
    const auto base = alpha_taylor_coefficients(sys, static_cast<int>(len) - 1);

    // entry (j, k): series of α_k(c_j t), coefficient of t^p is a_p(k) c_j^p
    std::vector<std::vector<std::vector<double>>> entry(
        static_cast<std::size_t>(m),
        std::vector<std::vector<double>>(static_cast<std::size_t>(m),
                                         std::vector<double>(len, 0.0)));
    for (int j = 0; j < m; ++j) {
        double cpow = 1.0;
        for (std::size_t p = 0; p < len; ++p) {
            for (int k = 0; k < m; ++k)
                entry[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)][p] =
                    base[p](k) * cpow;
            cpow *= c[static_cast<std::size_t>(j)];
        }
    }

    // Leibniz expansion of the determinant in series arithmetic
    std::vector<double> det(len, 0.0);
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<double> prod(len, 0.0);
        prod[0] = static_cast<double>(permutation_sign(perm));
        for (int j = 0; j < m; ++j)
            prod = series_mul(prod,
                              entry[static_cast<std::size_t>(j)]
                                   [static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])],
                              len);
        for (std::size_t p = 0; p < len; ++p) det[p] += prod[p];
    } while (std::next_permutation(perm.begin(), perm.end()));

    double max_abs = 0.0;
    for (double v : det) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs == 0.0)
        throw std::runtime_error("taylor_lowest_order: determinant series vanishes to working order");

    TaylorLowestOrder out;
    for (std::size_t p = 0; p < len; ++p) {
        if (std::abs(det[p]) > 1e-9 * max_abs) {
            out.order = static_cast<int>(p);
            out.coefficient = det[p];
            return out;
        }
    }
    throw std::runtime_error("taylor_lowest_order: no nonvanishing coefficient found");
}

namespace {

double bisect_zero(const AlphaSystem& sys, const std::vector<double>& c, AlphaMethod method,
                   double lo, double hi, double d_lo) {
    for (int iter = 0; iter < 80; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double d_mid = grid_determinant(sys, {c, mid}, method);
        if ((d_lo < 0.0) == (d_mid < 0.0)) {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TimeScaleSelection select_time_scale(const AlphaSystem& sys, const std::vector<double>& c,
                                     double T, int samples, AlphaMethod method) {
    const int m = sys.m;
    if (static_cast<int>(c.size()) != m)
        throw DimensionError("select_time_scale: c list length must equal the polynomial degree");
    if (T <= 0.0) throw std::invalid_argument("select_time_scale: T must be positive");
    if (samples < 2) throw std::invalid_argument("select_time_scale: samples must be >= 2");

    TimeScaleSelection sel;
    if (m == 1) {
        const double cm = c.back();
        sel.t_star = (cm > 0.0) ? 0.5 * T / cm : 0.5 * T;
        sel.det_value = alpha_at(sys, c.front() * sel.t_star, method)(0);
        return sel;
    }

    const double t_max = T / c.back();
    const double h = t_max / samples;

    std::vector<double> ts(static_cast<std::size_t>(samples));
    std::vector<double> dets(static_cast<std::size_t>(samples));
    double best_abs = 0.0;
    int best_idx = 0;
    for (int i = 0; i < samples; ++i) {
        const double t = (i + 1) * h;
        const double det = grid_determinant(sys, {c, t}, method);
        ts[static_cast<std::size_t>(i)] = t;
        dets[static_cast<std::size_t>(i)] = det;
        if (std::abs(det) > best_abs) {
            best_abs = std::abs(det);
            best_idx = i;
        }
    }
    if (best_abs < 1e-12)
        throw std::runtime_error(
            "select_time_scale: determinant below 1e-12 over the whole scan");

    // rows of [α_k(c_j t)] coincide at t = 0
    sel.zero_locations.push_back(0.0);
    const double near_zero = 1e-12 * best_abs;
    for (int i = 0; i < samples; ++i) {
        const double det = dets[static_cast<std::size_t>(i)];
        if (i > 0) {
            const double prev = dets[static_cast<std::size_t>(i - 1)];
            if (prev != 0.0 && det != 0.0 && (prev < 0.0) != (det < 0.0)) {
                sel.zero_locations.push_back(bisect_zero(
                    sys, c, method, ts[static_cast<std::size_t>(i - 1)],
                    ts[static_cast<std::size_t>(i)], prev));
                continue;
            }
        }
        if (std::abs(det) <= near_zero) sel.zero_locations.push_back(ts[static_cast<std::size_t>(i)]);
    }
    std::sort(sel.zero_locations.begin(), sel.zero_locations.end());

    // local refinement of the |det| maximizer (golden-section)
    double lo = (best_idx > 0) ? ts[static_cast<std::size_t>(best_idx - 1)] : h * 1e-6;
    double hi = (best_idx + 1 < samples) ? ts[static_cast<std::size_t>(best_idx + 1)] : t_max;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = std::abs(grid_determinant(sys, {c, x1}, method));
    double f2 = std::abs(grid_determinant(sys, {c, x2}, method));
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++iter) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = std::abs(grid_determinant(sys, {c, x2}, method));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = std::abs(grid_determinant(sys, {c, x1}, method));
        }
    }
    sel.t_star = 0.5 * (lo + hi);
    sel.det_value = grid_determinant(sys, {c, sel.t_star}, method);
    return sel;
}

double vandermonde_condition(const AlphaSystem& sys) {
    const int m = sys.m;
    RealMatrix V(m, m);
    for (int j = 0; j < m; ++j) {
        double p = 1.0;
        for (int k = 0; k < m; ++k) {
            V(j, k) = p;
            p *= sys.roots[static_cast<std::size_t>(j)];
        }
    }
    Eigen::JacobiSVD<RealMatrix> svd(V);
    const auto& sigma = svd.singularValues();
    if (sigma(m - 1) <= 0.0) return std::numeric_limits<double>::infinity();
    return sigma(0) / sigma(m - 1);
}

}  // namespace strobo
