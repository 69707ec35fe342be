#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cell.hpp"
#include "rational.hpp"

namespace mrlbm {

/// Centered polynomial prediction of half-width gamma (order 2*gamma+1).
/// Coefficients are the exact rationals reproduced by
/// derive_prediction_weights; doubles are derived from them once.
struct PredictionConfig {
    int gamma = 1;
    std::array<Rational, 3> c_exact{};
    std::array<double, 3> c{};

    static PredictionConfig make(int gamma)
    {
        PredictionConfig cfg;
        cfg.gamma = gamma;
        switch (gamma)
        {
            case 1:
                cfg.c_exact = {Rational(-1, 8), Rational(0), Rational(0)};
                break;
            case 2:
                cfg.c_exact = {Rational(-22, 128), Rational(3, 128), Rational(0)};
                break;
            case 3:
                cfg.c_exact = {Rational(-201, 1024), Rational(11, 256), Rational(-5, 1024)};
                break;
            default:
                throw std::invalid_argument("PredictionConfig: gamma must be 1, 2 or 3");
        }
        for (int a = 0; a < 3; ++a)
        {
            cfg.c[a] = cfg.c_exact[a].to_double();
        }
        return cfg;
    }

    int order() const { return 2 * gamma + 1; }
};

/// Average of the 2^D children means: the unique mean-conserving coarsening.
template <int D>
double project(const std::array<double, (1 << D)>& child_values)
{
    double s = 0.0;
    for (double v : child_values)
    {
        s += v;
    }
    return s / static_cast<double>(1 << D);
}

namespace detail {

    template <class At>
    double q1(At&& at, int axis, const PredictionConfig& cfg, std::array<std::int64_t, 3> base = {})
    {
        double s = 0.0;
        for (int a = 1; a <= cfg.gamma; ++a)
        {
            auto plus = base;
            auto minus = base;
            plus[axis] += a;
            minus[axis] -= a;
            s += cfg.c[a - 1] * (at(plus) - at(minus));
        }
        return s;
    }

    template <class At>
    double q2(At&& at, int ax1, int ax2, const PredictionConfig& cfg)
    {
        double s = 0.0;
        for (int a = 1; a <= cfg.gamma; ++a)
        {
            for (int b = 1; b <= cfg.gamma; ++b)
            {
                std::array<std::int64_t, 3> pp{}, mp{}, pm{}, mm{};
                pp[ax1] = a;
                pp[ax2] = b;
                mp[ax1] = -a;
                mp[ax2] = b;
                pm[ax1] = a;
                pm[ax2] = -b;
                mm[ax1] = -a;
                mm[ax2] = -b;
                s += cfg.c[a - 1] * cfg.c[b - 1] * (at(pp) - at(mp) - at(pm) + at(mm));
            }
        }
        return s;
    }

    template <class At>
    double q3(At&& at, const PredictionConfig& cfg)
    {
        double s = 0.0;
        for (int a = 1; a <= cfg.gamma; ++a)
        {
            for (int b = 1; b <= cfg.gamma; ++b)
            {
                for (int t = 1; t <= cfg.gamma; ++t)
                {
                    const double w = cfg.c[a - 1] * cfg.c[b - 1] * cfg.c[t - 1];
                    double acc = 0.0;
                    for (int sx = 0; sx < 2; ++sx)
                    {
                        for (int sy = 0; sy < 2; ++sy)
                        {
                            for (int sz = 0; sz < 2; ++sz)
                            {
                                const std::array<std::int64_t, 3> o{sx ? -a : a, sy ? -b : b, sz ? -t : t};
                                const int sign = ((sx + sy + sz) % 2 == 0) ? 1 : -1;
                                acc += sign * at(o);
                            }
                        }
                    }
                    s += w * acc;
                }
            }
        }
        return s;
    }

} // namespace detail

/// Predicted child mean for child selector delta in {0,1}^D. The accessor is
/// called with offsets (in [-gamma, gamma]^D, padded to 3 components) relative
/// to the parent cell and must return the level-l mean there.
///
/// Axis, plane and triple correction terms enter with alternating signs; the
/// plane term is subtracted, which distinguishes this operator from the plain
/// tensor-product reconstruction (the d = 2 weight fan of the one-hot tests
/// pins the convention).
template <int D, class At>
double predict(At&& at, const std::array<int, D>& delta, const PredictionConfig& cfg)
{
    auto sign = [&](int axis) { return delta[axis] == 0 ? 1.0 : -1.0; };
    const double center = at(std::array<std::int64_t, 3>{});

    if constexpr (D == 1)
    {
        return center + sign(0) * detail::q1(at, 0, cfg);
    }
    else if constexpr (D == 2)
    {
        const double qx = detail::q1(at, 0, cfg);
        const double qy = detail::q1(at, 1, cfg);
        const double qxy = detail::q2(at, 0, 1, cfg);
        return center + sign(0) * qx + sign(1) * qy - sign(0) * sign(1) * qxy;
    }
    else
    {
        static_assert(D == 3);
        const double qx = detail::q1(at, 0, cfg);
        const double qy = detail::q1(at, 1, cfg);
        const double qz = detail::q1(at, 2, cfg);
        const double qxy = detail::q2(at, 0, 1, cfg);
        const double qxz = detail::q2(at, 0, 2, cfg);
        const double qyz = detail::q2(at, 1, 2, cfg);
        const double qxyz = detail::q3(at, cfg);
        return center + sign(0) * qx + sign(1) * qy + sign(2) * qz - sign(0) * sign(1) * qxy
             - sign(0) * sign(2) * qxz - sign(1) * sign(2) * qyz + sign(0) * sign(1) * sign(2) * qxyz;
    }
}

/// Projection applied to the 2^D predicted children must return the parent
/// value: the correction terms are antisymmetric in each delta component.
template <int D, class At>
bool consistency_check(double parent_value, At&& at, const PredictionConfig& cfg, double rel_tol = 1e-13)
{
    double mean = 0.0;
    std::array<int, D> delta{};
    for (int s = 0; s < (1 << D); ++s)
    {
        for (int i = 0; i < D; ++i)
        {
            delta[i] = (s >> (D - 1 - i)) & 1;
        }
        mean += predict<D>(at, delta, cfg);
    }
    mean /= static_cast<double>(1 << D);
    const double scale = std::max(std::abs(parent_value), 1.0);
    return std::abs(mean - parent_value) <= rel_tol * scale;
}

/// Recovers the prediction coefficients c_1..c_gamma from first principles:
/// fit the degree-2*gamma reconstruction polynomial by matching cell means on
/// the centered stencil, average it over the left child, and read off the
/// antisymmetric weights. Exact rational arithmetic throughout.
inline std::vector<Rational> derive_prediction_weights(int gamma)
{
    if (gamma < 1 || gamma > 3)
    {
        throw std::invalid_argument("derive_prediction_weights: gamma must be 1, 2 or 3");
    }
    const int n = 2 * gamma + 1;

    // Mean of x^m over [a, b) divided by (b - a), with cells of unit width
    // centered on the integers.
    auto moment = [](int m, const Rational& a, const Rational& b)
    {
        Rational pa(1), pb(1);
        for (int i = 0; i < m + 1; ++i)
        {
            pa *= a;
            pb *= b;
        }
        return (pb - pa) / (Rational(m + 1) * (b - a));
    };

    // T[row][m]: mean of x^m over cell row - gamma.
    std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n));
    for (int row = 0; row < n; ++row)
    {
        const Rational lo(2 * (row - gamma) - 1, 2);
        const Rational hi(2 * (row - gamma) + 1, 2);
        for (int m = 0; m < n; ++m)
        {
            t[row][m] = moment(m, lo, hi);
        }
    }

    // Invert T by Gauss-Jordan elimination over the rationals.
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
    {
        inv[i][i] = Rational(1);
    }
    for (int col = 0; col < n; ++col)
    {
        int piv = -1;
        for (int r = col; r < n; ++r)
        {
            if (!t[r][col].is_zero())
            {
                piv = r;
                break;
            }
        }
        if (piv < 0)
        {
            throw std::domain_error("derive_prediction_weights: singular moment system");
        }
        std::swap(t[piv], t[col]);
        std::swap(inv[piv], inv[col]);
        const Rational d = t[col][col];
        for (int j = 0; j < n; ++j)
        {
            t[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < n; ++r)
        {
            if (r == col || t[r][col].is_zero())
            {
                continue;
            }
            const Rational f = t[r][col];
            for (int j = 0; j < n; ++j)
            {
                t[r][j] -= f * t[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }

    // Mean of the reconstruction polynomial over the left child [-1/2, 0).
    std::vector<Rational> child(n);
    for (int m = 0; m < n; ++m)
    {
        child[m] = moment(m, Rational(-1, 2), Rational(0));
    }

    // Weight of the stencil value at offset s in the left-child mean.
    std::vector<Rational> w(n);
    for (int s = 0; s < n; ++s)
    {
        Rational acc(0);
        for (int m = 0; m < n; ++m)
        {
            acc += child[m] * inv[m][s];
        }
        w[s] = acc;
    }

    if (w[gamma] != Rational(1))
    {
        throw std::domain_error("derive_prediction_weights: central weight is not one");
    }
    std::vector<Rational> coeffs(gamma);
    for (int a = 1; a <= gamma; ++a)
    {
        if (w[gamma + a] != -w[gamma - a])
        {
            throw std::domain_error("derive_prediction_weights: weights are not antisymmetric");
        }
        coeffs[a - 1] = w[gamma + a];
    }
    return coeffs;
}

} // namespace mrlbm
