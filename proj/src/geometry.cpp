#include "mmh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mmh/numerics.hpp"

namespace mmh {

using std::numbers::pi;

double los_probability(double r, double beta)
{
    if (r < 0.0)
        throw std::invalid_argument("los_probability: negative distance");
    return std::exp(-beta * r);
}

double los_mass(double x, double beta)
{
    if (x <= 0.0)
        return 0.0;
    const double y = beta * x;
    if (y < 0.5) {
        // 1 - e^-y (1 + y) = sum_{n>=2} (-1)^n (n-1) y^n / n!
        double term = y * y / 2.0;  // y^n / n! at n = 2
        double sum = term;
        for (int n = 3; n < 40; ++n) {
            term *= -y / n;
            const double add = (n - 1) * term;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum))
                break;
        }
        return sum / (beta * beta);
    }
    return (-std::expm1(-y) - y * std::exp(-y)) / (beta * beta);
}

double nlos_mass(double x, double beta)
{
    if (x <= 0.0)
        return 0.0;
    return 0.5 * x * x - los_mass(x, beta);
}

double rho_los_map(double x, const SystemParams& p)
{
    return std::pow(p.intercept_nlos / p.intercept_los, 1.0 / p.alpha_nlos) * std::pow(x, p.alpha_los / p.alpha_nlos);
}

double rho_nlos_map(double x, const SystemParams& p)
{
    return std::pow(p.intercept_los / p.intercept_nlos, 1.0 / p.alpha_los) * std::pow(x, p.alpha_nlos / p.alpha_los);
}

NearestPdf nearest_pdf(LinkState state, double x, const SystemParams& p)
{
    if (!(x > 0.0))
        throw std::invalid_argument("nearest_pdf: distance must be positive");
    const double lam = p.bs_density;
    const double beta = p.blockage_beta;
    if (state == LinkState::Los) {
        const double b = -std::expm1(-2.0 * pi * lam / (beta * beta));
        if (b == 0.0)
            return {0.0, 0.0};
        const double d = 2.0 * pi * lam * x * std::exp(-beta * x - 2.0 * pi * lam * los_mass(x, beta));
        return {d / b, b};
    }
    const double d = 2.0 * pi * lam * x * (-std::expm1(-beta * x)) * std::exp(-2.0 * pi * lam * nlos_mass(x, beta));
    return {d, 1.0};
}

double serving_joint_density(LinkState state, double x, const SystemParams& p)
{
    if (!(x > 0.0))
        return 0.0;
    const double lam = p.bs_density;
    const double beta = p.blockage_beta;
    if (state == LinkState::Los) {
        const double e = beta * x + 2.0 * pi * lam * (los_mass(x, beta) + nlos_mass(rho_los_map(x, p), beta));
        return 2.0 * pi * lam * x * std::exp(-e);
    }
    const double e = 2.0 * pi * lam * (nlos_mass(x, beta) + los_mass(rho_nlos_map(x, p), beta));
    return 2.0 * pi * lam * x * (-std::expm1(-beta * x)) * std::exp(-e);
}

AssociationLaw association_probability(const SystemParams& p)
{
    p.validate();
    QuadratureSpec spec;
    spec.rel_tol = 1e-11;
    spec.abs_tol = 1e-15;
    spec.semi_infinite_scale = 1.0 / std::sqrt(pi * p.bs_density);
    AssociationLaw law;
    law.b_los = -std::expm1(-2.0 * pi * p.bs_density / (p.blockage_beta * p.blockage_beta));
    law.b_nlos = 1.0;
    const double rho = integrate([&](double x) { return serving_joint_density(LinkState::Los, x, p); }, 0.0, kInf, spec);
    law.rho_los = std::clamp(rho, 0.0, 1.0);
    law.rho_nlos = 1.0 - law.rho_los;
    return law;
}

double serving_distance_pdf(LinkState state, double x, const SystemParams& p, const AssociationLaw& law)
{
    if (!(x > 0.0))
        throw std::invalid_argument("serving_distance_pdf: distance must be positive");
    const double rho = state == LinkState::Los ? law.rho_los : law.rho_nlos;
    if (rho == 0.0)
        return 0.0;
    return serving_joint_density(state, x, p) / rho;
}

double serving_distance_pdf(LinkState state, double x, const SystemParams& p)
{
    return serving_distance_pdf(state, x, p, association_probability(p));
}

double los_ball_radius(double rho_los, double lambda)
{
    if (!(rho_los > 0.0 && rho_los < 1.0))
        throw std::invalid_argument("los_ball_radius: rho_los must lie strictly inside (0, 1)");
    if (!(lambda > 0.0))
        throw std::invalid_argument("los_ball_radius: density must be positive");
    return std::sqrt(-std::log1p(-rho_los) / (lambda * pi));
}

double los_ball_serving_pdf(double x, double rho_los, double lambda)
{
    const double rb = los_ball_radius(rho_los, lambda);
    if (x < 0.0 || x > rb)
        return 0.0;
    return 2.0 * pi * lambda * x * std::exp(-lambda * pi * x * x) / rho_los;
}

NetworkGeometry::NetworkGeometry(const SystemParams& params) : params_(params), law_(association_probability(params)) {}

double NetworkGeometry::distance_scale() const
{
    return 1.0 / std::sqrt(pi * params_.bs_density);
}

}  // namespace mmh
