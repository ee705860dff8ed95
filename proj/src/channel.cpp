#include "nbtrade/channel.hpp"

#include "nbtrade/errors.hpp"
#include "nbtrade/mathutil.hpp"

#include <cmath>
#include <stdexcept>

namespace nbtrade {

namespace {

// 10*log10 of the distance-independent link budget factor
// P_t*G_t*G_r*c^2 / (4*pi*f)^2.
double budget_db(const RadioEnvironment& env)
{
    double fourpif = 4.0 * M_PI * env.carrier_hz;
    return 10.0 * (std::log10(env.tx_power_w * env.gain_tx * env.gain_rx) +
                   2.0 * std::log10(kSpeedOfLight) - 2.0 * std::log10(fourpif));
}

void check_distance(double distance_m)
{
    if (!(distance_m > 0.0))
        throw std::domain_error("distance must be positive");
}

} // namespace

double received_power_db(const RadioEnvironment& env, double distance_m)
{
    check_distance(distance_m);
    return budget_db(env) - 10.0 * env.path_loss_exp * std::log10(distance_m);
}

double delivery_probability(const RadioEnvironment& env, double distance_m)
{
    check_distance(distance_m);
    double margin_db = received_power_db(env, distance_m) -
                       10.0 * std::log10(env.sensitivity_w);
    if (env.shadow_sigma_db == 0.0)
        return margin_db >= 0.0 ? 1.0 : 0.0;
    // Outage when the shadowing draw eats the whole margin.
    return q_function(-margin_db / env.shadow_sigma_db);
}

double coverage_edge_distance_m(const RadioEnvironment& env)
{
    double margin_at_1m_db = budget_db(env) - 10.0 * std::log10(env.sensitivity_w);
    return std::pow(10.0, margin_at_1m_db / (10.0 * env.path_loss_exp));
}

double mean_delivery_probability(const RadioEnvironment& env)
{
    double radius = env.cell_radius_m;
    if (!(radius > 0.0))
        throw std::domain_error("cell radius must be positive");
    if (env.shadow_sigma_db == 0.0) {
        // Deterministic coverage disk of radius d*; the average is an area ratio.
        double edge = coverage_edge_distance_m(env);
        if (edge >= radius)
            return 1.0;
        return (edge * edge) / (radius * radius);
    }
    double r2 = radius * radius;
    double mean = integrate(
        [&](double r) {
            if (r <= 0.0)
                return 0.0;
            return delivery_probability(env, r) * 2.0 * r / r2;
        },
        0.0, radius, 1e-12);
    if (mean < 0.0)
        mean = 0.0;
    if (mean > 1.0)
        mean = 1.0;
    return mean;
}

double resolved_delivery_probability(const RadioEnvironment& env, PdMode mode,
                                     double representative_distance_m)
{
    if (mode == PdMode::cell_average)
        return mean_delivery_probability(env);
    return delivery_probability(env, representative_distance_m);
}

ArrivalRates arrival_rates(const PopulationModel& pop, double p_d)
{
    if (!(p_d >= 0.0 && p_d <= 1.0))
        throw std::domain_error("p_d must lie in [0,1]");
    ArrivalRates rates;
    rates.sellers_per_day = pop.n_sellers * pop.sessions_per_day * pop.p_sell * p_d;
    rates.buyers_per_day = pop.n_buyers * pop.sessions_per_day * pop.p_buy * p_d;
    return rates;
}

} // namespace nbtrade
