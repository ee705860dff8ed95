#include "nbtrade/access.hpp"

#include "nbtrade/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nbtrade {

namespace {

void check_params(const AccessParams& p)
{
    if (p.n_preambles < 1 || p.n_preambles > 48)
        throw std::domain_error("n_preambles must lie in [1,48]");
    if (p.max_attempts < 1)
        throw std::domain_error("max_attempts must be >= 1");
    if (!(p.nprach_period_s > 0.0) || !(p.npdcch_interval_s > 0.0) ||
        !(p.ra_msg_offset_s > 0.0) || !(p.rar_unit_s > 0.0))
        throw std::domain_error("access timing constants must be positive");
    if (!(p.sched_fraction > 0.0 && p.sched_fraction <= 1.0))
        throw std::domain_error("sched_fraction must lie in (0,1]");
    if (p.backlog_q < 0.0)
        throw std::domain_error("backlog_q must be >= 0");
}

// Expected attempts consumed per fresh arrival before success or drop,
// sum_{l=0}^{N-1} (1-P)^l.  The explicit sum stays exact as P -> 0, where
// the closed form (1-(1-P)^N)/P cancels catastrophically.
double attempts_per_arrival(double p_rr, int max_attempts)
{
    double q = 1.0 - p_rr;
    double sum = 0.0;
    double term = 1.0;
    for (int l = 0; l < max_attempts; ++l) {
        sum += term;
        term *= q;
    }
    return sum;
}

} // namespace

double collision_probability(double lambda_tot, int n_preambles)
{
    if (!(lambda_tot >= 0.0))
        throw std::domain_error("lambda_tot must be >= 0");
    if (n_preambles < 1)
        throw std::domain_error("n_preambles must be >= 1");
    return -std::expm1(-lambda_tot / static_cast<double>(n_preambles));
}

ContentionSolution solve_contention(double p_d, double offered_load,
                                    const AccessParams& params)
{
    check_params(params);
    if (!(p_d >= 0.0 && p_d <= 1.0))
        throw std::domain_error("p_d must lie in [0,1]");
    if (!(offered_load >= 0.0))
        throw std::domain_error("offered_load must be >= 0");

    int n = params.max_attempts;
    double k = static_cast<double>(params.n_preambles);
    ContentionSolution sol;
    sol.lambda_by_attempt.assign(static_cast<std::size_t>(n), 0.0);

    if (offered_load == 0.0) {
        sol.p_rr = p_d;
        sol.lambda_tot = 0.0;
        sol.p_access_failure = std::pow(1.0 - p_d, n);
        return sol;
    }

    auto success_at = [&](double lambda_tot) {
        return p_d * std::exp(-lambda_tot / k);
    };
    auto total_load = [&](double lambda_tot) {
        return offered_load * attempts_per_arrival(success_at(lambda_tot), n);
    };

    double x = 0.0;
    if (p_d == 0.0) {
        // Every attempt fails on the link; the retry cascade runs to the cap.
        x = offered_load * n;
    } else {
        // total_load(x) - x changes sign across [lambda_a, N*lambda_a]:
        // attempts_per_arrival is >= 1 at the left end and <= N at the right.
        double lo = offered_load;
        double hi = offered_load * n;
        if (total_load(lo) <= lo) {
            x = lo;
        } else {
            for (int iter = 0; iter < 200; ++iter) {
                double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                if (total_load(mid) > mid)
                    lo = mid;
                else
                    hi = mid;
            }
            x = 0.5 * (lo + hi);
        }
        double residual = std::abs(total_load(x) - x) / std::max(x, 1.0);
        if (residual > params.solver_tol)
            throw NumericError("contention fixed point residual " +
                               std::to_string(residual) + " exceeds tolerance at load " +
                               std::to_string(offered_load));
    }

    sol.lambda_tot = x;
    sol.p_rr = success_at(x);
    double q = 1.0 - sol.p_rr;
    double rate = offered_load;
    for (int l = 0; l < n; ++l) {
        sol.lambda_by_attempt[static_cast<std::size_t>(l)] = rate;
        rate *= q;
    }
    sol.p_access_failure = std::pow(q, n);
    return sol;
}

double ra_control_latency(const AccessParams& params)
{
    return 0.5 * params.ra_msg_offset_s + params.nprach_period_s;
}

double rar_latency(const AccessParams& params)
{
    return 0.5 * params.npdcch_interval_s +
           0.5 * params.backlog_q * params.sched_fraction * params.rar_unit_s +
           params.rar_unit_s;
}

double resource_reservation_latency(const ContentionSolution& sol,
                                    const AccessParams& params)
{
    double per_attempt = ra_control_latency(params) + rar_latency(params);
    double p = sol.p_rr;
    double q = 1.0 - p;
    double sum = 0.0;
    double weight = p; // (1-P)^(l-1) * P
    for (int l = 1; l <= params.max_attempts; ++l) {
        sum += weight * static_cast<double>(l) * per_attempt;
        weight *= q;
    }
    return sum;
}

double ra_energy(const AccessParams& params, const EnergyProfile& prof)
{
    double wait = ra_control_latency(params) - params.nprach_period_s;
    return wait * prof.p_idle_w +
           params.nprach_period_s *
               (prof.p_circuit_w + prof.amp_efficiency * prof.p_tx_w);
}

double rar_energy(const AccessParams& params, const EnergyProfile& prof)
{
    return prof.p_listen_w * rar_latency(params);
}

double resource_reservation_energy(const ContentionSolution& sol,
                                   const AccessParams& params,
                                   const EnergyProfile& prof, RaEnergyMode mode)
{
    double per_attempt = ra_energy(params, prof) + rar_energy(params, prof);
    double p = sol.p_rr;
    double q = 1.0 - p;
    double sum = 0.0;
    double weight = p;
    for (int l = 1; l <= params.max_attempts; ++l) {
        double factor = mode == RaEnergyMode::weighted ? static_cast<double>(l) : 1.0;
        sum += weight * factor * per_attempt;
        weight *= q;
    }
    return sum;
}

} // namespace nbtrade
