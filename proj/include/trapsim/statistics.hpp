#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "trapsim/environment.hpp"
#include "trapsim/quasistable.hpp"
#include "trapsim/random_stream.hpp"
#include "trapsim/sampling.hpp"

namespace trapsim {

class EmpiricalCDF {
public:
    explicit EmpiricalCDF(std::vector<double> sample);
    double operator()(double x) const;  // fraction of sample <= x
    std::size_t size() const noexcept { return sorted_.size(); }
    const std::vector<double>& sorted() const noexcept { return sorted_; }

private:
    std::vector<double> sorted_;
};

struct KsResult {
    double stat;
    double p_value;
};

// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);
KsResult ks_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b);
KsResult ks_one_sample(const EmpiricalCDF& a, const std::function<double(double)>& cdf);

struct Estimate {
    double value = 0.0;
    double se = 0.0;
    std::int64_t count = 0;
};
Estimate binomial_estimate(std::int64_t successes, std::int64_t trials);
Estimate mean_estimate(const std::vector<double>& values);
// |a - b| in units of sqrt(se_a^2 + se_b^2); 0 when both are exact.
double joint_z(const Estimate& a, const Estimate& b);

// R on a theta grid with per-replica indicators, so that linear functionals
// of the curve get standard errors from their per-replica values.
struct AgingCurve {
    std::string provenance;
    std::vector<double> thetas;
    std::vector<double> values;
    std::vector<double> se;
    std::vector<std::vector<double>> per_replica;  // [replica][theta]

    double operator()(double theta) const;
    static AgingCurve from_replicas(std::string provenance, std::vector<double> thetas,
                                    std::vector<std::vector<double>> per_replica);
    AgingCurve replica(std::size_t i) const;
};

Estimate estimate_R_prelimit(const StepLaw& law, double alpha, double t, double s, std::int64_t replicas,
                             const RandomStream& rng);
Estimate estimate_R_limit(double theta, std::int64_t replicas, const QuasistableConfig& cfg, const RandomStream& rng,
                          double t = 1.0);
// One limit path per replica, evaluated at s and s(1+theta) with s = min(1, 2/(1+theta)).
AgingCurve estimate_R_curve(const std::vector<double>& thetas, std::int64_t replicas, const QuasistableConfig& cfg,
                            const RandomStream& rng);

struct FormulaResult {
    double value;
    double tail_residual;  // weight given to the unobserved tail beyond the curve
};
FormulaResult integrated_aging_formula(double theta, double pi, const std::function<double(double)>& R,
                                       double theta_max = 0.0);
FormulaResult integrated_aging_formula(double theta, double pi, const AgingCurve& curve);
// Formula applied to each replica's indicator curve; exact by linearity.
Estimate integrated_aging_formula_estimate(double theta, double pi, const AgingCurve& curve);

// MC of 1{X(mu T) = X(mu T + theta mu S)} with (T,S) ~ BE(pi) and mu = scale;
// replica i uses one trajectory for every pi.
std::vector<Estimate> integrated_aging_mc(double theta, const std::vector<double>& pis, double scale,
                                          const StepLaw& law, double alpha, std::int64_t replicas,
                                          const RandomStream& rng);

Estimate estimate_Omega_prelimit(const StepLaw& law, double alpha, double t, double s, std::int64_t replicas,
                                 const RandomStream& rng);
Estimate estimate_Omega_limit(double t, double s, std::int64_t replicas, const QuasistableConfig& cfg,
                              const RandomStream& rng);

struct LocalizationProfile {
    std::string environment;
    std::vector<double> times;
    std::vector<double> q;
    std::int64_t replicas = 0;
};
LocalizationProfile localization_profile(const std::shared_ptr<const TrapField>& field, const StepLaw& law,
                                         const std::vector<double>& times, std::int64_t replicas,
                                         const RandomStream& rng);

struct MaxTrapCheck {
    EmpiricalCDF ecdf;
    double ks_vs_limit;
    double ks_vs_exact;
};
double max_trap_limit_cdf(double x, double alpha);
double max_trap_exact_cdf(double x, double alpha, double b_n, std::int64_t sites);
MaxTrapCheck max_trap_law_check(std::int64_t n, double alpha, double beta, std::int64_t replicas,
                                const RandomStream& rng);

}  // namespace trapsim
