#include "trapsim/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "trapsim/csv.hpp"

namespace trapsim {

// ---------------------------------------------------------------- TrapField

TrapField::TrapField(TrapLaw law, RandomStream stream) : law_(law), stream_(std::move(stream)) {}

TrapField::TrapField(TrapLaw law, RandomStream stream, std::map<std::int64_t, double> fixed)
    : law_(law), stream_(std::move(stream)), fixed_(std::move(fixed)) {
    for (const auto& [site, d] : fixed_)
        if (!(d >= 1.0)) throw std::invalid_argument("trap field: prescribed depth below 1");
}

double TrapField::draw(std::int64_t site) const {
    if (auto it = fixed_.find(site); it != fixed_.end()) return it->second;
    return trap_depth_from_uniform(law_.alpha, stream_.uniform_at(zigzag(site)));
}

double TrapField::depth_at(std::int64_t site) const {
    Stripe& s = stripes_[mix64(static_cast<std::uint64_t>(site)) % kStripes];
    std::lock_guard<std::mutex> lock(s.mu);
    auto [it, inserted] = s.memo.try_emplace(site, 0.0);
    if (inserted) it->second = draw(site);
    return it->second;
}

std::size_t TrapField::materialized() const {
    std::size_t n = 0;
    for (auto& s : stripes_) {
        std::lock_guard<std::mutex> lock(s.mu);
        n += s.memo.size();
    }
    return n;
}

std::int64_t TrapField::window() const {
    std::int64_t w = 0;
    for (auto& s : stripes_) {
        std::lock_guard<std::mutex> lock(s.mu);
        for (const auto& kv : s.memo) w = std::max(w, kv.first < 0 ? -kv.first : kv.first);
    }
    return w;
}

std::vector<std::pair<std::int64_t, double>> TrapField::snapshot() const {
    std::vector<std::pair<std::int64_t, double>> out;
    for (auto& s : stripes_) {
        std::lock_guard<std::mutex> lock(s.mu);
        out.insert(out.end(), s.memo.begin(), s.memo.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

void TrapField::export_csv(std::ostream& os) const {
    os << "site,depth\n";
    for (const auto& [site, d] : snapshot()) os << site << ',' << format_double(d) << '\n';
}

// -------------------------------------------------------------- DeepTrapSet

DeepTrapSet DeepTrapSet::sample(double alpha, double delta, double window, const RandomStream& rng) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("deep traps: alpha must lie in (0,1)");
    if (!(delta > 0.0)) throw std::invalid_argument("deep traps: delta must be positive");
    if (!(window > 0.0)) throw std::invalid_argument("deep traps: window must be positive");
    DeepTrapSet s;
    s.alpha_ = alpha;
    s.delta_ = delta;
    s.window_ = window;
    s.floor_ = delta;
    s.regions_.push_back(Region{rng.child("region/0"), 0.0, window});
    s.grow(s.regions_.back(), delta);
    s.rebuild_sorted();
    return s;
}

DeepTrapSet DeepTrapSet::from_jumps(double alpha, double delta, double window, std::vector<double> x,
                                    std::vector<double> v) {
    if (x.size() != v.size()) throw std::invalid_argument("deep traps: positions and depths differ in length");
    DeepTrapSet s;
    s.alpha_ = alpha;
    s.delta_ = delta;
    s.window_ = window;
    s.floor_ = delta;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(v[i] > delta)) throw std::invalid_argument("deep traps: depth not above delta");
        if (std::abs(x[i]) > window) throw std::invalid_argument("deep traps: position outside the window");
        s.jumps_.emplace_back(x[i], v[i]);
    }
    s.rebuild_sorted();
    return s;
}

void DeepTrapSet::grow(Region& r, double delta) {
    // Jump k of the region: Gamma_k = sum of k unit exponentials, v_k decreasing in k.
    const double length = 2.0 * (r.outer - r.inner);
    for (;;) {
        const std::uint64_t k = r.count;
        const double e = -std::log(r.rng.uniform_at(2 * k));
        const double gamma = r.gamma + e;
        const double v = std::pow(gamma / length, -1.0 / alpha_);
        if (!(v > delta)) break;
        const double u = r.rng.uniform_at(2 * k + 1);
        // u in (0,1) spread over the two intervals inner < |x| <= outer.
        const double w = r.outer - r.inner;
        const double pos = u < 0.5 ? -(r.inner + (0.5 - u) * 2.0 * w) : r.inner + (u - 0.5) * 2.0 * w;
        jumps_.emplace_back(pos, v);
        r.gamma = gamma;
        r.count = k + 1;
    }
}

void DeepTrapSet::rebuild_sorted() {
    std::vector<std::pair<double, double>> kept;
    kept.reserve(jumps_.size());
    for (const auto& j : jumps_)
        if (j.second > delta_) kept.push_back(j);
    std::sort(kept.begin(), kept.end());
    x_.resize(kept.size());
    v_.resize(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        x_[i] = kept[i].first;
        v_[i] = kept[i].second;
    }
}

DeepTrapSet DeepTrapSet::restrict(double delta2) const {
    if (!(delta2 >= delta_)) throw std::invalid_argument("deep traps: restrict needs delta2 >= delta");
    DeepTrapSet s = *this;
    s.delta_ = delta2;
    s.rebuild_sorted();
    return s;
}

DeepTrapSet DeepTrapSet::refine(double delta2) const {
    if (!(delta2 > 0.0)) throw std::invalid_argument("deep traps: delta must be positive");
    if (delta2 < floor_ && regions_.empty()) throw std::logic_error("deep traps: fixed jump sets cannot be refined");
    DeepTrapSet s = *this;
    if (delta2 < floor_) {
        for (auto& r : s.regions_) s.grow(r, delta2);
        s.floor_ = delta2;
    }
    s.delta_ = delta2;
    s.rebuild_sorted();
    return s;
}

DeepTrapSet DeepTrapSet::extend_window(double window2) const {
    if (!(window2 > window_)) return *this;
    if (regions_.empty()) throw std::logic_error("deep traps: fixed jump sets cannot be extended");
    DeepTrapSet s = *this;
    s.regions_.push_back(Region{regions_.front().rng.child("annulus/" + std::to_string(regions_.size())),
                                window_, window2});
    s.grow(s.regions_.back(), floor_);
    s.window_ = window2;
    s.rebuild_sorted();
    return s;
}

std::pair<std::size_t, std::size_t> DeepTrapSet::range(double lo, double hi) const {
    auto a = std::lower_bound(x_.begin(), x_.end(), lo);
    auto b = std::lower_bound(a, x_.end(), hi);
    return {static_cast<std::size_t>(a - x_.begin()), static_cast<std::size_t>(b - x_.begin())};
}

void DeepTrapSet::export_csv(std::ostream& os) const {
    os << "x,v\n";
    for (std::size_t i = 0; i < x_.size(); ++i) os << format_double(x_[i]) << ',' << format_double(v_[i]) << '\n';
}

double small_jump_mass(double alpha, double delta, double window) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("small jump mass: alpha must lie in (0,1)");
    if (delta <= 0.0) return 0.0;
    return 2.0 * window * alpha * std::pow(delta, 1.0 - alpha) / (1.0 - alpha);
}

// ------------------------------------------------------------- CouplingMaps

namespace {

constexpr std::size_t kTableNodes = 4096;

// log A(u) for the Zolotarev-Kanter representation; uc is the signed distance
// from u to the nearer endpoint as supplied by tanh_sinh.
double log_zolotarev_a(double alpha, double u, double uc) {
    const double one_minus = 1.0 - alpha;
    if (u < 1e-7) return (alpha / one_minus) * std::log(alpha) + std::log(one_minus);
    const double sin_u = (uc > 0.0) ? std::sin(uc) : std::sin(u);
    const double s_a = std::sin(alpha * u);
    const double s_b = std::sin(one_minus * u);
    return (std::log(s_a) - std::log(sin_u)) / one_minus + std::log(s_b) - std::log(s_a);
}

}  // namespace

CouplingMaps::CouplingMaps(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("coupling maps: alpha must lie in (0,1)");
    kappa_ = std::pow(std::tgamma(1.0 - alpha), 1.0 / alpha);
    const double ratio = alpha / (1.0 - alpha);
    const double log_a0 = ratio * std::log(alpha) + std::log(1.0 - alpha);
    // Lower end where F is about e^-600, upper end where the tail series takes over.
    lx_lo_ = (log_a0 - std::log(600.0)) / ratio;
    lx_hi_ = std::log(20.0) / alpha;
    std::vector<double> lx(kTableNodes), lf(kTableNodes), ls(kTableNodes);
    for (std::size_t i = 0; i < kTableNodes; ++i) {
        lx[i] = lx_lo_ + (lx_hi_ - lx_lo_) * static_cast<double>(i) / static_cast<double>(kTableNodes - 1);
        if (i + 1 == kTableNodes) lx[i] = lx_hi_;
        const double x = std::exp(lx[i]);
        lf[i] = std::log(cdf_direct(x));
        ls[i] = std::log(survival_direct(x));
    }
    std::vector<double> lx2 = lx;
    log_cdf_ = std::make_unique<boost::math::interpolators::pchip<std::vector<double>>>(std::move(lx), std::move(lf));
    log_sf_ = std::make_unique<boost::math::interpolators::pchip<std::vector<double>>>(std::move(lx2), std::move(ls));
}

std::shared_ptr<const CouplingMaps> CouplingMaps::shared(double alpha) {
    static std::mutex mu;
    static std::map<double, std::shared_ptr<const CouplingMaps>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[alpha];
    if (!slot) slot = std::make_shared<const CouplingMaps>(alpha);
    return slot;
}

double CouplingMaps::cdf_direct(double x) const {
    if (!(x > 0.0)) return 0.0;
    const double ly = -alpha_ / (1.0 - alpha_) * std::log(x);
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [&](double u, double uc) { return std::exp(-std::exp(log_zolotarev_a(alpha_, u, uc) + ly)); };
    return integrator.integrate(f, 0.0, std::numbers::pi, 1e-12) / std::numbers::pi;
}

double CouplingMaps::survival_direct(double x) const {
    if (!(x > 0.0)) return 1.0;
    if (std::pow(x, -alpha_) < 0.05) return series_survival(x);
    const double ly = -alpha_ / (1.0 - alpha_) * std::log(x);
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [&](double u, double uc) { return -std::expm1(-std::exp(log_zolotarev_a(alpha_, u, uc) + ly)); };
    return integrator.integrate(f, 0.0, std::numbers::pi, 1e-12) / std::numbers::pi;
}

double CouplingMaps::series_survival(double x) const {
    // Convergent expansion of the tail; leading term x^-alpha / Gamma(1-alpha).
    const double z = std::pow(x, -alpha_);
    double sum = 0.0, zk = 1.0;
    for (int k = 1; k <= 60; ++k) {
        zk *= z;
        const double lg = std::lgamma(alpha_ * k) - std::lgamma(k + 1.0);
        const double term = std::exp(lg) * std::sin(std::numbers::pi * alpha_ * k) * zk;
        sum += (k % 2 == 1) ? term : -term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / std::numbers::pi;
}

double CouplingMaps::log_cdf_table(double lx) const {
    if (lx < lx_lo_) return std::log(cdf_direct(std::exp(lx)));
    if (lx > lx_hi_) return std::log1p(-series_survival(std::exp(lx)));
    return (*log_cdf_)(lx);
}

double CouplingMaps::log_sf_table(double lx) const {
    if (lx < lx_lo_) return std::log1p(-cdf_direct(std::exp(lx)));
    if (lx > lx_hi_) return std::log(series_survival(std::exp(lx)));
    return (*log_sf_)(lx);
}

double CouplingMaps::cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    const double lx = std::log(x);
    const double lf = log_cdf_table(lx);
    if (lf < -std::numbers::ln2) return std::exp(lf);
    return -std::expm1(log_sf_table(lx));
}

double CouplingMaps::survival(double x) const {
    if (!(x > 0.0)) return 1.0;
    const double lx = std::log(x);
    const double ls = log_sf_table(lx);
    if (ls < -std::numbers::ln2) return std::exp(ls);
    return -std::expm1(log_cdf_table(lx));
}

namespace {

template <class F>
double solve_increasing(F f, double lo, double hi) {
    // f increasing in log x; widen the bracket until it changes sign.
    for (int i = 0; i < 200 && f(lo) > 0.0; ++i) lo -= 2.0;
    for (int i = 0; i < 200 && f(hi) < 0.0; ++i) hi += 2.0;
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (a + b);
}

}  // namespace

double CouplingMaps::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("coupling quantile: p must lie in (0,1)");
    if (p <= 0.5) {
        const double target = std::log(p);
        return std::exp(solve_increasing([&](double lx) { return log_cdf_table(lx) - target; }, lx_lo_, lx_hi_));
    }
    return quantile_from_survival(1.0 - p);
}

double CouplingMaps::quantile_from_survival(double q) const {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("coupling quantile: survival must lie in (0,1)");
    if (q >= 0.5) return quantile(1.0 - q);
    const double target = std::log(q);
    double hi = lx_hi_;
    // Leading tail term gives a starting bracket far out.
    const double guess = -(std::log(q) + std::lgamma(1.0 - alpha_)) / alpha_;
    hi = std::max(hi, guess + 1.0);
    return std::exp(solve_increasing([&](double lx) { return target - log_sf_table(lx); }, lx_lo_, hi));
}

double CouplingMaps::G(double y) const {
    if (!(y > 1.0)) return 0.0;
    return kappa_ * quantile_from_survival(std::pow(y, -alpha_));
}

double CouplingMaps::G_inverse(double z) const {
    if (!(z > 0.0)) return 1.0;
    return std::pow(survival(z / kappa_), -1.0 / alpha_);
}

double CouplingMaps::g_n(double v_increment, std::int64_t n, double beta) const {
    if (n < 1) throw std::invalid_argument("g_n: n must be at least 1");
    const double b = std::pow(static_cast<double>(n), 1.0 / (beta * alpha_));
    return G_inverse(b * v_increment) / b;
}

double coupling_quantile(const CouplingMaps& maps, double p) { return maps.quantile(p); }

double rescaled_coupled_depth(const CouplingMaps& maps, double v_increment, std::int64_t n, double alpha,
                              double beta) {
    if (alpha != maps.alpha()) throw std::invalid_argument("rescaled coupled depth: alpha does not match maps");
    return maps.g_n(v_increment, n, beta);
}

}  // namespace trapsim
