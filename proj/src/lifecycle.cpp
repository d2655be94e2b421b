#include "tsa/lifecycle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tsa/errors.hpp"

namespace tsa {

void validate(const LifeCycleRecord& rec) {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(rec.load) || !positive(rec.turns_per_cycle) || rec.cycles_endured == 0 ||
        !positive(rec.contraction_per_cycle) || !positive(rec.published_total)) {
        throw std::invalid_argument("life-cycle record fields must all be positive");
    }
}

double total_contraction(const LifeCycleRecord& rec) {
    if (rec.cycles_endured == 0 || !(rec.contraction_per_cycle > 0.0)) {
        throw std::invalid_argument("cycles and per-cycle contraction must be positive");
    }
    return static_cast<double>(rec.cycles_endured) * rec.contraction_per_cycle;
}

RecordCheck validate_record(const LifeCycleRecord& rec) {
    validate(rec);
    RecordCheck check;
    check.computed_total = total_contraction(rec);
    check.deviation = rec.published_total - check.computed_total;
    check.consistent = std::abs(check.deviation) <= kRecordTolerance;
    return check;
}

LoadLifeFit fit_power_law(std::span<const double> loads, std::span<const double> totals) {
    if (loads.size() != totals.size()) throw std::invalid_argument("loads and totals differ in length");
    const std::size_t n = loads.size();
    std::vector<double> lx(n);
    std::vector<double> ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(loads[i] > 0.0) || !(totals[i] > 0.0)) {
            throw std::invalid_argument("power-law fit needs positive loads and totals");
        }
        lx[i] = std::log(loads[i]);
        ly[i] = std::log(totals[i]);
    }
    const bool distinct = n >= 2 && std::any_of(loads.begin(), loads.end(),
                                                [&](double f) { return f != loads.front(); });
    if (!distinct) throw IllPosedError("load-life fit needs at least two distinct loads");

    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    LoadLifeFit fit;
    fit.b = sxy / sxx;
    const double ln_a = my - fit.b * mx;
    fit.a = std::exp(ln_a);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ly[i] - (ln_a + fit.b * lx[i]);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

std::vector<std::pair<double, double>> mean_total_by_load(std::span<const LifeCycleRecord> records) {
    std::map<double, std::pair<double, std::size_t>> groups;
    for (const LifeCycleRecord& rec : records) {
        validate(rec);
        auto& g = groups[rec.load];
        g.first += rec.published_total;
        g.second += 1;
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(groups.size());
    for (const auto& [load, g] : groups) out.emplace_back(load, g.first / static_cast<double>(g.second));
    return out;
}

LoadLifeFit fit_load_life(std::span<const LifeCycleRecord> records) {
    const auto means = mean_total_by_load(records);
    if (means.size() < 2) throw IllPosedError("load-life fit needs at least two distinct loads");
    std::vector<double> loads;
    std::vector<double> totals;
    for (const auto& [load, total] : means) {
        loads.push_back(load);
        totals.push_back(total);
    }
    return fit_power_law(loads, totals);
}

std::uint64_t predict_endurance(const LoadLifeFit& fit, double load, double per_cycle_contraction) {
    if (!(per_cycle_contraction > 0.0)) throw std::invalid_argument("per-cycle contraction must be positive");
    if (!(load > 0.0)) throw std::invalid_argument("load must be positive");
    if (!(fit.a > 0.0)) throw std::invalid_argument("fit scale must be positive");
    const double cycles = fit.a * std::pow(load, fit.b) / per_cycle_contraction;
    return static_cast<std::uint64_t>(std::floor(cycles));
}

std::optional<std::size_t> detect_failure(const CycleLog& log, double threshold_ma, std::size_t hold) {
    if (hold == 0) throw std::invalid_argument("hold must be at least 1");
    std::size_t run = 0;
    for (std::size_t i = 0; i < log.samples.size(); ++i) {
        run = log.samples[i].current_ma >= threshold_ma ? run + 1 : 0;
        if (run == hold) return i + 1 - hold;
    }
    return std::nullopt;
}

}  // namespace tsa
