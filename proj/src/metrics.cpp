#include "hcg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hcg/errors.hpp"

namespace hcg {

double label_distance(const LabelDef& a, const LabelDef& b) {
    return distance(a.prototype, b.prototype) + std::abs(a.bound - b.bound);
}

double ipd(const Agent& j, const Agent& k) {
    if (j.labels.size() != k.labels.size()) {
        throw ConfigError("agents " + std::to_string(j.id) + " and " + std::to_string(k.id) +
                          " have different label counts");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < j.labels.size(); ++i) {
        sum += label_distance(j.labels[i], k.labels[i]);
    }
    return sum;
}

double apd(std::span<const Agent> agents) {
    const std::size_t n = agents.size();
    if (n < 2) {
        throw UndefinedError("APD needs at least two agents");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            sum += ipd(agents[j], agents[k]);
        }
    }
    return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double pair_overlap(const LabelDef& a, const LabelDef& b) {
    const double d = distance(a.prototype, b.prototype);
    return std::clamp(1.0 - d / (a.bound + b.bound), 0.0, 1.0);
}

double ilo(const Agent& agent) {
    const std::size_t n = agent.labels.size();
    if (n < 2) {
        throw UndefinedError("ILO needs at least two labels");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sum += pair_overlap(agent.labels[i], agent.labels[j]);
        }
    }
    return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double alo(std::span<const Agent> agents) {
    if (agents.empty()) {
        throw UndefinedError("ALO needs at least one agent");
    }
    double sum = 0.0;
    for (const auto& a : agents) {
        sum += ilo(a);
    }
    return sum / static_cast<double>(agents.size());
}

MetricSample measure(std::span<const Agent> agents, std::int64_t round) {
    return {round, apd(agents), alo(agents)};
}

} // namespace hcg
