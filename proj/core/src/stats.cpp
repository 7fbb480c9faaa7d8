#include "dmi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dmi/errors.hpp"

namespace dmi {

std::string magnitude_name(Magnitude magnitude)
{
    switch (magnitude) {
    case Magnitude::Equal:
        return "equal";
    case Magnitude::Small:
        return "small";
    case Magnitude::Medium:
        return "medium";
    case Magnitude::Large:
        return "large";
    }
    return "unknown";
}

double wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y)
{
    require(x.size() == y.size(), "wilcoxon_signed_rank: samples must be paired");
    require(x.size() >= 5, "wilcoxon_signed_rank: need at least 5 pairs");

    std::vector<double> diff;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) {
            diff.push_back(d);
        }
    }
    const std::size_t n = diff.size();
    if (n == 0) {
        return 1.0;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return std::abs(diff[a]) < std::abs(diff[b]); });

    // Doubled ranks keep average ranks integral.
    std::vector<long> rank2(n);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(diff[order[j + 1]]) == std::abs(diff[order[i]])) {
            ++j;
        }
        const long r2 = static_cast<long>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) {
            rank2[order[k]] = r2;
        }
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }

    long w_plus2 = 0;
    long total2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total2 += rank2[i];
        if (diff[i] > 0.0) {
            w_plus2 += rank2[i];
        }
    }

    if (n <= 20) {
        // Distribution of the doubled positive-rank sum over 2^n sign patterns.
        std::vector<double> ways(static_cast<std::size_t>(total2) + 1, 0.0);
        ways[0] = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (long s = total2; s >= rank2[i]; --s) {
                ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - rank2[i])];
            }
        }
        const double patterns = std::ldexp(1.0, static_cast<int>(n));
        double lower = 0.0;
        double upper = 0.0;
        for (long s = 0; s <= total2; ++s) {
            if (s <= w_plus2) {
                lower += ways[static_cast<std::size_t>(s)];
            }
            if (s >= w_plus2) {
                upper += ways[static_cast<std::size_t>(s)];
            }
        }
        return std::min(1.0, 2.0 * std::min(lower, upper) / patterns);
    }

    const double nd = static_cast<double>(n);
    const double w_plus = 0.5 * static_cast<double>(w_plus2);
    const double mean = nd * (nd + 1.0) / 4.0;
    const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
        return 1.0;
    }
    const double z = std::max(0.0, std::abs(w_plus - mean) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

double a12(std::span<const double> x, std::span<const double> y)
{
    require(!x.empty() && !y.empty(), "a12: samples must be non-empty");
    double score = 0.0;
    for (double a : x) {
        for (double b : y) {
            score += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
        }
    }
    return score / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

Magnitude a12_magnitude(double a12_value)
{
    const double effect = std::max(a12_value, 1.0 - a12_value);
    if (effect < 0.56) {
        return Magnitude::Equal;
    }
    if (effect < 0.64) {
        return Magnitude::Small;
    }
    if (effect < 0.71) {
        return Magnitude::Medium;
    }
    return Magnitude::Large;
}

ComparisonReport compare(std::span<const double> x, std::span<const double> y)
{
    ComparisonReport report;
    report.p_value = wilcoxon_signed_rank(x, y);
    report.a12 = a12(x, y);
    report.magnitude = a12_magnitude(report.a12);
    return report;
}

} // namespace dmi
