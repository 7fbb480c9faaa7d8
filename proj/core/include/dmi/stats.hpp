#pragma once

#include <span>
#include <string>

namespace dmi {

enum class Magnitude { Equal, Small, Medium, Large };

std::string magnitude_name(Magnitude magnitude);

struct ComparisonReport {
    double p_value = 1.0;
    double a12 = 0.5;
    Magnitude magnitude = Magnitude::Equal;
};

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped and tied magnitudes get average ranks. Exact null
/// distribution up to 20 non-zero pairs, continuity-corrected normal
/// approximation beyond. Requires at least 5 pairs.
double wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

/// Vargha-Delaney A12: P(X > Y) + 0.5 P(X = Y).
double a12(std::span<const double> x, std::span<const double> y);

/// Bands on max(A, 1 - A): < 0.56 Equal, < 0.64 Small, < 0.71 Medium, else Large.
Magnitude a12_magnitude(double a12_value);

ComparisonReport compare(std::span<const double> x, std::span<const double> y);

} // namespace dmi
