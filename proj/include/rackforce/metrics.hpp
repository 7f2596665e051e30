#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rackforce/errors.hpp"
#include "rackforce/signal.hpp"

namespace rackforce {

/**
 * @brief Normalized mean absolute error in percent.
 *
 * nmae = mean(|ref_i - est_i|) / (max(ref) - min(ref)) * 100
 *
 * Throws AlignmentError on length mismatch and DegenerateReferenceError when
 * the reference has zero range.
 */
inline double nmae_pct(const std::vector<double>& ref, const std::vector<double>& est) {
    if (ref.size() != est.size())
        throw AlignmentError("nmae: reference has " + std::to_string(ref.size()) +
                             " samples, estimate has " + std::to_string(est.size()));
    if (ref.size() < 2)
        throw InvalidInputError("nmae: need at least 2 samples");

    const auto [lo, hi] = std::minmax_element(ref.begin(), ref.end());
    const double range = *hi - *lo;
    if (!(range > 0.0))
        throw DegenerateReferenceError("nmae: reference range is zero, normalization undefined");

    double acc = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i)
        acc += std::abs(ref[i] - est[i]);
    return acc / static_cast<double>(ref.size()) / range * 100.0;
}

inline double nmae_pct(const SignalTrace& ref, const SignalTrace& est) {
    require_aligned({&ref, &est});
    return nmae_pct(ref.samples, est.samples);
}

inline double max_abs(const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
}

} // namespace rackforce
