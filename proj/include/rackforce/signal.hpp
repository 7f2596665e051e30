#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "rackforce/errors.hpp"

namespace rackforce {

/**
 * @brief Uniformly sampled time series of one physical quantity.
 *
 * Sample i lives at t0 + i / rate_hz. All signals in one run share the same
 * grid; require_aligned() checks that before any sample-wise math.
 */
struct SignalTrace {
    std::string name;
    std::string unit;
    double rate_hz = 0.0;
    double t0 = 0.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double dt() const { return 1.0 / rate_hz; }
    double time_at(std::size_t i) const { return t0 + static_cast<double>(i) / rate_hz; }
    double duration() const {
        return samples.size() < 2 ? 0.0 : static_cast<double>(samples.size() - 1) / rate_hz;
    }
};

/// Constant-valued trace helper.
inline SignalTrace make_constant_trace(std::string name, std::string unit, double rate_hz,
                                       std::size_t n, double value) {
    if (rate_hz <= 0.0)
        throw InvalidInputError("make_constant_trace: rate must be positive");
    return {std::move(name), std::move(unit), rate_hz, 0.0, std::vector<double>(n, value)};
}

/**
 * @brief Linear interpolation of a trace onto a uniform grid at target_hz.
 *
 * The new grid spans exactly the original time range; both endpoints are
 * preserved. Resampling a trace to its own rate reproduces it sample for
 * sample, and affine signals are reproduced exactly at any rate.
 */
inline SignalTrace resample(const SignalTrace& trace, double target_hz) {
    if (target_hz <= 0.0)
        throw InvalidInputError("resample: target rate must be positive");
    if (trace.rate_hz <= 0.0)
        throw InvalidInputError("resample: trace '" + trace.name + "' has no valid rate");
    if (trace.samples.size() < 2)
        throw InvalidInputError("resample: trace '" + trace.name + "' needs at least 2 samples");

    const std::size_t n = trace.samples.size();
    const double span = static_cast<double>(n - 1) / trace.rate_hz;
    const auto segments = static_cast<std::size_t>(std::llround(span * target_hz));
    const std::size_t m = (segments == 0 ? 1 : segments) + 1;

    SignalTrace out{trace.name, trace.unit, target_hz, trace.t0, {}};
    out.samples.resize(m);
    const double stride = static_cast<double>(n - 1) / static_cast<double>(m - 1);
    for (std::size_t k = 0; k < m; ++k) {
        const double x = static_cast<double>(k) * stride;
        auto i = static_cast<std::size_t>(x);
        if (i >= n - 1) {
            out.samples[k] = trace.samples[n - 1];
            continue;
        }
        const double f = x - static_cast<double>(i);
        out.samples[k] = trace.samples[i] + f * (trace.samples[i + 1] - trace.samples[i]);
    }
    return out;
}

/// Throws AlignmentError unless all traces share rate, length, and start time.
inline void require_aligned(std::initializer_list<const SignalTrace*> traces) {
    const SignalTrace* first = nullptr;
    for (const SignalTrace* t : traces) {
        if (t->samples.empty())
            throw InvalidInputError("trace '" + t->name + "' is empty");
        if (!first) {
            first = t;
            continue;
        }
        if (t->rate_hz != first->rate_hz)
            throw AlignmentError("trace '" + t->name + "' rate " + std::to_string(t->rate_hz) +
                                 " Hz differs from '" + first->name + "' at " +
                                 std::to_string(first->rate_hz) + " Hz");
        if (t->samples.size() != first->samples.size())
            throw AlignmentError("trace '" + t->name + "' has " + std::to_string(t->samples.size()) +
                                 " samples, '" + first->name + "' has " +
                                 std::to_string(first->samples.size()));
        if (t->t0 != first->t0)
            throw AlignmentError("trace '" + t->name + "' starts at t=" + std::to_string(t->t0) +
                                 ", '" + first->name + "' at t=" + std::to_string(first->t0));
    }
}

} // namespace rackforce
