#pragma once

#include <span>

namespace levy_spectra {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Least squares on (log x, log y); pairs with y <= 0 are skipped.
LinearFit loglog_fit(std::span<const double> x, std::span<const double> y);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson score interval for a binomial proportion k / n.
Interval wilson_interval(double successes, double trials, double z = 1.959963984540054);

}  // namespace levy_spectra
