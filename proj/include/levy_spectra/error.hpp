#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace levy_spectra {

// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Projection blocks (or ell-blocks) do not tile the box.
class TilingError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Unpivoted LDL^T hit a pivot below tolerance. `shift` is the energy that failed.
class PivotBreakdown : public Error {
public:
    PivotBreakdown(const std::string& what, double shift) : Error(what), shift_(shift) {}
    double shift() const noexcept { return shift_; }

private:
    double shift_;
};

class OrderTooLarge : public Error {
public:
    using Error::Error;
};

class BandwidthTooSmall : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class ZeroMean : public Error {
public:
    using Error::Error;
};

// A realization failed inside a campaign; carries the realization index.
class RealizationError : public Error {
public:
    RealizationError(const std::string& what, std::uint64_t realization)
        : Error(what), realization_(realization) {}
    std::uint64_t realization() const noexcept { return realization_; }

private:
    std::uint64_t realization_;
};

}  // namespace levy_spectra
