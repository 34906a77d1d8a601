#pragma once

#include <stdexcept>
#include <string>

namespace folio {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tensor/layer shape mismatch.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (CSV cells, price gaps, short tables).
class DataError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration (hyperparameters, correlation matrices, unknown keys).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Caller violated an API precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

/// A computation produced NaN/Inf.
class NumericError : public Error {
public:
    using Error::Error;
};

/// A metric is undefined for the given inputs (e.g. Sharpe with zero volatility).
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

} // namespace folio
