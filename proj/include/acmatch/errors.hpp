#pragma once

#include <stdexcept>
#include <string>

namespace acmatch {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// A dictionary pattern with zero bytes.
class EmptyPatternError : public Error {
public:
    using Error::Error;
};

// A dictionary with no patterns at all.
class EmptyDictionaryError : public Error {
public:
    using Error::Error;
};

// Worker count below one.
class InvalidWorkerCountError : public Error {
public:
    using Error::Error;
};

// Throughput requested for a non-positive elapsed time.
class ZeroTimeError : public Error {
public:
    using Error::Error;
};

// Planted patterns cannot be placed into the input without overlap.
class InfeasiblePlantError : public Error {
public:
    using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace acmatch
