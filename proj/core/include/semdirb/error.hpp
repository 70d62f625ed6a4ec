#pragma once

#include <stdexcept>
#include <string>

namespace semdirb {

// Malformed or inconsistent input data: bad files, coverage gaps, dimension
// mismatches, invalid parameters.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An artifact does not cover the wordlist it is being paired with.
class CoverageError : public DataError {
public:
    using DataError::DataError;
};

// Unrecoverable network failure against a live target.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace semdirb
