#pragma once

#include <stdexcept>
#include <string>

namespace maes {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument or parameter outside its mathematical domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Filesystem / stream failures.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

// Malformed file contents: bad magic, bad version, length mismatch.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error(what) {}
};

// Cryptographic or protocol failure: bad padding, stego header, range errors.
class CryptoError : public Error {
public:
    explicit CryptoError(const std::string& what) : Error(what) {}
};

} // namespace maes
