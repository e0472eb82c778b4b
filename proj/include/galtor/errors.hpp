#pragma once

#include <stdexcept>
#include <string>

namespace galtor {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class RingMismatch : public Error {
public:
    using Error::Error;
};

class NotSimilitude : public Error {
public:
    using Error::Error;
};

class NotAlternating : public Error {
public:
    using Error::Error;
};

class OrderTooLarge : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class ChainNotIncreasing : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace galtor
