#pragma once

#include <stdexcept>
#include <string>

namespace epsnbhd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rational could not be ordered against a real enclosure that contains it.
class AmbiguousComparison : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the documented domain of an operation.
class OutOfDomain : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// The radial profile is not certified positive on [0, 2pi].
class NonPositiveProfile : public Error {
public:
    using Error::Error;
};

class NonPositiveRadius : public Error {
public:
    using Error::Error;
};

class InsufficientScales : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    using Error::Error;
};

class CurveNotClosed : public Error {
public:
    using Error::Error;
};

class EmptyTargets : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

/// Erosion removed every cell; epsilon exceeds the raster inradius.
class EmptyErosion : public Error {
public:
    using Error::Error;
};

/// No epsilon on the ladder produced a passing reconstruction.
class NoneFound : public Error {
public:
    using Error::Error;
};

} // namespace epsnbhd
