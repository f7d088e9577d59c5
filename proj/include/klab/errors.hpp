#pragma once

#include <stdexcept>
#include <string>

namespace klab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A radius or grid fell outside the domain an object was built on.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// The warp factor crossed zero while integrating f'' = -K f.
class ConjugatePointError : public Error {
public:
    ConjugatePointError(double r, const std::string& what) : Error(what), radius(r) {}
    double radius;
};

/// Tail extrapolation of an asymptotic constant did not settle.
class ExtractionUnstableError : public Error {
public:
    explicit ExtractionUnstableError(const std::string& what) : Error(what) {}
};

/// A geometric hypothesis (e.g. curvature pinching) failed at a sampled radius.
class HypothesisViolatedError : public Error {
public:
    HypothesisViolatedError(double r, const std::string& what) : Error(what), radius(r) {}
    double radius;
};

/// A profile that must keep one sign crossed (or touched) zero.
class ZeroCrossingError : public Error {
public:
    ZeroCrossingError(double r, const std::string& what) : Error(what), radius(r) {}
    double radius;
};

class UnknownFamilyError : public Error {
public:
    explicit UnknownFamilyError(const std::string& what) : Error(what) {}
};

/// Adaptive step control collapsed below the minimum step size.
class StiffnessFailureError : public Error {
public:
    explicit StiffnessFailureError(const std::string& what) : Error(what) {}
};

/// Mode solutions passed together do not share one radial grid.
class GridMismatchError : public Error {
public:
    explicit GridMismatchError(const std::string& what) : Error(what) {}
};

class GridTooCoarseError : public Error {
public:
    explicit GridTooCoarseError(const std::string& what) : Error(what) {}
};

/// A threshold formula was evaluated outside its hypotheses; names the inequality.
class ConstraintViolatedError : public Error {
public:
    ConstraintViolatedError(const std::string& constraint, const std::string& what)
        : Error(what), constraint(constraint) {}
    std::string constraint;
};

class VersionParameterMissingError : public Error {
public:
    explicit VersionParameterMissingError(const std::string& what) : Error(what) {}
};

/// The sphere norm at the probe radius is numerically zero.
class SphereNormVanishesError : public Error {
public:
    explicit SphereNormVanishesError(const std::string& what) : Error(what) {}
};

/// The m0-doubling search exhausted its cap without a positive energy.
class WitnessNotFoundError : public Error {
public:
    explicit WitnessNotFoundError(const std::string& what) : Error(what) {}
};

class TailTooShortError : public Error {
public:
    explicit TailTooShortError(const std::string& what) : Error(what) {}
};

/// Config file rejected; carries the key path that failed.
class ParseError : public Error {
public:
    ParseError(const std::string& key, const std::string& reason)
        : Error("config key '" + key + "': " + reason), key(key), reason(reason) {}
    std::string key;
    std::string reason;
};

} // namespace klab
