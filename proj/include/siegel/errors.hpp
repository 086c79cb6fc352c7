#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace siegel {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateAngle : public Error {
public:
    DegenerateAngle() : Error("degenerate angle: theta is an integer") {}
};

/// Raised when exact integers or stored mantissas are too narrow for the request.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(long required_bits, const std::string& what = "")
        : Error("precision exhausted" + (what.empty() ? std::string() : ": " + what) +
                " (need " + std::to_string(required_bits) + " bits)"),
          required_bits_(required_bits) {}
    long required_bits() const { return required_bits_; }

private:
    long required_bits_;
};

/// lambda^n == lambda exactly for the index n.
class Resonance : public Error {
public:
    explicit Resonance(int n)
        : Error("resonance at n = " + std::to_string(n)), index_(n) {}
    int index() const { return index_; }

private:
    int index_;
};

class TooFewCoefficients : public Error {
public:
    explicit TooFewCoefficients(int have)
        : Error("too few valid coefficients for a radius estimate: " + std::to_string(have)) {}
};

class ZeroScale : public Error {
public:
    ZeroScale() : Error("rescaling by zero") {}
};

class OrbitEscaped : public Error {
public:
    explicit OrbitEscaped(std::int64_t step)
        : Error("critical orbit escaped at step " + std::to_string(step)) {}
};

class BoundedTypeRequired : public Error {
public:
    explicit BoundedTypeRequired(const std::string& why)
        : Error("bounded-type angle required: " + why) {}
};

class CenterOnBoundary : public Error {
public:
    CenterOnBoundary() : Error("inversion center lies on the sampled boundary") {}
};

class DegenerateSample : public Error {
public:
    explicit DegenerateSample(const std::string& why) : Error("degenerate sample: " + why) {}
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace siegel
