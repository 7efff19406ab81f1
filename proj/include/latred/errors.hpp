#ifndef LATRED_ERRORS_HPP
#define LATRED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latred {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct RankDeficient : Error {
  explicit RankDeficient(const std::string& msg = "matrix is rank deficient") : Error(msg) {}
};

struct DegenerateRotation : Error {
  DegenerateRotation() : Error("cannot build a Givens rotation from (0, 0)") {}
};

struct NotPositiveDefinite : Error {
  explicit NotPositiveDefinite(const std::string& msg = "matrix is not positive definite") : Error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg = "dimension mismatch") : Error(msg) {}
};

struct NonPositiveDiagonal : Error {
  explicit NonPositiveDiagonal(const std::string& msg = "diagonal entry is not positive") : Error(msg) {}
};

struct Overflow : Error {
  explicit Overflow(const std::string& msg = "integer overflow in exact arithmetic") : Error(msg) {}
};

struct NotUnimodular : Error {
  explicit NotUnimodular(const std::string& msg = "matrix is not unimodular") : Error(msg) {}
};

struct NotPrimitive : Error {
  explicit NotPrimitive(const std::string& msg = "coefficient vector is not primitive") : Error(msg) {}
};

struct RankTooLarge : Error {
  explicit RankTooLarge(const std::string& msg = "rank exceeds the configured cap") : Error(msg) {}
};

struct BoxTooSmall : Error {
  explicit BoxTooSmall(const std::string& msg = "search box too small to realize all minima") : Error(msg) {}
};

struct RadiusExhausted : Error {
  double radius;
  explicit RadiusExhausted(double r)
      : Error("no lattice point inside fixed enumeration radius " + std::to_string(r)), radius(r) {}
};

struct MaxLoopsExceeded : Error {
  explicit MaxLoopsExceeded(const std::string& msg = "reduction exceeded its loop safety cap") : Error(msg) {}
};

struct NoFeasibleRoute : Error {
  NoFeasibleRoute() : Error("no PNP route with vanishing top-layer quotient") {}
};

struct ZeroVector : Error {
  explicit ZeroVector(const std::string& msg = "coefficient vector must be nonzero") : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace latred

#endif
