#ifndef ARPE_ERRORS_HPP
#define ARPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace arpe {

/// Process specification violates causality, invertibility or summability.
class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A truncated infinite sequence does not meet the requested tolerance.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, std::size_t required_terms)
      : std::runtime_error(what), required_terms_(required_terms) {}
  std::size_t required_terms() const noexcept { return required_terms_; }

 private:
  std::size_t required_terms_;
};

/// Rank-deficient Gram matrix, non-PD Toeplitz segment or log of zero variance.
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(const std::string& what, int order)
      : std::runtime_error(what), order_(order) {}
  /// Offending model order, or 0 when not order-specific.
  int order() const noexcept { return order_; }

 private:
  int order_;
};

/// Malformed configuration, flag or window.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace arpe

#endif  // ARPE_ERRORS_HPP
