#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace shiftlab {

/// Raised when a symbol, sequence, or model lies outside its declared domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class AlphabetKind { finite_discrete, unit_interval };

/// The symbol space M with its metric rho. Symbols are stored as doubles; a
/// finite alphabet of size m uses the integers 0..m-1.
struct AlphabetSpec {
  AlphabetKind kind = AlphabetKind::unit_interval;
  std::size_t size = 0;  // finite_discrete only

  static AlphabetSpec finite(std::size_t m) {
    if (m == 0) throw DomainError("finite alphabet needs at least one symbol");
    return {AlphabetKind::finite_discrete, m};
  }
  static AlphabetSpec unit_interval() { return {AlphabetKind::unit_interval, 0}; }

  bool is_finite() const { return kind == AlphabetKind::finite_discrete; }

  /// No isolated points. Only the unit interval qualifies.
  bool perfect() const { return kind == AlphabetKind::unit_interval; }

  bool contains(double s) const {
    if (kind == AlphabetKind::unit_interval) return s >= 0.0 && s <= 1.0;
    return s >= 0.0 && s < static_cast<double>(size) && std::floor(s) == s;
  }

  /// rho without domain checks, for inner loops.
  double rho(double a, double b) const {
    if (kind == AlphabetKind::finite_discrete) return a == b ? 0.0 : 1.0;
    return std::fabs(a - b);
  }

  /// Smallest positive value rho can take; 0 when rho is continuous.
  double rho_gap() const { return kind == AlphabetKind::finite_discrete ? 1.0 : 0.0; }

  /// Normalised symbol value in [0, 1], used by test functions.
  double unit_value(double s) const {
    if (kind == AlphabetKind::unit_interval) return s;
    return size > 1 ? s / static_cast<double>(size - 1) : 0.0;
  }

  std::string describe() const {
    return kind == AlphabetKind::unit_interval ? std::string("unit-interval")
                                               : "finite-discrete(" + std::to_string(size) + ")";
  }

  friend bool operator==(const AlphabetSpec&, const AlphabetSpec&) = default;
};

/// rho(a, b) with domain validation.
inline double base_metric(const AlphabetSpec& alphabet, double a, double b) {
  if (!alphabet.contains(a) || !alphabet.contains(b))
    throw DomainError("symbol outside " + alphabet.describe());
  return alphabet.rho(a, b);
}

/// Per-coordinate term rho/(1+rho) of the product metric.
inline double bounded_rho(double rho) { return rho / (1.0 + rho); }

}  // namespace shiftlab
