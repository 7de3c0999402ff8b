#pragma once

namespace woms {

/// Dimension and index of a Bessel process with positive integer dimension.
///
/// The index is nu = dimension / 2 - 1 and is stored together with its
/// integer/half-integer split so that every formula reads it the same way.
class BesselParams {
 public:
  /// Throws ConfigError unless dimension >= 1.
  static BesselParams from_dimension(int dimension);
  /// Throws ConfigError unless 2 * (nu + 1) is a positive integer.
  static BesselParams from_index(double nu);

  int dimension() const { return dimension_; }
  double nu() const { return nu_; }
  /// floor(nu); -1 for dimension 1.
  int nu_floor() const { return nu_floor_; }
  /// nu - floor(nu), either 0 or 1/2.
  double nu_frac() const { return nu_frac_; }
  /// Gamma(nu + 1).
  double gamma_nu1() const { return gamma_nu1_; }
  /// log(Gamma(nu + 1) * 2^nu), the normalizer shared by p_0 and psi_a.
  double log_norm() const { return log_norm_; }

  bool operator==(const BesselParams& other) const { return dimension_ == other.dimension_; }

 private:
  explicit BesselParams(int dimension);

  int dimension_;
  double nu_;
  int nu_floor_;
  double nu_frac_;
  double gamma_nu1_;
  double log_norm_;
};

}  // namespace woms
