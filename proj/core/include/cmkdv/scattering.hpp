#pragma once

#include <optional>
#include <vector>

#include "cmkdv/profile.hpp"
#include "cmkdv/types.hpp"

namespace cmkdv {

enum class Side { Left, Right };

struct ScatteringOptions {
  /// Exclusion radius around z in {0, +1, -1}.
  double delta = 1e-2;
  /// Matching point; snapped to the nearest grid node.
  double x_match = 0.0;
  /// Arc-scan resolution for eigenvalue search on iota in (0, pi).
  int arc_samples = 2048;
  /// Secant refinement tolerance in the arc angle.
  double secant_tol = 1e-12;
  /// Angular step of the central difference for s11'.
  double derivative_step = 1e-5;
  /// |s11'(nu)| below this is treated as a degenerate (non-simple) zero.
  double simplicity_floor = 1e-8;
  /// |d+-| above this counts as generic.
  double generic_threshold = 1e-6;
  /// Worker threads for grid sweeps (1 = sequential).
  int workers = 1;
};

/// Y_+-(z) = I +- sigma_2 / z.
Mat2 background_eigenvectors(Complex z, Side side);

/// mu samples on the profile grid for one side. For non-real z only the column that is
/// analytic in the half-plane containing z is integrated; the other column is NaN.
struct JostPair {
  Complex z;
  Side side;
  UniformGrid grid;
  std::vector<Mat2> mu;
};

struct ScatteringCoeffs {
  Complex s11;
  /// Only defined on the real axis; NaN otherwise.
  Complex s21;
};

struct GenericInfo {
  bool generic = false;
  Complex d_plus;
  Complex d_minus;
  bool borderline = false;
};

struct ScatteringMeta {
  double h = 0.0;
  double decay_tol = 0.0;
  double delta = 0.0;
};

struct ScatteringData {
  std::vector<double> zgrid;
  std::vector<Complex> r;
  std::vector<Complex> s11;
  std::vector<Complex> s21;
  std::vector<Complex> eigenvalues;
  std::vector<Complex> norming;
  bool generic = false;
  Complex d_plus;
  Complex d_minus;
  ScatteringMeta meta;
};

/// Per-eigenvalue diagnostics from norming_constants().
struct NormingDetail {
  Complex nu;
  Complex kappa;       ///< phi1^-(nu) = kappa phi2^+(nu)
  Complex ds11;        ///< s11'(nu), arc central difference
  Complex ds11_check;  ///< s11'(nu), radial central difference
  Complex c;           ///< kappa / s11'(nu)
  double imag_defect;  ///< |Re c| / |c|; 0 when c is purely imaginary
};

/// Direct scattering for one finite-density profile. Holds a read-only copy of the
/// profile; every method is const and safe to call concurrently.
///
/// Jost columns are propagated in the normalized form mu = phi e^{i lambda x sigma_3} with a
/// fourth-order Magnus step on phi_x = (-i k sigma_3 + Q) phi, so that mu stays constant
/// wherever Q equals its background and the exact propagator is unimodular.
class ScatteringSolver {
 public:
  explicit ScatteringSolver(InitialProfile profile, ScatteringOptions options = {});

  const InitialProfile& profile() const { return profile_; }
  const ScatteringOptions& options() const { return options_; }
  double x_match() const;

  JostPair solve_jost(Complex z, Side side) const;

  /// s11 anywhere in the closed upper half-plane minus {0, +-1}; s21 only on the real axis.
  ScatteringCoeffs scattering_coeffs(Complex z) const;
  /// Same, evaluated at a caller-chosen matching node.
  ScatteringCoeffs scattering_coeffs_at(Complex z, double x_match) const;

  /// r(zeta) for real zeta. Inside the delta-windows r is extrapolated with a cubic
  /// through four points outside the window on the same side.
  Complex reflection_at(double zeta) const;
  /// Direct evaluation without windowing; only requires zeta not exactly 0 or +-1.
  ScatteringCoeffs real_axis_direct(double zeta) const;

  /// v = log(1 - |r|^2) at real zeta, using -2 log|s11| when |r| is close to one.
  double v_at(double zeta) const;

  ScatteringData reflection(const std::vector<double>& zgrid) const;

  std::vector<Complex> find_discrete_spectrum() const;
  std::vector<NormingDetail> norming_details(const std::vector<Complex>& eigenvalues) const;
  std::vector<Complex> norming_constants(const std::vector<Complex>& eigenvalues) const;

  GenericInfo classify_generic() const;

  /// Limit values r(+1), r(-1): exactly -+i in the generic case, otherwise extrapolated.
  Complex reflection_limit(int sign) const;

  /// Everything: reflection on zgrid, spectrum, norming constants and genericity.
  ScatteringData compute(const std::vector<double>& zgrid) const;

  /// det mu(z, x) along one side; constant in x for an exact propagator.
  std::vector<Complex> wronskian_profile(Complex z, Side side) const;

 private:
  Vec2 propagate(Complex z, int column, Side side, std::size_t stop_index,
                 std::vector<Vec2>* trace) const;
  std::size_t match_index(double x) const;
  void check_spectral_param(Complex z) const;
  Complex s11_on_arc(double iota) const;

  InitialProfile profile_;
  ScatteringOptions options_;
  std::vector<Complex> midpoints_;
};

/// Uniform real z-grid of n points on [a, b] with the delta-windows around {0, +-1} removed.
std::vector<double> make_zgrid(double a, double b, std::size_t n, double delta);

}  // namespace cmkdv
