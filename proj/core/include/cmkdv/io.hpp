#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cmkdv/asymptotics.hpp"
#include "cmkdv/pde.hpp"
#include "cmkdv/scattering.hpp"
#include "cmkdv/spectral_functions.hpp"

namespace cmkdv {

/// Version string embedded in every output.
std::string_view module_version();

/// Effective run configuration: "section.key" -> text value. Starts from built-in defaults,
/// then a config file (INI style: [section] headers, key = value lines), then command-line
/// overrides. Unknown keys are rejected.
class RunConfig {
 public:
  static RunConfig defaults();

  void load_file(const std::string& path);
  /// `key` is either "section.key" or one of the short aliases (profile, L, h, a, t, s, xi, x,
  /// C, out, workers).
  void set(std::string_view key, std::string_view value);

  const std::string& get(std::string_view key) const;
  double get_double(std::string_view key) const;
  int get_int(std::string_view key) const;
  std::vector<double> get_doubles(std::string_view key) const;

  /// Sorted "key=value" lines without output.dir and run.workers; the hash input.
  std::string canonical() const;
  /// First 16 hex digits of SHA-256 over canonical().
  std::string hash() const;

  /// Throws ConfigError subtypes for non-positive tolerances, C <= 0, varsigma outside (0, 1/6)
  /// and unparsable switches.
  void validate() const;

  static std::string resolve_alias(std::string_view key);
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct OutputMeta {
  std::string config_hash;
  std::string version;
};

OutputMeta make_meta(const RunConfig& cfg);

std::string scattering_json(const ScatteringData& data, const OutputMeta& meta);
ScatteringData parse_scattering_json(const std::string& text);

std::string spectrum_json(const std::vector<NormingDetail>& details, const GenericInfo& generic,
                          const OutputMeta& meta);

std::string tfunction_json(double xi, const TExpansion& expansion, Complex alpha,
                           const std::vector<Complex>& eigenvalues, const OutputMeta& meta);

/// {"x","t","xi","s","q","leading","correction","order_estimate"} per point, wrapped with meta.
std::string asymptotics_json(const std::vector<AsymptoticOutput>& points,
                             const AsymptoticsOptions& options, const OutputMeta& meta);

struct RunManifest {
  double L = 0.0;
  double x_left = 0.0;
  double x_right = 0.0;
  double h = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  SpongeOptions sponge{};
  std::string profile;
};

std::string manifest_json(const RunManifest& manifest, const OutputMeta& meta);

std::string comparison_json(const ComparisonReport& report, const RunManifest& manifest,
                            const AsymptoticsOptions& options, double s_ray,
                            const OutputMeta& meta);

void write_snapshot_csv(std::ostream& out, const FieldState& state, const OutputMeta& meta);
void write_painleve_csv(std::ostream& out, const Painleve2Solution& sol, const OutputMeta& meta);

/// Re(2 i theta(z; 2 xi, 1)) on a rectangular grid: columns re_z, im_z, value.
void write_signature_csv(std::ostream& out, double xi, double re_min, double re_max,
                         double im_min, double im_max, int n_re, int n_im,
                         const OutputMeta& meta);

std::string error_json(std::string_view kind, std::string_view message, int exit_code);

}  // namespace cmkdv
