// cmkdv command-line front end. Every subcommand reads the effective configuration
// (defaults < --config file < --flag overrides), writes its artifacts into output.dir and
// prints a one-line JSON summary. Failures print an error JSON and exit with 2 (config)
// or 3 (numerical).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmkdv/asymptotics.hpp"
#include "cmkdv/errors.hpp"
#include "cmkdv/io.hpp"
#include "cmkdv/painleve.hpp"
#include "cmkdv/pde.hpp"
#include "cmkdv/profile.hpp"
#include "cmkdv/scattering.hpp"
#include "cmkdv/spectral_core.hpp"
#include "cmkdv/spectral_functions.hpp"

namespace fs = std::filesystem;
using namespace cmkdv;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Context {
  RunConfig cfg;
  OutputMeta meta;
  fs::path out_dir;
  std::vector<std::string> outputs;

  fs::path file(const std::string& name) {
    const fs::path p = out_dir / name;
    outputs.push_back(p.string());
    return p;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidConfig("cannot write '" + path.string() + "'");
  out << text;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidConfig("cannot write '" + path.string() + "'");
  return out;
}

std::string tag(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

ScatteringOptions scattering_options(const RunConfig& cfg) {
  ScatteringOptions o;
  o.delta = cfg.get_double("scattering.delta");
  o.x_match = cfg.get_double("scattering.x_match");
  o.arc_samples = cfg.get_int("scattering.arc_samples");
  o.generic_threshold = cfg.get_double("scattering.generic_threshold");
  o.workers = cfg.get_int("run.workers");
  return o;
}

InitialProfile make_profile(const RunConfig& cfg) {
  return build_profile(cfg.get("profile.spec"), cfg.get_double("profile.L"),
                       cfg.get_double("profile.h"), cfg.get_double("profile.decay_tol"));
}

PainleveOptions painleve_options(const RunConfig& cfg) {
  PainleveOptions o;
  o.s_min = cfg.get_double("painleve.s_min");
  o.s_max = cfg.get_double("painleve.s_max");
  o.spacing = cfg.get_double("painleve.spacing");
  o.rtol = cfg.get_double("painleve.rtol");
  o.atol = cfg.get_double("painleve.atol");
  return o;
}

AsymptoticsOptions asymptotics_options(const RunConfig& cfg) {
  AsymptoticsOptions o;
  o.C = cfg.get_double("transition.C");
  o.varsigma = cfg.get_double("transition.varsigma");
  o.s_definition = s_definition_from_string(cfg.get("transition.s_definition"));
  o.theta = theta_reading_from_string(cfg.get("transition.theta_reading"));
  o.sign = sign_convention_from_string(cfg.get("transition.sign_convention"));
  o.branch = log_branch_from_string(cfg.get("transition.log_branch"));
  o.painleve = painleve_options(cfg);
  o.workers = cfg.get_int("run.workers");
  return o;
}

void cmd_scatter(Context& ctx) {
  const ScatteringSolver solver(make_profile(ctx.cfg), scattering_options(ctx.cfg));
  const auto zgrid = make_zgrid(ctx.cfg.get_double("scattering.z_min"),
                                ctx.cfg.get_double("scattering.z_max"),
                                static_cast<std::size_t>(ctx.cfg.get_int("scattering.z_points")),
                                solver.options().delta);
  write_text(ctx.file("scatter.json"), scattering_json(solver.compute(zgrid), ctx.meta));
}

void cmd_spectrum(Context& ctx) {
  const ScatteringSolver solver(make_profile(ctx.cfg), scattering_options(ctx.cfg));
  const auto details = solver.norming_details(solver.find_discrete_spectrum());
  write_text(ctx.file("spectrum.json"), spectrum_json(details, solver.classify_generic(), ctx.meta));
}

void cmd_tfunction(Context& ctx) {
  const ScatteringSolver solver(make_profile(ctx.cfg), scattering_options(ctx.cfg));
  SpectralOptions so;
  so.branch = log_branch_from_string(ctx.cfg.get("transition.log_branch"));
  so.workers = ctx.cfg.get_int("run.workers");
  const double xi = ctx.cfg.get_double("run.xi");
  const auto sf = SpectralFunctions::from_solver(solver, xi, so);
  write_text(ctx.file("tfunction.json"),
             tfunction_json(xi, sf.T_expansion(), sf.alpha_infinity(), sf.eigenvalues(), ctx.meta));
}

void cmd_painleve(Context& ctx) {
  const Painleve2Solution sol = solve_p2(ctx.cfg.get_double("painleve.a"), painleve_options(ctx.cfg));
  auto out = open_out(ctx.file("painleve.csv"));
  write_painleve_csv(out, sol, ctx.meta);
}

void cmd_asymptotics(Context& ctx) {
  const AsymptoticsOptions ao = asymptotics_options(ctx.cfg);
  const ScatteringSolver solver(make_profile(ctx.cfg), scattering_options(ctx.cfg));
  const TransitionAsymptotics asym(solver, ao);
  std::vector<std::pair<double, double>> points;
  for (double t : ctx.cfg.get_doubles("run.times")) {
    for (double s : ctx.cfg.get_doubles("run.s")) points.emplace_back(x_on_ray(s, t, ao.s_definition), t);
  }
  write_text(ctx.file("asymptotics.json"), asymptotics_json(asym.evaluate_many(points), ao, ctx.meta));
}

void cmd_evolve(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const std::string spec = cfg.get("profile.spec");
  const double L = cfg.get_double("pde.L");
  const UniformGrid grid = UniformGrid::symmetric(L, cfg.get_double("pde.h"));
  // validates the spec and the background limits on the PDE grid
  build_profile(spec, L, grid.h, cfg.get_double("profile.decay_tol"));
  const FieldState initial =
      FieldState::from_function(grid, [&](double x) { return builtin_profile_value(spec, x); });

  EvolveOptions eo;
  eo.dt = cfg.get_double("pde.dt");
  eo.sponge = {cfg.get_double("pde.sponge_width"), cfg.get_double("pde.sponge_rate")};
  eo.snapshot_times = cfg.get_doubles("pde.snapshots");
  const double t_end = cfg.get_double("pde.t_end");
  evolve(initial, t_end, eo, [&](const FieldState& s) {
    auto out = open_out(ctx.file("snapshot_t" + tag(s.t) + ".csv"));
    write_snapshot_csv(out, s, ctx.meta);
  });
  const double h = grid.h;
  RunManifest m{L, grid.x0, grid.back(), h, eo.dt > 0 ? eo.dt : 0.3 * h * h * h, t_end, eo.sponge, spec};
  write_text(ctx.file("manifest.json"), manifest_json(m, ctx.meta));
}

void cmd_validate(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const AsymptoticsOptions ao = asymptotics_options(cfg);
  const std::string spec = cfg.get("profile.spec");
  if (spec.starts_with("file:")) throw BadProfileSpec("validate needs a builtin profile");

  std::vector<double> times = cfg.get_doubles("run.times");
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const std::vector<double> rays = cfg.get_doubles("run.s");
  if (times.empty() || rays.empty()) throw InvalidConfig("validate needs run.times and run.s");
  if (times.front() <= 0.0) throw InvalidConfig("run.times must be positive");

  const ScatteringSolver solver(make_profile(cfg), scattering_options(cfg));
  const TransitionAsymptotics asym(solver, ao);
  std::vector<std::pair<double, double>> points;
  double x_min = 0.0;
  for (double t : times) {
    for (double s : rays) {
      points.emplace_back(x_on_ray(s, t, ao.s_definition), t);
      x_min = std::min(x_min, points.back().first);
    }
  }
  const auto asym_out = asym.evaluate_many(points);

  // Every linear wave on the background travels left, so the domain only needs a short
  // margin on the right.
  const double margin = cfg.get_double("validate.margin");
  const double x_left = std::min(x_min, -3.0 * times.back()) - margin;
  const double x_right = cfg.get_double("validate.x_right");
  const UniformGrid grid = UniformGrid::spanning(x_left, x_right, cfg.get_double("validate.h"));
  const FieldState initial =
      FieldState::from_function(grid, [&](double x) { return builtin_profile_value(spec, x); });

  EvolveOptions eo;
  eo.dt = cfg.get_double("pde.dt");
  eo.sponge = {cfg.get_double("pde.sponge_width"), cfg.get_double("pde.sponge_rate")};
  eo.snapshot_times = times;
  std::vector<FieldState> snaps;
  evolve(initial, times.back(), eo, [&](const FieldState& s) { snaps.push_back(s); });

  const ComparisonReport report = compare(snaps, asym_out);
  const double h = grid.h;
  RunManifest m{0.5 * (x_right - x_left), x_left, x_right, h,
                eo.dt > 0 ? eo.dt : 0.3 * h * h * h, times.back(), eo.sponge, spec};
  write_text(ctx.file("validate.json"), comparison_json(report, m, ao, rays.front(), ctx.meta));
  write_text(ctx.file("manifest.json"), manifest_json(m, ctx.meta));
}

void cmd_signature(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  auto out = open_out(ctx.file("signature.csv"));
  write_signature_csv(out, cfg.get_double("signature.xi"), cfg.get_double("signature.re_min"),
                      cfg.get_double("signature.re_max"), cfg.get_double("signature.im_min"),
                      cfg.get_double("signature.im_max"), cfg.get_int("signature.n_re"),
                      cfg.get_int("signature.n_im"), ctx.meta);
}

int fail(std::string_view kind, std::string_view message, int code) {
  std::cout << error_json(kind, message, code);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using Handler = void (*)(Context&);
  const std::map<std::string, std::pair<Handler, std::string>> commands{
      {"scatter", {cmd_scatter, "reflection coefficient, spectrum and genericity (JSON)"}},
      {"spectrum", {cmd_spectrum, "discrete eigenvalues and norming constants (JSON)"}},
      {"tfunction", {cmd_tfunction, "T(inf), T1 and alpha(inf) at run.xi (JSON)"}},
      {"painleve", {cmd_painleve, "Painleve-II table s,u,U (CSV)"}},
      {"asymptotics", {cmd_asymptotics, "transition-region formula on run.times x run.s (JSON)"}},
      {"evolve", {cmd_evolve, "PDE snapshots (CSV) and run manifest (JSON)"}},
      {"validate", {cmd_validate, "PDE vs asymptotic formula with a rate fit (JSON)"}},
      {"signature", {cmd_signature, "Re(2 i theta) samples (CSV)"}},
  };

  CLI::App app{"Direct scattering and transition asymptotics for the defocusing complex mKdV"};
  // "-h" is taken by the grid spacing alias
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::map<std::string, CLI::App*> subs;
  RunConfig probe = RunConfig::defaults();
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.second);
    sub->add_option("--config", config_path, "INI-style config file");
    for (const auto& [key, value] : probe.entries()) {
      sub->add_option("--" + key, overrides[key], "default: " + value);
    }
    for (const char* alias : {"profile", "L", "h", "a", "t", "s", "xi", "C", "out", "workers", "delta"}) {
      sub->add_option(std::string("--") + alias, overrides[alias],
                      "alias of " + RunConfig::resolve_alias(alias));
    }
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what(), kExitConfig);
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }

  try {
    Context ctx{RunConfig::defaults(), {}, {}, {}};
    if (!config_path.empty()) ctx.cfg.load_file(config_path);
    // full keys first so that an alias given on the command line wins
    for (const auto& [key, value] : overrides) {
      if (!value.empty() && key.find('.') != std::string::npos) ctx.cfg.set(key, value);
    }
    for (const auto& [key, value] : overrides) {
      if (!value.empty() && key.find('.') == std::string::npos) ctx.cfg.set(key, value);
    }
    ctx.cfg.validate();
    ctx.meta = make_meta(ctx.cfg);
    ctx.out_dir = ctx.cfg.get("output.dir");
    fs::create_directories(ctx.out_dir);
    commands.at(command).first(ctx);

    std::cout << "{\"command\":\"" << command << "\",\"config_hash\":\"" << ctx.meta.config_hash
              << "\",\"outputs\":[";
    for (std::size_t i = 0; i < ctx.outputs.size(); ++i) {
      std::cout << (i ? "," : "") << '"' << ctx.outputs[i] << '"';
    }
    std::cout << "]}\n";
    return 0;
  } catch (const ConfigError& e) {
    return fail(e.kind(), e.what(), kExitConfig);
  } catch (const NumericalError& e) {
    return fail(e.kind(), e.what(), kExitNumerical);
  } catch (const fs::filesystem_error& e) {
    return fail("FilesystemError", e.what(), kExitConfig);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), kExitNumerical);
  }
}
