#include "cmkdv/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "cmkdv/errors.hpp"
#include "cmkdv/spectral_core.hpp"

namespace cmkdv {

using Json = nlohmann::ordered_json;

std::string_view module_version() { return CMKDV_VERSION; }

namespace {

const std::map<std::string, std::string>& default_values() {
  static const std::map<std::string, std::string> d{
      {"profile.spec", "tanh_plus_sech2:0.3"},
      {"profile.L", "30"},
      {"profile.h", "0.02"},
      {"profile.decay_tol", "1e-10"},
      {"scattering.delta", "0.01"},
      {"scattering.z_min", "-5"},
      {"scattering.z_max", "5"},
      {"scattering.z_points", "200"},
      {"scattering.x_match", "0"},
      {"scattering.arc_samples", "2048"},
      {"scattering.generic_threshold", "1e-6"},
      {"transition.C", "1"},
      {"transition.varsigma", "0.1"},
      {"transition.s_definition", "scaling"},
      {"transition.theta_reading", "phase"},
      {"transition.sign_convention", "corrected"},
      {"transition.log_branch", "principal"},
      {"painleve.a", "0.5"},
      {"painleve.s_min", "-6"},
      {"painleve.s_max", "8"},
      {"painleve.spacing", "0.005"},
      {"painleve.rtol", "1e-12"},
      {"painleve.atol", "1e-18"},
      {"pde.L", "20"},
      {"pde.h", "0.05"},
      {"pde.dt", "0"},
      {"pde.t_end", "1"},
      {"pde.snapshots", ""},
      {"pde.sponge_width", "5"},
      {"pde.sponge_rate", "2"},
      {"validate.h", "0.2"},
      {"validate.margin", "60"},
      {"validate.x_right", "30"},
      {"run.times", "50,100,200,400"},
      {"run.s", "-0.5"},
      {"run.xi", "-1.6"},
      {"run.workers", "1"},
      {"signature.xi", "-2"},
      {"signature.re_min", "-3"},
      {"signature.re_max", "3"},
      {"signature.im_min", "-3"},
      {"signature.im_max", "3"},
      {"signature.n_re", "121"},
      {"signature.n_im", "121"},
      {"output.dir", "."},
  };
  return d;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a{
      {"profile", "profile.spec"}, {"L", "profile.L"},       {"h", "profile.h"},
      {"a", "painleve.a"},         {"t", "run.times"},       {"s", "run.s"},
      {"xi", "run.xi"},            {"C", "transition.C"},    {"out", "output.dir"},
      {"workers", "run.workers"},  {"delta", "scattering.delta"},
  };
  return a;
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw InvalidConfig("config key '" + std::string(key) + "': '" + std::string(text) +
                        "' is not a finite number");
  }
  return value;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

Json cjson(Complex z) { return Json::array({z.real(), z.imag()}); }

Json cjson_list(const std::vector<Complex>& zs) {
  Json arr = Json::array();
  for (const auto& z : zs) arr.push_back(cjson(z));
  return arr;
}

Json meta_json(const OutputMeta& meta) {
  return Json{{"config_hash", meta.config_hash}, {"version", meta.version}};
}

Complex parse_complex(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::vector<Complex> parse_complex_list(const Json& j) {
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(parse_complex(e));
  return out;
}

void csv_header(std::ostream& out, const OutputMeta& meta) {
  out << "# cmkdv " << meta.version << " config_hash=" << meta.config_hash << "\n";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.values_ = default_values();
  return cfg;
}

std::string RunConfig::resolve_alias(std::string_view key) {
  const std::string k(key);
  if (auto it = aliases().find(k); it != aliases().end()) return it->second;
  return k;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const std::string k = resolve_alias(key);
  if (!default_values().contains(k)) throw InvalidConfig("unknown config key '" + std::string(key) + "'");
  values_[k] = trim(value);
}

void RunConfig::load_file(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw InvalidConfig("cannot read config '" + path + "': " + e.message());
  }
  for (const auto& [section, node] : tree) {
    if (node.empty()) {
      set(section, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) set(section + "." + key, leaf.data());
  }
}

const std::string& RunConfig::get(std::string_view key) const {
  const auto it = values_.find(resolve_alias(key));
  if (it == values_.end()) throw InvalidConfig("unknown config key '" + std::string(key) + "'");
  return it->second;
}

double RunConfig::get_double(std::string_view key) const { return parse_double(key, get(key)); }

int RunConfig::get_int(std::string_view key) const {
  const double v = get_double(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw InvalidConfig("config key '" + std::string(key) + "' must be an integer");
  }
  return static_cast<int>(v);
}

std::vector<double> RunConfig::get_doubles(std::string_view key) const {
  std::vector<double> out;
  std::stringstream ss(get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(parse_double(key, t));
  }
  return out;
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    // where results go and how many threads compute them never change the results
    if (k == "output.dir" || k == "run.workers") continue;
    out += k + "=" + v + "\n";
  }
  return out;
}

std::string RunConfig::hash() const {
  const std::string text = canonical();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw InvalidConfig("config hash computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < 8 && i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

void RunConfig::validate() const {
  auto positive = [&](const char* key) {
    if (!(get_double(key) > 0.0)) throw InvalidConfig(std::string(key) + " must be positive");
  };
  for (const char* key : {"profile.L", "profile.h", "profile.decay_tol", "scattering.delta",
                          "scattering.generic_threshold", "transition.C", "painleve.spacing",
                          "painleve.rtol", "painleve.atol", "pde.L", "pde.h", "validate.h",
                          "validate.margin", "validate.x_right"}) {
    positive(key);
  }
  if (get_double("pde.dt") < 0.0) throw InvalidConfig("pde.dt must be >= 0 (0 selects 0.3 h^3)");
  const double vs = get_double("transition.varsigma");
  if (!(vs > 0.0 && vs < 1.0 / 6.0)) throw InvalidConfig("transition.varsigma must lie in (0, 1/6)");
  if (get_int("scattering.z_points") < 1) throw InvalidConfig("scattering.z_points must be >= 1");
  if (get_int("run.workers") < 1) throw InvalidConfig("run.workers must be >= 1");
  s_definition_from_string(get("transition.s_definition"));
  theta_reading_from_string(get("transition.theta_reading"));
  sign_convention_from_string(get("transition.sign_convention"));
  log_branch_from_string(get("transition.log_branch"));
  get_doubles("run.times");
  get_doubles("run.s");
  get_doubles("pde.snapshots");
}

OutputMeta make_meta(const RunConfig& cfg) { return {cfg.hash(), std::string(module_version())}; }

std::string scattering_json(const ScatteringData& d, const OutputMeta& meta) {
  Json j;
  j["zgrid"] = d.zgrid;
  j["r"] = cjson_list(d.r);
  j["s11"] = cjson_list(d.s11);
  j["s21"] = cjson_list(d.s21);
  j["eigenvalues"] = cjson_list(d.eigenvalues);
  j["norming"] = cjson_list(d.norming);
  j["generic"] = d.generic;
  j["d_plus"] = cjson(d.d_plus);
  j["d_minus"] = cjson(d.d_minus);
  Json m{{"h", d.meta.h}, {"decay_tol", d.meta.decay_tol}, {"delta", d.meta.delta}};
  m.update(meta_json(meta));
  j["meta"] = m;
  return dump(j);
}

ScatteringData parse_scattering_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    ScatteringData d;
    d.zgrid = j.at("zgrid").get<std::vector<double>>();
    d.r = parse_complex_list(j.at("r"));
    d.s11 = parse_complex_list(j.at("s11"));
    if (j.contains("s21")) d.s21 = parse_complex_list(j.at("s21"));
    d.eigenvalues = parse_complex_list(j.at("eigenvalues"));
    d.norming = parse_complex_list(j.at("norming"));
    d.generic = j.at("generic").get<bool>();
    d.d_plus = parse_complex(j.at("d_plus"));
    d.d_minus = parse_complex(j.at("d_minus"));
    const auto& m = j.at("meta");
    d.meta = {m.at("h").get<double>(), m.at("decay_tol").get<double>(), m.at("delta").get<double>()};
    return d;
  } catch (const Json::exception& e) {
    throw InvalidConfig(std::string("malformed scattering JSON: ") + e.what());
  }
}

std::string spectrum_json(const std::vector<NormingDetail>& details, const GenericInfo& generic,
                          const OutputMeta& meta) {
  Json eig = Json::array();
  for (const auto& d : details) {
    eig.push_back(Json{{"nu", cjson(d.nu)},
                       {"modulus_defect", std::abs(std::abs(d.nu) - 1.0)},
                       {"norming", cjson(d.c)},
                       {"kappa", cjson(d.kappa)},
                       {"ds11", cjson(d.ds11)},
                       {"imag_defect", d.imag_defect}});
  }
  Json j{{"eigenvalues", eig},
         {"generic", generic.generic},
         {"borderline", generic.borderline},
         {"d_plus", cjson(generic.d_plus)},
         {"d_minus", cjson(generic.d_minus)},
         {"meta", meta_json(meta)}};
  return dump(j);
}

std::string tfunction_json(double xi, const TExpansion& e, Complex alpha,
                           const std::vector<Complex>& eigenvalues, const OutputMeta& meta) {
  const StationaryPoints sp = stationary_points(xi);
  Json j{{"xi", xi},
         {"stationary_points", Json::array({sp.points[0].real(), sp.points[1].real(),
                                            sp.points[2].real(), sp.points[3].real()})},
         {"eigenvalues", cjson_list(eigenvalues)},
         {"T_infinity", cjson(e.T_infinity)},
         {"T1", e.T1},
         {"alpha_infinity", cjson(alpha)},
         {"exp_alpha", cjson(std::exp(alpha))},
         {"quadrature_error", e.error_estimate},
         {"meta", meta_json(meta)}};
  return dump(j);
}

std::string asymptotics_json(const std::vector<AsymptoticOutput>& points,
                             const AsymptoticsOptions& o, const OutputMeta& meta) {
  Json arr = Json::array();
  for (const auto& p : points) {
    arr.push_back(Json{{"x", p.x},
                       {"t", p.t},
                       {"xi", p.xi},
                       {"s", p.s},
                       {"q", cjson(p.q)},
                       {"leading", cjson(p.leading)},
                       {"correction", cjson(p.correction)},
                       {"order_estimate", p.order_estimate}});
  }
  Json j{{"settings",
          Json{{"C", o.C},
               {"varsigma", o.varsigma},
               {"s_definition", to_string(o.s_definition)},
               {"theta_reading", to_string(o.theta)},
               {"sign_convention", to_string(o.sign)},
               {"log_branch", to_string(o.branch)}}},
         {"points", arr},
         {"meta", meta_json(meta)}};
  return dump(j);
}

namespace {

Json manifest_object(const RunManifest& m) {
  return Json{{"L", m.L},
              {"x_left", m.x_left},
              {"x_right", m.x_right},
              {"h", m.h},
              {"dt", m.dt},
              {"t_end", m.t_end},
              {"scheme", "MOL-FD4-RK4"},
              {"sponge", Json{{"width", m.sponge.width}, {"rate", m.sponge.rate}}},
              {"profile", m.profile}};
}

}  // namespace

std::string manifest_json(const RunManifest& m, const OutputMeta& meta) {
  Json j = manifest_object(m);
  j["meta"] = meta_json(meta);
  return dump(j);
}

std::string comparison_json(const ComparisonReport& r, const RunManifest& m,
                            const AsymptoticsOptions& o, double s_ray, const OutputMeta& meta) {
  Json pts = Json::array();
  for (const auto& p : r.points) {
    pts.push_back(Json{{"x", p.x},
                       {"t", p.t},
                       {"s", p.s},
                       {"numeric", cjson(p.numeric)},
                       {"asymptotic", cjson(p.asymptotic)},
                       {"error", p.error}});
  }
  Json rate = r.has_rate ? Json{{"slope", r.rate.slope}, {"intercept", r.rate.intercept},
                                {"target", -1.0 / 3.0}, {"within_band",
                                 std::abs(r.rate.slope + 1.0 / 3.0) <= 0.3}}
                         : Json(nullptr);
  Json j{{"s_ray", s_ray},
         {"settings",
          Json{{"s_definition", to_string(o.s_definition)},
               {"theta_reading", to_string(o.theta)},
               {"sign_convention", to_string(o.sign)},
               {"log_branch", to_string(o.branch)},
               {"C", o.C}}},
         {"points", pts},
         {"max_error", r.max_error},
         {"rate_fit", rate},
         {"manifest", manifest_object(m)},
         {"meta", meta_json(meta)}};
  return dump(j);
}

void write_snapshot_csv(std::ostream& out, const FieldState& s, const OutputMeta& meta) {
  csv_header(out, meta);
  char buf[128];
  std::snprintf(buf, sizeof buf, "# t=%.17g\n", s.t);
  out << buf << "x,re,im\n";
  for (std::size_t i = 0; i < s.q.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.grid.x(i), s.q[i].real(), s.q[i].imag());
    out << buf;
  }
}

void write_painleve_csv(std::ostream& out, const Painleve2Solution& sol, const OutputMeta& meta) {
  csv_header(out, meta);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, sol.a());
  out << "# a=" << std::string_view(buf, res.ptr - buf) << "\n";
  sol.write_csv(out);
}

void write_signature_csv(std::ostream& out, double xi, double re_min, double re_max,
                         double im_min, double im_max, int n_re, int n_im,
                         const OutputMeta& meta) {
  if (n_re < 2 || n_im < 2) throw InvalidConfig("signature grid needs at least 2 x 2 samples");
  csv_header(out, meta);
  char buf[128];
  std::snprintf(buf, sizeof buf, "# xi=%.17g\n", xi);
  out << buf << "re_z,im_z,re_2itheta\n";
  for (int j = 0; j < n_im; ++j) {
    const double im = im_min + (im_max - im_min) * j / (n_im - 1);
    for (int i = 0; i < n_re; ++i) {
      const double re = re_min + (re_max - re_min) * i / (n_re - 1);
      if (re == 0.0 && im == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", re, im,
                    re_two_i_theta(Complex{re, im}, xi));
      out << buf;
    }
  }
}

std::string error_json(std::string_view kind, std::string_view message, int exit_code) {
  Json j{{"error", Json{{"kind", kind}, {"message", message}, {"exit_code", exit_code}}},
         {"version", module_version()}};
  return j.dump() + "\n";
}

}  // namespace cmkdv
