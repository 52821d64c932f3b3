#include "cmkdv/profile.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cmkdv/errors.hpp"

namespace cmkdv {

UniformGrid UniformGrid::symmetric(double L, double h) { return spanning(-L, L, h); }

UniformGrid UniformGrid::spanning(double x_left, double x_right, double h) {
  if (!(h > 0.0) || !(x_right > x_left)) throw DomainError("grid: need h > 0 and x_right > x_left");
  const auto cells = static_cast<std::size_t>(std::llround((x_right - x_left) / h));
  return {x_left, (x_right - x_left) / static_cast<double>(cells), cells + 1};
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> xs(size);
  for (std::size_t i = 0; i < size; ++i) xs[i] = x(i);
  return xs;
}

InitialProfile::InitialProfile(UniformGrid grid, std::vector<Complex> q0, double decay_tol,
                               std::string label)
    : grid_(grid), q0_(std::move(q0)), decay_tol_(decay_tol), label_(std::move(label)) {
  if (q0_.size() != grid_.size || grid_.size < 8) {
    throw BadProfileSpec("profile: sample count does not match grid");
  }
  if (!(grid_.h > 0.0)) throw BadProfileSpec("profile: grid spacing must be positive");
  if (!(grid_.x0 < 0.0 && grid_.back() > 0.0)) {
    throw BadProfileSpec("profile: grid must straddle x = 0");
  }
  const double left_gap = std::abs(q0_.front() - kLeftBackground);
  const double right_gap = std::abs(q0_.back() - kRightBackground);
  if (left_gap > decay_tol_ || right_gap > decay_tol_) {
    std::ostringstream msg;
    msg << "profile '" << label_ << "': background mismatch |q(x_first)+1|=" << left_gap
        << ", |q(x_last)-1|=" << right_gap << " exceed decay_tol=" << decay_tol_;
    throw BackgroundMismatch(msg.str());
  }
}

namespace {

double parse_param(std::string_view spec, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw BadProfileSpec("profile '" + std::string(spec) + "': bad numeric parameter");
  }
  return value;
}

double sech(double x) { return 1.0 / std::cosh(x); }

InitialProfile read_profile_file(const std::string& path, double decay_tol) {
  std::ifstream in(path);
  if (!in) throw BadProfileSpec("profile file '" + path + "' cannot be opened");
  std::vector<double> xs;
  std::vector<Complex> qs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (auto& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream row(line);
    double x = 0, re = 0, im = 0;
    if (!(row >> x >> re)) {
      if (xs.empty()) continue;  // header line
      throw BadProfileSpec("profile file '" + path + "': malformed row");
    }
    row >> im;
    xs.push_back(x);
    qs.emplace_back(re, im);
  }
  if (xs.size() < 8) throw BadProfileSpec("profile file '" + path + "': too few samples");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (std::abs(xs[i] - xs[i - 1] - h) > 1e-8 * std::max(1.0, std::abs(h))) {
      throw BadProfileSpec("profile file '" + path + "': grid is not uniform");
    }
  }
  return InitialProfile({xs.front(), h, xs.size()}, std::move(qs), decay_tol, "file:" + path);
}

}  // namespace

Complex builtin_profile_value(std::string_view spec, double x) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const bool has_param = colon != std::string_view::npos;
  auto param = [&] {
    if (!has_param) throw BadProfileSpec("profile '" + std::string(spec) + "' needs a parameter");
    return parse_param(spec, spec.substr(colon + 1));
  };
  if (name == "tanh" && !has_param) return std::tanh(x);
  if (name == "step" && !has_param) return x < 0.0 ? -1.0 : 1.0;
  if (name == "tanh_plus_sech2") return std::tanh(x) + param() * sech(x) * sech(x);
  if (name == "tanh_plus_isech") return Complex{std::tanh(x), param() * sech(x)};
  if (name == "tanh_width") {
    const double w = param();
    if (!(w > 0.0)) throw BadProfileSpec("profile tanh_width: width must be positive");
    return std::tanh(x / w);
  }
  throw BadProfileSpec("unknown profile '" + std::string(spec) + "'");
}

InitialProfile build_profile(std::string_view spec, double L, double h, double decay_tol) {
  if (spec.starts_with("file:")) return read_profile_file(std::string(spec.substr(5)), decay_tol);
  const UniformGrid grid = UniformGrid::symmetric(L, h);
  std::vector<Complex> q(grid.size);
  for (std::size_t i = 0; i < grid.size; ++i) q[i] = builtin_profile_value(spec, grid.x(i));
  return InitialProfile(grid, std::move(q), decay_tol, std::string(spec));
}

}  // namespace cmkdv
