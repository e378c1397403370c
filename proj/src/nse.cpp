/*
 * Copyright 2026 The GES Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ges/nse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

#include "ges/errors.hpp"
#include "ges/random.hpp"

namespace ges {
namespace {

using json = nlohmann::json;

bool is_positive_half(const ModeIndex& k) {
  for (int c : k) {
    if (c != 0) return c > 0;
  }
  return false;
}

ModeIndex negate(const ModeIndex& k) { return {-k[0], -k[1], -k[2]}; }

double norm_sq(const ModeIndex& k) {
  return static_cast<double>(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
}

std::array<double, 3> default_polarization(const ModeIndex& k) {
  std::size_t axis = 0;
  for (std::size_t c = 1; c < 3; ++c) {
    if (std::abs(k[c]) < std::abs(k[axis])) axis = c;
  }
  std::array<double, 3> a{};
  a[axis] = 1.0;
  return a;
}

double number_at(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ForcingError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

TimeProfile parse_time(const json& j) {
  TimeProfile tp;
  if (j.is_null()) return tp;
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ForcingError("time profile needs a string 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "const") {
    tp.kind = TimeProfile::Kind::kConst;
  } else if (kind == "sin") {
    tp.kind = TimeProfile::Kind::kSin;
    tp.omega = number_at(j, "omega", 1.0);
    tp.phase = number_at(j, "phase", 0.0);
  } else if (kind == "sampled") {
    tp.kind = TimeProfile::Kind::kSampled;
    if (!j.contains("t") || !j.contains("v") || !j.at("t").is_array() || !j.at("v").is_array()) {
      throw ForcingError("sampled time profile needs arrays 't' and 'v'");
    }
    for (const auto& x : j.at("t")) {
      if (!x.is_number()) throw ForcingError("sampled 't' must hold numbers");
      tp.times.push_back(x.get<double>());
    }
    for (const auto& x : j.at("v")) {
      if (!x.is_number()) throw ForcingError("sampled 'v' must hold numbers");
      tp.values.push_back(x.get<double>());
    }
    if (tp.times.empty() || tp.times.size() != tp.values.size()) {
      throw ForcingError("sampled 't' and 'v' must be non-empty and of equal length");
    }
    if (!std::is_sorted(tp.times.begin(), tp.times.end()) ||
        std::adjacent_find(tp.times.begin(), tp.times.end()) != tp.times.end()) {
      throw ForcingError("sampled 't' must be strictly increasing");
    }
  } else {
    throw ForcingError("unknown time kind '" + kind + "'");
  }
  if (!std::isfinite(tp.omega) || !std::isfinite(tp.phase)) throw ForcingError("non-finite time parameter");
  for (double v : tp.values) {
    if (!std::isfinite(v)) throw ForcingError("non-finite sampled value");
  }
  return tp;
}

json time_to_json(const TimeProfile& tp) {
  switch (tp.kind) {
    case TimeProfile::Kind::kConst:
      return {{"kind", "const"}};
    case TimeProfile::Kind::kSin:
      return {{"kind", "sin"}, {"omega", tp.omega}, {"phase", tp.phase}};
    case TimeProfile::Kind::kSampled:
      return {{"kind", "sampled"}, {"t", tp.times}, {"v", tp.values}};
  }
  return {};
}

// Cumulative trapezoid integral of ||g||^2_{V'} on t_lo + i*step.
struct CumulativeIntegral {
  double t_lo = 0.0;
  double step = 0.0;
  std::vector<double> c;

  CumulativeIntegral(const ForcingProfile& g, double lo, double hi, double h)
      : t_lo(lo), step(h) {
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h - 1e-9)) + 1;
    c.assign(n, 0.0);
    double prev = g.vprime_norm_sq(lo);
    for (std::size_t i = 1; i < n; ++i) {
      const double cur = g.vprime_norm_sq(lo + static_cast<double>(i) * h);
      c[i] = c[i - 1] + 0.5 * h * (prev + cur);
      prev = cur;
    }
  }

  double at(double t) const {
    const double x = (t - t_lo) / step;
    if (x <= 0.0) return 0.0;
    const auto i = static_cast<std::size_t>(std::floor(x));
    if (i + 1 >= c.size()) return c.back();
    const double f = x - static_cast<double>(i);
    return c[i] + f * (c[i + 1] - c[i]);
  }

  double window_sup(double t_hi, double length) const {
    double best = 0.0;
    for (std::size_t i = 0;; ++i) {
      const double t = t_lo + static_cast<double>(i) * step;
      if (t > t_hi + 1e-12) break;
      best = std::max(best, at(t + length) - c[i]);
    }
    return best;
  }
};

void check_window(double t_lo, double t_hi, double step) {
  if (!(step > 0.0) || !(t_hi >= t_lo) || !std::isfinite(t_lo) || !std::isfinite(t_hi)) {
    throw UsageError("quadrature window needs t_lo <= t_hi and step > 0");
  }
}

}  // namespace

double TimeProfile::operator()(double t) const {
  switch (kind) {
    case Kind::kConst:
      return 1.0;
    case Kind::kSin:
      return std::sin(omega * t + phase);
    case Kind::kSampled: {
      if (t <= times.front()) return values.front();
      if (t >= times.back()) return values.back();
      const auto it = std::upper_bound(times.begin(), times.end(), t);
      const auto i = static_cast<std::size_t>(it - times.begin());
      const double f = (t - times[i - 1]) / (times[i] - times[i - 1]);
      return values[i - 1] + f * (values[i] - values[i - 1]);
    }
  }
  return 0.0;
}

ForcingProfile::ForcingProfile(std::vector<ForcingMode> modes, double shift)
    : modes_(std::move(modes)), shift_(shift) {
  for (const auto& m : modes_) {
    if (norm_sq(m.k) == 0.0) throw UsageError("forcing mode k must be nonzero");
    if (!std::isfinite(m.amp.real()) || !std::isfinite(m.amp.imag())) {
      throw UsageError("forcing amplitude must be finite");
    }
  }
}

ForcingProfile ForcingProfile::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ForcingError(std::string("forcing: ") + e.what());
  }
  if (!j.is_object() || !j.contains("modes") || !j.at("modes").is_array()) {
    throw ForcingError("forcing: expected an object with a 'modes' array");
  }
  std::vector<ForcingMode> modes;
  for (const auto& m : j.at("modes")) {
    if (!m.is_object()) throw ForcingError("forcing: mode entries must be objects");
    ForcingMode fm;
    if (!m.contains("k") || !m.at("k").is_array() || m.at("k").size() != 3) {
      throw ForcingError("forcing: 'k' must be an array of three integers");
    }
    for (std::size_t c = 0; c < 3; ++c) {
      if (!m.at("k")[c].is_number_integer()) throw ForcingError("forcing: 'k' must hold integers");
      fm.k[c] = m.at("k")[c].get<int>();
    }
    if (norm_sq(fm.k) == 0.0) throw ForcingError("forcing: mode k must be nonzero");
    if (m.contains("amp")) {
      const auto& a = m.at("amp");
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
        throw ForcingError("forcing: 'amp' must be [re, im]");
      }
      fm.amp = {a[0].get<double>(), a[1].get<double>()};
      if (!std::isfinite(fm.amp.real()) || !std::isfinite(fm.amp.imag())) {
        throw ForcingError("forcing: non-finite amplitude");
      }
    }
    if (m.contains("dir")) {
      const auto& d = m.at("dir");
      if (!d.is_array() || d.size() != 3) throw ForcingError("forcing: 'dir' must have 3 entries");
      std::array<double, 3> dir{};
      for (std::size_t c = 0; c < 3; ++c) {
        if (!d[c].is_number()) throw ForcingError("forcing: 'dir' must hold numbers");
        dir[c] = d[c].get<double>();
      }
      fm.direction = dir;
    }
    fm.time = parse_time(m.contains("time") ? m.at("time") : json());
    modes.push_back(std::move(fm));
  }
  ForcingProfile g(std::move(modes));
  for (std::size_t i = 0; i < g.modes_.size(); ++i) {
    const auto e = g.polarization(i);
    if (!std::isfinite(e[0])) throw ForcingError("forcing: 'dir' is parallel to k");
  }
  return g;
}

std::string ForcingProfile::to_json_text() const {
  json modes = json::array();
  for (const auto& m : modes_) {
    json e{{"k", m.k}, {"amp", {m.amp.real(), m.amp.imag()}}, {"time", time_to_json(m.time)}};
    if (m.direction) e["dir"] = *m.direction;
    modes.push_back(std::move(e));
  }
  return json{{"modes", modes}}.dump();
}

ForcingProfile ForcingProfile::shifted(double sigma) const {
  ForcingProfile g = *this;
  g.shift_ += sigma;
  return g;
}

bool ForcingProfile::is_time_independent() const {
  return std::all_of(modes_.begin(), modes_.end(),
                     [](const ForcingMode& m) { return m.time.kind == TimeProfile::Kind::kConst; });
}

bool ForcingProfile::is_zero() const {
  return std::all_of(modes_.begin(), modes_.end(),
                     [](const ForcingMode& m) { return m.amp == Complex{}; });
}

double ForcingProfile::vprime_norm_sq(double t) const {
  double s = 0.0;
  for (const auto& m : modes_) {
    const double f = m.time(t + shift_);
    s += std::norm(m.amp) * f * f / norm_sq(m.k);
  }
  return s;
}

std::array<double, 3> ForcingProfile::polarization(std::size_t i) const {
  const auto& m = modes_.at(i);
  const auto a = m.direction.value_or(default_polarization(m.k));
  const double kk = norm_sq(m.k);
  const double ak = a[0] * m.k[0] + a[1] * m.k[1] + a[2] * m.k[2];
  std::array<double, 3> e{};
  double n = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    e[c] = a[c] - ak * m.k[c] / kk;
    n += e[c] * e[c];
  }
  n = std::sqrt(n);
  if (n < 1e-12) return {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
  for (auto& x : e) x /= n;
  return e;
}

double translational_bound(const ForcingProfile& g, double t_lo, double t_hi, double step) {
  check_window(t_lo, t_hi, step);
  if (g.is_time_independent()) return g.vprime_norm_sq(0.0);
  const CumulativeIntegral ci(g, t_lo, t_hi + 1.0, step);
  return ci.window_sup(t_hi, 1.0);
}

std::vector<NormalityEntry> normality_check(const ForcingProfile& g, std::span<const double> eps,
                                            double t_lo, double t_hi, double step,
                                            double delta_max) {
  check_window(t_lo, t_hi, step);
  if (!(delta_max >= step)) throw UsageError("normality window limit must be at least one step");
  const CumulativeIntegral ci(g, t_lo, t_hi + delta_max, step);
  std::vector<NormalityEntry> out;
  for (double e : eps) {
    if (!(e > 0.0)) throw UsageError("normality eps must be positive");
    NormalityEntry entry{e, std::nullopt, false};
    if (ci.window_sup(t_hi, delta_max) <= e) {
      entry.delta = delta_max;
      entry.unbounded = true;
    } else if (ci.window_sup(t_hi, step) <= e) {
      double lo = step;
      double hi = delta_max;
      for (int it = 0; it < 60 && hi - lo > 1e-12 * delta_max; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ci.window_sup(t_hi, mid) <= e ? lo : hi) = mid;
      }
      entry.delta = lo;
    }
    out.push_back(entry);
  }
  return out;
}

double absorbing_radius(double l2b_norm_sq, double nu, double lambda1) {
  if (!(nu > 0.0) || !(lambda1 > 0.0)) throw UsageError("nu and lambda1 must be positive");
  if (!(l2b_norm_sq >= 0.0)) throw UsageError("translational bound must be non-negative");
  return 2.0 * l2b_norm_sq / (nu * (1.0 - std::exp(-nu * lambda1)));
}

double absorption_time(double start_norm_sq, double target_norm_sq, double l2b_norm_sq,
                       double nu, double lambda1) {
  const double level = l2b_norm_sq / (nu * (1.0 - std::exp(-nu * lambda1)));
  if (start_norm_sq + level <= target_norm_sq) return 0.0;
  if (target_norm_sq <= level) return std::numeric_limits<double>::quiet_NaN();
  return std::log(start_norm_sq / (target_norm_sq - level)) / (nu * lambda1);
}

ForcingAnalysis analyze_forcing(const ForcingProfile& g, double nu, double lambda1,
                                std::span<const double> eps, double t_lo, double t_hi,
                                double step) {
  ForcingAnalysis a;
  a.l2b_norm_sq = translational_bound(g, t_lo, t_hi, step);
  a.radius = absorbing_radius(a.l2b_norm_sq, nu, lambda1);
  a.normality = normality_check(g, eps, t_lo, t_hi, step);
  return a;
}

// ---------------------------------------------------------------------------

namespace {

DualMetricSpace nse_space(int k_max, std::optional<double> ball) {
  DualMetricSpace::Options o;
  o.space = "nse";
  o.index_dim = 3;
  o.components = 3;
  o.truncation_radius = k_max;
  o.ball_radius = ball;
  return DualMetricSpace(o);
}

std::optional<double> ball_for(double radius, BallConvention c) {
  if (!(radius > 0.0)) return std::nullopt;
  return c == BallConvention::kRadius ? radius : std::sqrt(radius);
}

}  // namespace

NseGalerkin::NseGalerkin(NseOptions opts)
    : opts_(std::move(opts)), space_(nse_space(1, std::nullopt)) {
  if (opts_.k_max < 1 || opts_.k_max > 12) throw UsageError("k_max must lie in [1, 12]");
  if (!(opts_.nu > 0.0)) throw UsageError("nu must be positive");

  const int K = opts_.k_max;
  // Canonical positive half first, so ODE states pack the first half of modes_.
  std::vector<ModeIndex> half;
  for (int a = -K; a <= K; ++a) {
    for (int b = -K; b <= K; ++b) {
      for (int c = -K; c <= K; ++c) {
        const ModeIndex k{a, b, c};
        if (is_positive_half(k) && norm_sq(k) <= K * K) half.push_back(k);
      }
    }
  }
  modes_ = half;
  for (const auto& k : half) modes_.push_back(negate(k));
  const std::size_t n = modes_.size();
  const std::size_t nh = half.size();
  ksq_.resize(n);
  neg_.resize(n);
  std::map<ModeIndex, std::size_t> lookup;
  for (std::size_t i = 0; i < n; ++i) {
    ksq_[i] = norm_sq(modes_[i]);
    lookup[modes_[i]] = i;
  }
  for (std::size_t i = 0; i < n; ++i) neg_[i] = lookup.at(negate(modes_[i]));

  tri_begin_.push_back(0);
  for (std::size_t i = 0; i < nh; ++i) {
    const auto& k = modes_[i];
    for (std::size_t p = 0; p < n; ++p) {
      const ModeIndex q{k[0] - modes_[p][0], k[1] - modes_[p][1], k[2] - modes_[p][2]};
      const auto it = lookup.find(q);
      if (it == lookup.end()) continue;
      tri_p_.push_back(static_cast<std::uint32_t>(p));
      tri_q_.push_back(static_cast<std::uint32_t>(it->second));
    }
    tri_begin_.push_back(tri_p_.size());
  }

  const auto& fm = opts_.forcing.modes();
  for (std::size_t f = 0; f < fm.size(); ++f) {
    const auto it = lookup.find(fm[f].k);
    if (it == lookup.end()) throw UsageError("forcing mode lies outside the Galerkin mode set");
    const auto e = opts_.forcing.polarization(f);
    if (!std::isfinite(e[0])) throw UsageError("forcing polarization is parallel to k");
    const bool pos = it->second < nh;
    const Complex amp = (pos ? fm[f].amp : std::conj(fm[f].amp)) / std::sqrt(2.0);
    ModeForcing m{pos ? it->second : neg_[it->second], f, {}};
    for (std::size_t c = 0; c < 3; ++c) m.coeff[c] = amp * e[c];
    forcing_map_.push_back(m);
  }
  autonomous_ = opts_.forcing.is_time_independent();
  l2b_sq_ = translational_bound(opts_.forcing, opts_.bound_t_lo, opts_.bound_t_hi,
                                opts_.bound_step);
  radius_ = ges::absorbing_radius(l2b_sq_, opts_.nu, lambda1());
  space_ = nse_space(K, ball_for(radius_, opts_.convention));
}

std::size_t NseGalerkin::mode_of(const ModeIndex& k) const {
  const auto it = std::lower_bound(modes_.begin(), modes_.begin() + modes_.size() / 2, k,
                                   [](const ModeIndex& a, const ModeIndex& b) { return index_less(a, b); });
  if (it != modes_.begin() + modes_.size() / 2 && *it == k) {
    return static_cast<std::size_t>(it - modes_.begin());
  }
  const auto nk = negate(k);
  const auto jt = std::lower_bound(modes_.begin(), modes_.begin() + modes_.size() / 2, nk,
                                   [](const ModeIndex& a, const ModeIndex& b) { return index_less(a, b); });
  if (jt != modes_.begin() + modes_.size() / 2 && *jt == nk) {
    return neg_[static_cast<std::size_t>(jt - modes_.begin())];
  }
  return modes_.size();
}

std::vector<double> NseGalerkin::pack(const CoeffState& u) const {
  if (u.space() != "nse" || u.index_dim() != 3 || u.components() != 3) {
    throw UsageError("expected a 3-component state of space 'nse', got '" + u.space() + "'");
  }
  const std::size_t nh = modes_.size() / 2;
  std::vector<Complex> full(modes_.size() * 3);
  std::vector<bool> seen(modes_.size(), false);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::size_t m = mode_of(u.index(i));
    if (m >= modes_.size()) throw UsageError("state index lies outside the Galerkin mode set");
    seen[m] = true;
    for (std::size_t c = 0; c < 3; ++c) full[m * 3 + c] = u.value(i)[c];
  }
  double scale = 0.0;
  for (const auto& v : full) scale = std::max(scale, std::abs(v));
  std::vector<double> y(nh * 6);
  for (std::size_t m = 0; m < nh; ++m) {
    const std::size_t nm = neg_[m];
    for (std::size_t c = 0; c < 3; ++c) {
      Complex v = full[m * 3 + c];
      if (seen[nm]) {
        const Complex w = std::conj(full[nm * 3 + c]);
        if (std::abs(v - w) > 1e-9 * (1.0 + scale)) {
          throw UsageError("state violates the reality condition u(-k) = conj(u(k))");
        }
        if (!seen[m]) v = w;
      }
      y[m * 6 + 2 * c] = v.real();
      y[m * 6 + 2 * c + 1] = v.imag();
    }
  }
  return y;
}

CoeffState NseGalerkin::unpack(std::span<const double> y) const {
  const std::size_t nh = modes_.size() / 2;
  std::vector<Complex> vals(modes_.size() * 3);
  for (std::size_t m = 0; m < nh; ++m) {
    for (std::size_t c = 0; c < 3; ++c) {
      const Complex v{y[m * 6 + 2 * c], y[m * 6 + 2 * c + 1]};
      vals[m * 3 + c] = v;
      vals[neg_[m] * 3 + c] = std::conj(v);
    }
  }
  return CoeffState("nse", 3, 3, modes_, std::move(vals));
}

void NseGalerkin::rhs(double t, std::span<const double> y, std::span<double> dydt) const {
  const std::size_t n = modes_.size();
  const std::size_t nh = n / 2;
  thread_local std::vector<double> ur, ui;
  ur.resize(n * 3);
  ui.resize(n * 3);
  for (std::size_t m = 0; m < nh; ++m) {
    const std::size_t nm = neg_[m];
    for (std::size_t c = 0; c < 3; ++c) {
      ur[m * 3 + c] = y[m * 6 + 2 * c];
      ui[m * 3 + c] = y[m * 6 + 2 * c + 1];
      ur[nm * 3 + c] = ur[m * 3 + c];
      ui[nm * 3 + c] = -ui[m * 3 + c];
    }
  }
  for (std::size_t m = 0; m < nh; ++m) {
    double ar[3] = {0.0, 0.0, 0.0};
    double ai[3] = {0.0, 0.0, 0.0};
    for (std::size_t j = tri_begin_[m]; j < tri_begin_[m + 1]; ++j) {
      const std::size_t p = tri_p_[j] * 3;
      const std::size_t q = tri_q_[j];
      const auto& kq = modes_[q];
      const double sr = ur[p] * kq[0] + ur[p + 1] * kq[1] + ur[p + 2] * kq[2];
      const double si = ui[p] * kq[0] + ui[p + 1] * kq[1] + ui[p + 2] * kq[2];
      const std::size_t q3 = q * 3;
      for (std::size_t c = 0; c < 3; ++c) {
        ar[c] += sr * ur[q3 + c] - si * ui[q3 + c];
        ai[c] += sr * ui[q3 + c] + si * ur[q3 + c];
      }
    }
    // B = i * acc, then Leray projection.
    double br[3] = {-ai[0], -ai[1], -ai[2]};
    double bi[3] = {ar[0], ar[1], ar[2]};
    const auto& k = modes_[m];
    const double kbr = (br[0] * k[0] + br[1] * k[1] + br[2] * k[2]) / ksq_[m];
    const double kbi = (bi[0] * k[0] + bi[1] * k[1] + bi[2] * k[2]) / ksq_[m];
    const double decay = opts_.nu * ksq_[m];
    for (std::size_t c = 0; c < 3; ++c) {
      const double nr = br[c] - kbr * k[c];
      const double ni = bi[c] - kbi * k[c];
      dydt[m * 6 + 2 * c] = -decay * ur[m * 3 + c] - nr;
      dydt[m * 6 + 2 * c + 1] = -decay * ui[m * 3 + c] - ni;
    }
  }
  const double ts = t + opts_.forcing.shift();
  for (const auto& f : forcing_map_) {
    const double a = opts_.forcing.modes()[f.forcing_index].time(ts);
    for (std::size_t c = 0; c < 3; ++c) {
      dydt[f.mode * 6 + 2 * c] += a * f.coeff[c].real();
      dydt[f.mode * 6 + 2 * c + 1] += a * f.coeff[c].imag();
    }
  }
}

std::vector<CoeffState> NseGalerkin::evolve(double s, const CoeffState& x,
                                            std::span<const double> ts, int branch) const {
  if (branch != 0) throw UsageError("nse has a single branch");
  auto y0 = pack(x);
  double scale = 0.0;
  for (double v : y0) scale = std::max(scale, std::abs(v));
  const auto u0 = unpack(y0);
  if (divergence_defect(u0) > 1e-8 * (1.0 + scale)) {
    throw UsageError("initial state is not divergence-free");
  }
  const auto ys = integrate_dopri5(
      [this](double t, std::span<const double> y, std::span<double> dy) { rhs(t, y, dy); }, s,
      std::move(y0), ts, opts_.ode);
  std::vector<CoeffState> out;
  out.reserve(ys.size());
  for (const auto& y : ys) out.push_back(unpack(y));
  return out;
}

CoeffState NseGalerkin::rhs_state(double t, const CoeffState& u) const {
  const auto y = pack(u);
  std::vector<double> dy(y.size());
  rhs(t, y, dy);
  return unpack(dy);
}

double NseGalerkin::nonlinear_energy_transfer(const CoeffState& u) const {
  const auto y = pack(u);
  std::vector<double> dy(y.size());
  rhs(0.0, y, dy);
  // Strip the linear and forcing parts; what remains is -N.
  const std::size_t nh = modes_.size() / 2;
  const double ts = opts_.forcing.shift();
  std::vector<double> g(y.size(), 0.0);
  for (const auto& f : forcing_map_) {
    const double a = opts_.forcing.modes()[f.forcing_index].time(ts);
    for (std::size_t c = 0; c < 3; ++c) {
      g[f.mode * 6 + 2 * c] += a * f.coeff[c].real();
      g[f.mode * 6 + 2 * c + 1] += a * f.coeff[c].imag();
    }
  }
  double s = 0.0;
  for (std::size_t m = 0; m < nh; ++m) {
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t r = 0; r < 2; ++r) {
        const std::size_t i = m * 6 + 2 * c + r;
        const double nl = -(dy[i] + opts_.nu * ksq_[m] * y[i] - g[i]);
        s += 2.0 * y[i] * nl;
      }
    }
  }
  return s;
}

std::optional<EnergyTerms> NseGalerkin::energy_terms(double t, const CoeffState& u) const {
  const auto y = pack(u);
  const std::size_t nh = modes_.size() / 2;
  EnergyTerms e;
  for (std::size_t m = 0; m < nh; ++m) {
    double a = 0.0;
    for (std::size_t r = 0; r < 6; ++r) a += y[m * 6 + r] * y[m * 6 + r];
    e.dissipation += 2.0 * opts_.nu * ksq_[m] * a;
  }
  const double ts = t + opts_.forcing.shift();
  for (const auto& f : forcing_map_) {
    const double a = opts_.forcing.modes()[f.forcing_index].time(ts);
    for (std::size_t c = 0; c < 3; ++c) {
      e.forcing_work += 2.0 * a *
                        (f.coeff[c].real() * y[f.mode * 6 + 2 * c] +
                         f.coeff[c].imag() * y[f.mode * 6 + 2 * c + 1]);
    }
  }
  return e;
}

CoeffState NseGalerkin::random_field(std::uint64_t seed, double norm) const {
  const std::size_t nh = modes_.size() / 2;
  SplitMix64 rng(mix_seed(seed, 0x6e7365ULL));
  std::vector<double> y(nh * 6);
  double total = 0.0;
  for (std::size_t m = 0; m < nh; ++m) {
    const auto& k = modes_[m];
    const double amp = 1.0 / ksq_[m];
    double vr[3], vi[3];
    for (std::size_t c = 0; c < 3; ++c) {
      vr[c] = amp * rng.normal();
      vi[c] = amp * rng.normal();
    }
    const double pr = (vr[0] * k[0] + vr[1] * k[1] + vr[2] * k[2]) / ksq_[m];
    const double pi = (vi[0] * k[0] + vi[1] * k[1] + vi[2] * k[2]) / ksq_[m];
    for (std::size_t c = 0; c < 3; ++c) {
      y[m * 6 + 2 * c] = vr[c] - pr * k[c];
      y[m * 6 + 2 * c + 1] = vi[c] - pi * k[c];
      total += 2.0 * (y[m * 6 + 2 * c] * y[m * 6 + 2 * c] +
                      y[m * 6 + 2 * c + 1] * y[m * 6 + 2 * c + 1]);
    }
  }
  const double f = total > 0.0 ? norm / std::sqrt(total) : 0.0;
  for (auto& v : y) v *= f;
  return unpack(y);
}

CoeffState NseGalerkin::single_mode_field(const ModeIndex& k, Complex amplitude) const {
  const std::size_t m = mode_of(k);
  if (m >= modes_.size()) throw UsageError("mode lies outside the Galerkin mode set");
  ForcingProfile probe({ForcingMode{k, amplitude, std::nullopt, {}}});
  const auto e = probe.polarization(0);
  const std::size_t nh = modes_.size() / 2;
  const bool pos = m < nh;
  const std::size_t h = pos ? m : neg_[m];
  const Complex a = (pos ? amplitude : std::conj(amplitude)) / std::sqrt(2.0);
  std::vector<double> y(nh * 6, 0.0);
  for (std::size_t c = 0; c < 3; ++c) {
    y[h * 6 + 2 * c] = (a * e[c]).real();
    y[h * 6 + 2 * c + 1] = (a * e[c]).imag();
  }
  return unpack(y);
}

CoeffState NseGalerkin::forcing_state(double t) const {
  const std::size_t nh = modes_.size() / 2;
  std::vector<double> y(nh * 6, 0.0);
  const double ts = t + opts_.forcing.shift();
  for (const auto& f : forcing_map_) {
    const double a = opts_.forcing.modes()[f.forcing_index].time(ts);
    for (std::size_t c = 0; c < 3; ++c) {
      y[f.mode * 6 + 2 * c] += a * f.coeff[c].real();
      y[f.mode * 6 + 2 * c + 1] += a * f.coeff[c].imag();
    }
  }
  return unpack(y);
}

double NseGalerkin::divergence_defect(const CoeffState& u) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& k = u.index(i);
    const double kn = std::sqrt(norm_sq(k));
    if (kn == 0.0) continue;
    Complex d{};
    for (std::size_t c = 0; c < 3; ++c) d += static_cast<double>(k[c]) * u.value(i)[c];
    worst = std::max(worst, std::abs(d) / kn);
  }
  return worst;
}

double NseGalerkin::reality_defect(const CoeffState& u) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto other = u.find(negate(u.index(i)));
    for (std::size_t c = 0; c < 3; ++c) {
      const Complex w = other.empty() ? Complex{} : std::conj(other[c]);
      worst = std::max(worst, std::abs(u.value(i)[c] - w));
    }
  }
  return worst;
}

std::vector<CoeffState> NseGalerkin::sample_phase_space(double /*t*/, double /*s*/,
                                                        std::size_t count,
                                                        std::uint64_t seed) const {
  const double radius = space_.options().ball_radius.value_or(1.0);
  SplitMix64 rng(mix_seed(seed, 0x6e73652d78ULL));
  std::vector<CoeffState> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = radius * rng.uniform();
    out.push_back(random_field(mix_seed(seed, i), r));
  }
  return out;
}

}  // namespace ges
