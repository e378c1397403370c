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
#include "ges/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ges/errors.hpp"

namespace ges {
namespace {

Json complex_to_json(Complex v) {
  if (v.imag() == 0.0) return v.real();
  return Json::array({v.real(), v.imag()});
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("state value must be a number or [re, im]");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

Json state_to_json(const CoeffState& x) {
  Json idx = Json::array();
  Json val = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    Json k = Json::array();
    for (int d = 0; d < x.index_dim(); ++d) k.push_back(x.index(i)[static_cast<std::size_t>(d)]);
    idx.push_back(std::move(k));
    const auto v = x.value(i);
    if (x.components() == 1) {
      val.push_back(complex_to_json(v[0]));
    } else {
      Json comp = Json::array();
      for (const auto& c : v) comp.push_back(complex_to_json(c));
      val.push_back(std::move(comp));
    }
  }
  return Json{{"space", x.space()},
              {"dim", x.index_dim()},
              {"components", x.components()},
              {"idx", std::move(idx)},
              {"val", std::move(val)}};
}

CoeffState state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("space") || !j.at("space").is_string() ||
      !j.contains("idx") || !j.at("idx").is_array() || !j.contains("val") ||
      !j.at("val").is_array()) {
    throw ParseError("state needs 'space', 'idx' and 'val'");
  }
  const int dim = j.value("dim", 0);
  const int comps = j.value("components", 1);
  if (comps < 1) throw ParseError("state 'components' must be positive");
  const auto& idx = j.at("idx");
  const auto& val = j.at("val");
  if (idx.size() != val.size()) throw ParseError("state 'idx' and 'val' lengths differ");
  int d = dim;
  std::vector<ModeIndex> indices;
  std::vector<Complex> values;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& k = idx[i];
    ModeIndex m{};
    if (k.is_number_integer()) {
      m[0] = k.get<int>();
      if (d == 0) d = 1;
    } else if (k.is_array() && !k.empty() && k.size() <= 3) {
      if (d == 0) d = static_cast<int>(k.size());
      if (static_cast<int>(k.size()) != d) throw ParseError("state indices must share one dimension");
      for (std::size_t c = 0; c < k.size(); ++c) {
        if (!k[c].is_number_integer()) throw ParseError("state indices must be integers");
        m[c] = k[c].get<int>();
      }
    } else {
      throw ParseError("state index must be an integer or a list of 1 to 3 integers");
    }
    indices.push_back(m);
    if (comps == 1) {
      values.push_back(complex_from_json(val[i]));
    } else {
      if (!val[i].is_array() || static_cast<int>(val[i].size()) != comps) {
        throw ParseError("multi-component state values need one entry per component");
      }
      for (const auto& c : val[i]) values.push_back(complex_from_json(c));
    }
  }
  try {
    return CoeffState(j.at("space").get<std::string>(), d == 0 ? 1 : d, comps,
                      std::move(indices), std::move(values));
  } catch (const UsageError& e) {
    throw ParseError(std::string("state: ") + e.what());
  }
}

std::string ensemble_to_jsonl(const PullbackEnsemble& e) {
  std::string out;
  for (const auto& entry : e.entries) {
    Json line{{"t", e.t},
              {"s", entry.start},
              {"branch", entry.branch},
              {"seed", entry.seed_index},
              {"state", state_to_json(entry.state)}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

Json omega_to_json(const OmegaApprox& o) {
  Json points = Json::array();
  for (const auto& p : o.points) points.push_back(state_to_json(p));
  Json profile = Json::array();
  for (const auto& p : o.profile) {
    profile.push_back(Json{{o.forward ? "horizon" : "s", p.s}, {"semidist", p.semidist}});
  }
  Json drift = Json::array();
  for (double d : o.tier_drift) drift.push_back(std::isfinite(d) ? Json(d) : Json(nullptr));
  return Json{{"schema", 1},
              {"system", o.system},
              {"t", o.t},
              {"metric", to_string(o.metric)},
              {"eps_net", o.eps_net},
              {"tol", o.tol},
              {"status", to_string(o.status)},
              {"converged", o.converged},
              {"forward", o.forward},
              {"points", std::move(points)},
              {"profile", std::move(profile)},
              {"tier_drift", std::move(drift)}};
}

std::string profile_csv(std::span<const ProfilePoint> profile, MetricKind metric,
                        const std::string& system, double t, bool with_header) {
  std::ostringstream os;
  if (with_header) os << "s,semidist,metric,system,t\n";
  for (const auto& p : profile) {
    os << format_double(p.s) << ',' << format_double(p.semidist) << ',' << to_string(metric)
       << ',' << system << ',' << format_double(t) << '\n';
  }
  return os.str();
}

}  // namespace ges
