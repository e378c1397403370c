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
#include "ges/omega.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ges/errors.hpp"
#include "ges/parallel.hpp"

namespace ges {
namespace {

double dist_to_set(const DualMetricSpace& space, const CoeffState& x,
                   std::span<const CoeffState> set, MetricKind metric) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : set) {
    best = std::min(best, space.dist(metric, x, y));
    if (best == 0.0) break;
  }
  return best;
}

// True iff some member of `set` lies within eps of x; the scan starts at
// `hint` and widens outward, which is fast when tiers share their ordering.
bool within(const DualMetricSpace& space, const CoeffState& x, std::span<const CoeffState> set,
            double eps, MetricKind metric, std::size_t hint) {
  const std::size_t n = set.size();
  if (n == 0) return false;
  hint = std::min(hint, n - 1);
  for (std::size_t r = 0; r < n; ++r) {
    if (hint + r < n && space.dist(metric, x, set[hint + r]) <= eps) return true;
    if (r > 0 && r <= hint && space.dist(metric, x, set[hint - r]) <= eps) return true;
    if (hint + r >= n && r > hint) break;
  }
  return false;
}

bool non_increasing(std::span<const ProfilePoint> p, std::size_t from) {
  for (std::size_t i = std::max<std::size_t>(from, 1); i < p.size(); ++i) {
    if (p[i].semidist > p[i - 1].semidist + 1e-12 * (1.0 + p[i - 1].semidist)) return false;
  }
  return true;
}

std::vector<CoeffState> flatten(const PullbackEnsemble& e) { return e.states(); }

}  // namespace

OmegaApprox omega_from_images(const DualMetricSpace& space,
                              const std::vector<std::vector<CoeffState>>& images,
                              std::span<const double> keys, MetricKind metric,
                              const OmegaOptions& opts) {
  if (images.size() != keys.size() || images.empty()) {
    throw UsageError("omega construction needs one key per nonempty tier list");
  }
  const std::size_t n = images.size();
  OmegaApprox out;
  out.metric = metric;
  out.eps_net = opts.eps_net;
  out.tol = opts.tol;

  const std::size_t tail = std::min(n, std::max<std::size_t>(2, (n + 2) / 3));
  const std::size_t tail_begin = n - tail;
  std::vector<CoeffState> pool;
  std::vector<std::size_t> slot;
  for (std::size_t i = n; i-- > tail_begin;) {
    pool.insert(pool.end(), images[i].begin(), images[i].end());
    for (std::size_t k = 0; k < images[i].size(); ++k) slot.push_back(k);
  }
  std::vector<char> keep(pool.size(), 0);
  parallel_for(pool.size(), [&](std::size_t c) {
    for (std::size_t i = tail_begin; i < n; ++i) {
      if (!within(space, pool[c], images[i], opts.eps_net, metric, slot[c])) return;
    }
    keep[c] = 1;
  });
  std::vector<CoeffState> survivors;
  for (std::size_t c = 0; c < pool.size(); ++c) {
    if (keep[c]) survivors.push_back(std::move(pool[c]));
  }
  if (survivors.empty()) {
    out.status = OmegaApprox::Status::kNoConvergence;
    out.tier_drift.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      if (!images[i].empty() && !images[i - 1].empty()) {
        out.tier_drift[i] = set_semidist(space, images[i], images[i - 1], metric);
      }
    }
    return out;
  }
  out.points = epsilon_net(space, survivors, opts.eps_net, metric);
  out.profile.resize(n);
  parallel_for(n, [&](std::size_t i) {
    out.profile[i] = {keys[i], images[i].empty()
                                   ? 0.0
                                   : set_semidist(space, images[i], out.points, metric)};
  });
  const std::size_t third = (n + 2) / 3;
  // The net is only eps-dense, so the profile is compared with tol + eps_net.
  out.converged = out.profile.back().semidist <= opts.tol + opts.eps_net &&
                  non_increasing(out.profile, n - third);
  out.status = out.converged ? OmegaApprox::Status::kConverged
                             : OmegaApprox::Status::kNotConverged;
  return out;
}

PullbackSchedule PullbackSchedule::geometric(double t, double delta, double ratio, int n) {
  if (!(delta > 0.0) || !(ratio > 1.0)) throw UsageError("geometric schedule needs delta > 0, ratio > 1");
  PullbackSchedule s;
  s.t = t;
  s.mode = Mode::kGeometric;
  s.delta = delta;
  s.ratio = ratio;
  for (int i = 0; i < n; ++i) s.starts.push_back(t - delta * std::pow(ratio, i));
  s.validate();
  return s;
}

PullbackSchedule PullbackSchedule::linear(double t, double delta, int n) {
  if (!(delta > 0.0)) throw UsageError("linear schedule needs delta > 0");
  PullbackSchedule s;
  s.t = t;
  s.mode = Mode::kLinear;
  s.delta = delta;
  s.ratio = 1.0;
  for (int i = 1; i <= n; ++i) s.starts.push_back(t - delta * i);
  s.validate();
  return s;
}

PullbackSchedule PullbackSchedule::from_starts(double t, std::vector<double> starts) {
  PullbackSchedule s;
  s.t = t;
  s.mode = Mode::kExplicit;
  s.starts = std::move(starts);
  s.validate();
  return s;
}

void PullbackSchedule::validate() const {
  if (starts.size() < 3) throw UsageError("a pullback schedule needs at least 3 start times");
  if (!std::isfinite(t)) throw UsageError("schedule time must be finite");
  if (!(starts.front() <= t)) throw UsageError("schedule starts must not exceed t");
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (!std::isfinite(starts[i])) throw UsageError("schedule starts must be finite");
    if (i > 0 && !(starts[i] < starts[i - 1])) {
      throw UsageError("schedule starts must strictly decrease");
    }
  }
}

std::string to_string(PullbackSchedule::Mode m) {
  switch (m) {
    case PullbackSchedule::Mode::kLinear:
      return "linear";
    case PullbackSchedule::Mode::kGeometric:
      return "geometric";
    case PullbackSchedule::Mode::kExplicit:
      return "explicit";
  }
  return "unknown";
}

std::string to_string(OmegaApprox::Status s) {
  switch (s) {
    case OmegaApprox::Status::kConverged:
      return "converged";
    case OmegaApprox::Status::kNotConverged:
      return "not_converged";
    case OmegaApprox::Status::kNoConvergence:
      return "no_convergence";
  }
  return "unknown";
}

std::vector<std::vector<CoeffState>> tier_images(const TrajectoryFamily& fam,
                                                 const SeedSource& seeds,
                                                 const PullbackSchedule& sched,
                                                 BranchSelection branches) {
  sched.validate();
  std::vector<std::vector<CoeffState>> images;
  images.reserve(sched.starts.size());
  for (double s : sched.starts) {
    const auto a = seeds.at(sched.t, s);
    images.push_back(flatten(pullback_image(fam, a, sched.t, s, branches)));
  }
  return images;
}

OmegaApprox omega_pullback(const TrajectoryFamily& fam, const SeedSource& seeds,
                           const PullbackSchedule& sched, MetricKind metric,
                           const OmegaOptions& opts) {
  const auto images = tier_images(fam, seeds, sched, opts.branches);
  auto out = omega_from_images(fam.space(), images, sched.starts, metric, opts);
  out.system = fam.system_id();
  out.t = sched.t;
  return out;
}

std::vector<double> horizons_of(const PullbackSchedule& sched) {
  std::vector<double> h;
  for (double s : sched.starts) h.push_back(sched.t - s);
  return h;
}

OmegaApprox forward_omega(const TrajectoryFamily& fam, const SeedSource& seeds,
                          std::span<const double> horizons, MetricKind metric,
                          const OmegaOptions& opts) {
  if (!fam.is_autonomous()) {
    throw UsageError("forward omega-limits need an autonomous system; '" + fam.system_id() +
                     "' is not");
  }
  if (horizons.size() < 3) throw UsageError("forward omega needs at least 3 horizons");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (!(horizons[i] >= 0.0) || (i > 0 && !(horizons[i] > horizons[i - 1]))) {
      throw UsageError("horizons must be non-negative and strictly increasing");
    }
  }
  std::vector<std::vector<CoeffState>> images;
  for (double h : horizons) {
    const auto a = seeds.at(h, 0.0);
    images.push_back(flatten(pullback_image(fam, a, h, 0.0, opts.branches)));
  }
  auto out = omega_from_images(fam.space(), images, horizons, metric, opts);
  out.system = fam.system_id();
  out.t = 0.0;
  out.forward = true;
  return out;
}

std::string attraction_label(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "attracts";
    case Verdict::kFails:
      return "fails";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

AttractionReport attraction_diagnostic(const TrajectoryFamily& fam,
                                       std::span<const CoeffState> candidate,
                                       const SeedSource& seeds, const PullbackSchedule& sched,
                                       MetricKind metric, double tol) {
  if (candidate.empty()) throw UsageError("attraction candidate must be nonempty");
  if (!(tol > 0.0)) throw UsageError("attraction tolerance must be positive");
  const auto images = tier_images(fam, seeds, sched, BranchSelection::kAll);
  AttractionReport rep;
  rep.tol = tol;
  rep.profile.resize(images.size());
  parallel_for(images.size(), [&](std::size_t i) {
    rep.profile[i] = {sched.starts[i], set_semidist(fam.space(), images[i], candidate, metric)};
  });
  const std::size_t half = rep.profile.size() / 2;
  double tail_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = half; i < rep.profile.size(); ++i) {
    tail_min = std::min(tail_min, rep.profile[i].semidist);
  }
  if (rep.profile.back().semidist <= tol && non_increasing(rep.profile, half)) {
    rep.verdict = Verdict::kHolds;
  } else if (tail_min >= 2.0 * tol) {
    rep.verdict = Verdict::kFails;
  } else {
    rep.verdict = Verdict::kInconclusive;
  }
  return rep;
}

MinimalityReport minimality_check(const OmegaApprox& omega, std::span<const CoeffState> candidate,
                                  const DualMetricSpace& space, double tol) {
  if (candidate.empty()) throw UsageError("minimality candidate must be nonempty");
  MinimalityReport rep;
  if (omega.points.empty()) return rep;
  rep.inclusion = set_semidist(space, omega.points, candidate, omega.metric);
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (dist_to_set(space, candidate[i], omega.points, omega.metric) > 2.0 * omega.eps_net) {
      rep.excess.push_back(i);
    }
  }
  rep.minimal = rep.inclusion <= tol && rep.excess.empty();
  rep.verdict = rep.minimal ? Verdict::kHolds : Verdict::kFails;
  return rep;
}

MinimalityReport minimality_check(const TrajectoryFamily& fam,
                                  std::span<const CoeffState> candidate, const SeedSource& seeds,
                                  const PullbackSchedule& sched, MetricKind metric,
                                  const OmegaOptions& opts) {
  const auto omega = omega_pullback(fam, seeds, sched, metric, opts);
  return minimality_check(omega, candidate, fam.space(), std::max(opts.tol, opts.eps_net));
}

std::string pac_label(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "PAC-consistent";
    case Verdict::kFails:
      return "PAC-violated";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

PacReport pac_check(const TrajectoryFamily& fam, const PullbackSchedule& sched,
                    std::size_t sample_size, double tol, std::uint64_t seed) {
  if (sample_size < 10) throw UsageError("pac_check needs sample_size >= 10");
  if (!(tol > 0.0)) throw UsageError("pac_check needs tol > 0");
  const auto& space = fam.space();
  const auto source = SeedSource::phase_space(fam, sample_size, seed, true);
  const auto images = tier_images(fam, source, sched, BranchSelection::kAll);

  std::vector<CoeffState> seq;
  for (const auto& img : images) {
    if (img.empty()) continue;
    std::size_t pick = 0;
    double best = -1.0;
    for (std::size_t c = 0; c < img.size(); ++c) {
      const double d = seq.empty() ? space.strong_norm(img[c])
                                   : dist_to_set(space, img[c], seq, MetricKind::kStrong);
      if (d > best) {
        best = d;
        pick = c;
      }
    }
    seq.push_back(img[pick]);
  }

  PacReport rep;
  rep.sequence_length = seq.size();
  std::vector<CoeffState> kept;
  for (const auto& x : seq) {
    if (kept.empty() || dist_to_set(space, x, kept, MetricKind::kStrong) > 2.0 * tol) {
      kept.push_back(x);
    }
  }
  rep.separated_length = kept.size();
  rep.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      rep.min_separation = std::min(rep.min_separation, space.strong_dist(kept[i], kept[j]));
    }
  }
  if (kept.size() < 2) rep.min_separation = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::size_t c = 0;
    for (std::size_t j = i; j < seq.size(); ++j) {
      if (space.strong_dist(seq[i], seq[j]) <= tol) ++c;
    }
    rep.cauchy_length = std::max(rep.cauchy_length, c);
  }
  rep.verdict = rep.separated_length >= 10 ? Verdict::kFails : Verdict::kHolds;
  return rep;
}

std::string to_string(InvarianceKind k) {
  switch (k) {
    case InvarianceKind::kSemi:
      return "semi";
    case InvarianceKind::kQuasi:
      return "quasi";
    case InvarianceKind::kFull:
      return "full";
  }
  return "unknown";
}

InvarianceKind invariance_from_string(const std::string& s) {
  if (s == "semi") return InvarianceKind::kSemi;
  if (s == "quasi") return InvarianceKind::kQuasi;
  if (s == "full") return InvarianceKind::kFull;
  throw UsageError("unknown invariance kind '" + s + "' (expected semi, quasi or full)");
}

std::string invariance_label(InvarianceKind k, Verdict v) {
  if (v == Verdict::kInconclusive) return "inconclusive";
  if (v == Verdict::kFails) return "not-invariant";
  switch (k) {
    case InvarianceKind::kSemi:
      return "semi-invariant";
    case InvarianceKind::kQuasi:
      return "quasi-invariant";
    case InvarianceKind::kFull:
      return "invariant";
  }
  return "invariant";
}

InvarianceReport invariance_check(const TrajectoryFamily& fam, const SetFamily& sets,
                                  InvarianceKind kind, double t_min, double t_max,
                                  const InvarianceOptions& opts) {
  if (!(t_min < t_max)) throw UsageError("invariance window needs t_min < t_max");
  if (opts.grid_points < 2) throw UsageError("invariance check needs at least 2 grid points");
  const auto& space = fam.space();
  std::vector<double> taus(opts.grid_points);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    taus[i] = t_min + (t_max - t_min) * static_cast<double>(i) /
                          static_cast<double>(taus.size() - 1);
  }
  std::vector<std::vector<CoeffState>> b(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    b[i] = sets(taus[i]);
    if (b[i].empty()) throw UsageError("invariance check needs nonempty sets on the window");
  }

  InvarianceReport rep;
  if (kind != InvarianceKind::kQuasi) {
    double worst = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      for (std::size_t j = i + 1; j < taus.size(); ++j) {
        const auto img = pullback_image(fam, b[i], taus[j], taus[i]).states();
        if (img.empty()) continue;
        worst = std::max(worst, set_semidist(space, img, b[j], opts.metric));
      }
    }
    rep.semi_worst = worst;
    rep.semi = worst <= opts.tol ? Verdict::kHolds : Verdict::kFails;
  }
  if (kind != InvarianceKind::kSemi) {
    const double s_deep = t_min - opts.search_depth;
    const auto seeds = SeedSource::phase_space(fam, opts.search_seeds, opts.seed).at(t_max, s_deep);
    std::vector<std::vector<std::vector<CoeffState>>> per_seed(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
      const int count = fam.branch_count(s_deep, seeds[i]);
      for (int br = 0; br < count; ++br) per_seed[i].push_back(fam.evolve(s_deep, seeds[i], taus, br));
    });
    std::vector<std::vector<CoeffState>> entries;
    for (auto& v : per_seed) {
      for (auto& e : v) entries.push_back(std::move(e));
    }
    std::size_t unmatched = 0;
    for (std::size_t j = 0; j < taus.size(); ++j) {
      for (const auto& point : b[j]) {
        bool found = false;
        for (const auto& e : entries) {
          if (space.dist(opts.metric, e[j], point) > opts.tol) continue;
          bool inside = true;
          for (std::size_t i = 0; i < j && inside; ++i) {
            inside = dist_to_set(space, e[i], b[i], opts.metric) <= opts.tol;
          }
          if (inside) {
            found = true;
            break;
          }
        }
        if (!found) ++unmatched;
      }
    }
    rep.unmatched = unmatched;
    rep.quasi = unmatched == 0 ? Verdict::kHolds : Verdict::kInconclusive;
  }

  if (kind == InvarianceKind::kSemi) {
    rep.verdict = *rep.semi;
  } else if (kind == InvarianceKind::kQuasi) {
    rep.verdict = *rep.quasi;
  } else if (*rep.semi == Verdict::kFails) {
    rep.verdict = Verdict::kFails;
  } else {
    rep.verdict = *rep.quasi;
  }
  return rep;
}

TrackingReport tracking_check(const TrajectoryFamily& fam, double t, double T, double eps,
                              const PullbackSchedule& sched, const TrackingOptions& opts) {
  if (!fam.has_complete_trajectories()) {
    throw UnsupportedError("system '" + fam.system_id() +
                           "' registers no complete trajectories; tracking is unsupported");
  }
  if (!(T > 0.0) || !(eps > 0.0) || !(opts.step > 0.0)) {
    throw UsageError("tracking needs T > 0, eps > 0 and step > 0");
  }
  sched.validate();
  const auto& space = fam.space();
  const auto source = SeedSource::phase_space(fam, opts.seeds, opts.seed);

  struct Job {
    double s;
    CoeffState x;
    int branch;
  };
  std::vector<Job> jobs;
  for (double s : sched.starts) {
    if (s > t) continue;
    for (auto& x : source.at(t, s)) {
      const int count = fam.branch_count(s, x);
      for (int b = 0; b < count; ++b) jobs.push_back({s, x, b});
    }
  }
  std::vector<double> best_weak(jobs.size()), best_strong(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const auto& job = jobs[i];
    const double lo = std::max(job.s, t - T);
    std::vector<double> times;
    const auto steps = static_cast<std::size_t>(std::ceil((t - lo) / opts.step - 1e-9));
    for (std::size_t k = 0; k <= steps; ++k) {
      times.push_back(std::min(t, lo + opts.step * static_cast<double>(k)));
    }
    times.erase(std::unique(times.begin(), times.end()), times.end());
    const auto traj = fam.evolve(job.s, job.x, times, job.branch);
    double bw = std::numeric_limits<double>::infinity();
    double bs = std::numeric_limits<double>::infinity();
    for (const auto& v : fam.complete_trajectories(job.s, job.x)) {
      double w = 0.0, st = 0.0;
      for (std::size_t k = 0; k < times.size(); ++k) {
        const auto vk = v.at(times[k]);
        w = std::max(w, space.weak_dist(traj[k], vk).value);
        st = std::max(st, space.strong_dist(traj[k], vk));
      }
      if (w < bw || (w == bw && st < bs)) {
        bw = w;
        bs = st;
      }
    }
    best_weak[i] = bw;
    best_strong[i] = bs;
  });

  TrackingReport rep;
  rep.trajectories = jobs.size();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    rep.worst_weak = std::max(rep.worst_weak, best_weak[i]);
    rep.worst_strong = std::max(rep.worst_strong, best_strong[i]);
    const bool ok = best_weak[i] <= eps && (!opts.strong || best_strong[i] <= eps);
    if (!ok) ++rep.unmatched;
  }
  rep.verdict = rep.unmatched == 0 ? Verdict::kHolds : Verdict::kFails;
  return rep;
}

}  // namespace ges
