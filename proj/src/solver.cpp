#include "rcenter/solver.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "rcenter/lp_core.hpp"

namespace rcenter {

std::vector<PredecessorCursor> SolverState::cursors() const {
  std::vector<PredecessorCursor> out;
  out.reserve(active.size());
  for (const PointTrack& t : active)
    out.push_back({t.point, t.ix1(), t.iy1(), t.x_count() + 1, t.y_count() + 1});
  return out;
}

Solver::Solver(std::span<const PointPrep> preps, SolverConfig config)
    : preps_(preps), config_(config), rng_(config.seed) {
  if (preps_.empty()) throw std::invalid_argument("solver needs at least one point");
}

Rect Solver::initial_rect(std::span<const PointPrep> preps) {
  Rect box{kInf, -kInf, kInf, -kInf};
  for (const PointPrep& p : preps) {
    box.x1 = std::min(box.x1, p.xs[1]);
    box.x2 = std::max(box.x2, p.xs.back());
    box.y1 = std::min(box.y1, p.ys[1]);
    box.y2 = std::max(box.y2, p.ys.back());
  }
  // Padding keeps every grid line strictly inside the box.
  const double pad = std::max(1.0, 0.5 * std::max(box.x2 - box.x1, box.y2 - box.y1));
  return {box.x1 - pad, box.x2 + pad, box.y1 - pad, box.y2 + pad};
}

SolverState Solver::initial_state() const { return state_for(initial_rect(preps_)); }

SolverState Solver::state_for(const Rect& rect) const {
  SolverState s;
  s.rect = rect;
  s.active.reserve(preps_.size());
  for (std::size_t i = 0; i < preps_.size(); ++i) {
    const PointPrep& p = preps_[i];
    PointTrack t;
    t.point = i;
    t.x_begin = predecessor_index(p.xs, rect.x1) + 1;
    t.x_end = static_cast<std::size_t>(std::lower_bound(p.xs.begin() + 1, p.xs.end(), rect.x2) - p.xs.begin());
    t.x_end = std::max(t.x_end, t.x_begin);
    t.y_begin = predecessor_index(p.ys, rect.y1) + 1;
    t.y_end = static_cast<std::size_t>(std::lower_bound(p.ys.begin() + 1, p.ys.end(), rect.y2) - p.ys.begin());
    t.y_end = std::max(t.y_end, t.y_begin);
    s.active.push_back(t);
  }
  recount(s);
  return s;
}

std::size_t Solver::steps_per_round() const {
  const std::size_t m = preps_.front().m();
  std::size_t log_m = 0;
  while ((std::size_t{1} << log_m) < m) ++log_m;
  return 2 + log_m;
}

void Solver::recount(SolverState& state) {
  state.x_total = 0;
  state.y_total = 0;
  for (const PointTrack& t : state.active) {
    state.x_total += t.x_count();
    state.y_total += t.y_count();
  }
}

void Solver::shrink_x(SolverState& state, double bound, bool keep_right) const {
  if (keep_right) {
    if (bound <= state.rect.x1) return;
    state.rect.x1 = std::min(bound, state.rect.x2);
    for (PointTrack& t : state.active) {
      const auto& xs = preps_[t.point].xs;
      while (t.x_begin < t.x_end && xs[t.x_begin] <= state.rect.x1) ++t.x_begin;
    }
  } else {
    if (bound >= state.rect.x2) return;
    state.rect.x2 = std::max(bound, state.rect.x1);
    for (PointTrack& t : state.active) {
      const auto& xs = preps_[t.point].xs;
      while (t.x_end > t.x_begin && xs[t.x_end - 1] >= state.rect.x2) --t.x_end;
    }
  }
  recount(state);
}

void Solver::shrink_y(SolverState& state, double bound, bool keep_above) const {
  if (keep_above) {
    if (bound <= state.rect.y1) return;
    state.rect.y1 = std::min(bound, state.rect.y2);
    for (PointTrack& t : state.active) {
      const auto& ys = preps_[t.point].ys;
      while (t.y_begin < t.y_end && ys[t.y_begin] <= state.rect.y1) ++t.y_begin;
    }
  } else {
    if (bound >= state.rect.y2) return;
    state.rect.y2 = std::max(bound, state.rect.y1);
    for (PointTrack& t : state.active) {
      const auto& ys = preps_[t.point].ys;
      while (t.y_end > t.y_begin && ys[t.y_end - 1] >= state.rect.y2) --t.y_end;
    }
  }
  recount(state);
}

void Solver::remove_points(SolverState& state, const std::vector<std::size_t>& points) const {
  if (points.empty()) return;
  const std::unordered_set<std::size_t> gone(points.begin(), points.end());
  std::erase_if(state.active, [&](const PointTrack& t) { return gone.count(t.point) > 0; });
  recount(state);
}

std::optional<Found> Solver::decide(SolverState& state, const LineSpec& line,
                                    DecisionOutcome& out, const char* kind, double median) {
  const auto cursors = state.cursors();
  out = decide_side(preps_, cursors, state.rect, state.cuts, line, &stats_.decisions,
                    config_.tolerance);
  if (config_.trace) {
    TraceEvent ev;
    ev.round = round_;
    ev.step = step_;
    ev.kind = kind;
    ev.rect = state.rect;
    ev.median = median;
    switch (out.kind) {
      case DecisionOutcome::Kind::FoundCenter:
        ev.decision = "center";
        break;
      case DecisionOutcome::Kind::PositiveSide:
        ev.decision = "positive";
        break;
      case DecisionOutcome::Kind::NegativeSide:
        ev.decision = "negative";
        break;
    }
    stats_.trace.push_back(std::move(ev));
  }
  if (out.kind == DecisionOutcome::Kind::FoundCenter) return Found{out.point, out.value};
  return std::nullopt;
}

std::optional<Found> Solver::inner_shrink_step(SolverState& state) {
  ++step_;
  ++stats_.inner_steps;
  StepRecord rec{round_, state.x_total, state.y_total, 0, 0};
  std::vector<double> scratch;
  DecisionOutcome out;

  if (state.x_total > 0) {
    scratch.clear();
    scratch.reserve(state.x_total);
    for (const PointTrack& t : state.active) {
      const auto& xs = preps_[t.point].xs;
      scratch.insert(scratch.end(), xs.begin() + static_cast<std::ptrdiff_t>(t.x_begin),
                     xs.begin() + static_cast<std::ptrdiff_t>(t.x_end));
    }
    const double xm = median_select_inplace(scratch);
    if (auto f = decide(state, LineSpec::vertical(xm), out, "inner_x", xm)) return f;
    shrink_x(state, xm, out.kind == DecisionOutcome::Kind::PositiveSide);
  }
  if (state.y_total > 0) {
    scratch.clear();
    scratch.reserve(state.y_total);
    for (const PointTrack& t : state.active) {
      const auto& ys = preps_[t.point].ys;
      scratch.insert(scratch.end(), ys.begin() + static_cast<std::ptrdiff_t>(t.y_begin),
                     ys.begin() + static_cast<std::ptrdiff_t>(t.y_end));
    }
    const double ym = median_select_inplace(scratch);
    if (auto f = decide(state, LineSpec::horizontal(ym), out, "inner_y", ym)) return f;
    shrink_y(state, ym, out.kind == DecisionOutcome::Kind::PositiveSide);
  }
  rec.x_after = state.x_total;
  rec.y_after = state.y_total;
  stats_.steps.push_back(rec);
  return std::nullopt;
}

Prunable Solver::find_prunable(const SolverState& state) const {
  Prunable out;
  for (const PointTrack& t : state.active) {
    if (t.x_count() == 0 && t.y_count() == 0) {
      out.members.push_back(t.point);
      out.relevant.push_back(plane_for_cell(preps_[t.point], t.ix1(), t.iy1(), t.point));
    }
  }
  return out;
}

namespace {

// Divider of a pair of relevant planes: diff = first - second.
struct Divider {
  std::size_t first = 0;
  std::size_t second = 0;
  double da = 0.0;
  double db = 0.0;
  double dg = 0.0;
  double slope = 0.0;      // y = slope * x + intercept, non-vertical only
  double intercept = 0.0;
  double position = 0.0;   // x of a vertical divider

  double diff(double x, double y) const { return da * x + db * y + dg; }
};

// The member whose plane is lower at the probe (the one to prune), or none.
std::optional<std::size_t> loser_at(const Divider& d, double x, double y) {
  const double v = d.diff(x, y);
  if (v > 0.0) return d.second;
  if (v < 0.0) return d.first;
  return std::nullopt;
}

struct Crossing {
  std::size_t neg = 0;  // index into the divider list
  std::size_t pos = 0;
  double x = 0.0;
  double y = 0.0;  // sheared ordinate
};

}  // namespace

PruneResult Solver::prune_round(SolverState& state, const Prunable& prunable) {
  PruneResult result;
  std::vector<std::size_t> order(prunable.members.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::shuffle(order.begin(), order.end(), rng_);

  const Rect& r = state.rect;
  const double extent = 1.0 + std::max({std::abs(r.x1), std::abs(r.x2), std::abs(r.y1), std::abs(r.y2)});
  std::vector<std::size_t> pruned;
  std::vector<Divider> slanted;
  std::vector<Divider> vertical;

  for (std::size_t k = 0; k + 1 < order.size(); k += 2) {
    const Plane& h1 = prunable.relevant[order[k]];
    const Plane& h2 = prunable.relevant[order[k + 1]];
    Divider d;
    d.first = prunable.members[order[k]];
    d.second = prunable.members[order[k + 1]];
    d.da = h1.alpha - h2.alpha;
    d.db = h1.beta - h2.beta;
    d.dg = h1.gamma - h2.gamma;
    const double c[4] = {d.diff(r.x1, r.y1), d.diff(r.x2, r.y1), d.diff(r.x1, r.y2), d.diff(r.x2, r.y2)};
    const double lo = std::min({c[0], c[1], c[2], c[3]});
    const double hi = std::max({c[0], c[1], c[2], c[3]});
    if (lo >= 0.0) {
      pruned.push_back(d.second);
      continue;
    }
    if (hi <= 0.0) {
      pruned.push_back(d.first);
      continue;
    }
    const double gscale = std::max({1.0, std::abs(h1.alpha), std::abs(h1.beta), std::abs(h2.alpha), std::abs(h2.beta)});
    if (std::abs(d.da) <= 1e-14 * gscale && std::abs(d.db) <= 1e-14 * gscale) {
      // Numerically parallel yet not separated by the corner test: defer.
      result.general_position = false;
      continue;
    }
    if (std::abs(d.db) <= 1e-12 * std::abs(d.da)) {
      d.position = -d.dg / d.da;
      vertical.push_back(d);
    } else {
      d.slope = -d.da / d.db;
      d.intercept = -d.dg / d.db;
      slanted.push_back(d);
    }
  }

  auto finish = [&](std::optional<Found> f) {
    result.found = f;
    result.pruned = pruned.size();
    remove_points(state, pruned);
    if (config_.trace && !stats_.trace.empty()) stats_.trace.back().pruned_indices = pruned;
    return result;
  };

  DecisionOutcome out;
  // Vertical dividers: one decision at their median position.
  if (!vertical.empty()) {
    std::vector<double> xs;
    for (const Divider& d : vertical) xs.push_back(d.position);
    const double xv = median_select_inplace(xs);
    if (auto f = decide(state, LineSpec::vertical(xv), out, "prune_vertical", xv)) return finish(f);
    const bool right = out.kind == DecisionOutcome::Kind::PositiveSide;
    shrink_x(state, xv, right);
    const double probe_x = right ? xv + extent : xv - extent;
    for (const Divider& d : vertical) {
      const bool far = right ? d.position <= xv : d.position >= xv;
      if (!far) continue;
      if (auto loser = loser_at(d, probe_x, 0.0)) pruned.push_back(*loser);
    }
  }

  if (!slanted.empty()) {
    std::vector<double> slopes;
    for (const Divider& d : slanted) slopes.push_back(d.slope);
    const double s = median_select_inplace(slopes);
    // In sheared coordinates y' = y - s*x every divider has slope (slope - s).
    std::vector<std::size_t> neg;
    std::vector<std::size_t> pos;
    std::vector<std::size_t> flat;
    for (std::size_t k = 0; k < slanted.size(); ++k) {
      const double sp = slanted[k].slope - s;
      if (sp < 0.0)
        neg.push_back(k);
      else if (sp > 0.0)
        pos.push_back(k);
      else
        flat.push_back(k);
    }
    if (flat.size() > 1) result.general_position = false;
    std::vector<Crossing> crossings;
    const std::size_t npairs = std::min(neg.size(), pos.size());
    for (std::size_t k = 0; k < npairs; ++k) {
      const Divider& a = slanted[neg[k]];
      const Divider& b = slanted[pos[k]];
      const double sa = a.slope - s;
      const double sb = b.slope - s;
      Crossing c;
      c.neg = neg[k];
      c.pos = pos[k];
      c.x = (b.intercept - a.intercept) / (sa - sb);
      c.y = a.intercept + sa * c.x;
      crossings.push_back(c);
    }
    std::vector<double> ys;
    for (const Crossing& c : crossings) ys.push_back(c.y);
    for (std::size_t k : flat) ys.push_back(slanted[k].intercept);
    const double ym = median_select_inplace(ys);

    if (auto f = decide(state, LineSpec(-s, 1.0, ym), out, "prune_slanted", ym)) return finish(f);
    const double qy = out.kind == DecisionOutcome::Kind::PositiveSide ? 1.0 : -1.0;
    state.cuts.push_back(qy < 0.0 ? HalfPlane::make(-s, 1.0, ym) : HalfPlane::make(s, -1.0, -ym));
    auto y_far = [&](double y) { return qy < 0.0 ? y >= ym : y <= ym; };

    const double mid_x = 0.5 * (r.x1 + r.x2);
    for (std::size_t k : flat) {
      const Divider& d = slanted[k];
      if (!y_far(d.intercept)) continue;
      const double yp = ym + qy * extent;
      if (auto loser = loser_at(d, mid_x, yp + s * mid_x)) pruned.push_back(*loser);
    }

    std::vector<Crossing> far;
    for (const Crossing& c : crossings)
      if (y_far(c.y)) far.push_back(c);
    if (!far.empty()) {
      std::vector<double> xs;
      for (const Crossing& c : far) xs.push_back(c.x);
      const double xm = median_select_inplace(xs);
      if (auto f = decide(state, LineSpec::vertical(xm), out, "prune_x", xm)) return finish(f);
      const double qx = out.kind == DecisionOutcome::Kind::PositiveSide ? 1.0 : -1.0;
      shrink_x(state, xm, qx > 0.0);
      // Probe deep inside the quadrant holding the center.
      const double px = xm + qx * extent;
      const double py = ym + qy * extent + s * px;
      const bool missing_is_neg = -qx * qy < 0.0;
      for (const Crossing& c : far) {
        const bool x_far = qx < 0.0 ? c.x >= xm : c.x <= xm;
        if (!x_far) continue;
        const Divider& d = slanted[missing_is_neg ? c.neg : c.pos];
        if (auto loser = loser_at(d, px, py)) pruned.push_back(*loser);
      }
    }
  }
  return finish(std::nullopt);
}

Found Solver::finish_small(SolverState& state) {
  ++step_;
  for (;;) {
    bool small = true;
    for (const PointTrack& t : state.active)
      if (t.x_count() > 2 || t.y_count() > 2) small = false;
    if (small) break;
    if (auto f = inner_shrink_step(state)) return *f;
  }
  stats_.finish_points = state.active.size();
  std::vector<Plane> planes;
  for (const PointTrack& t : state.active) {
    for (std::size_t c = t.ix1(); c < t.x_end; ++c)
      for (std::size_t r = t.iy1(); r < t.y_end; ++r)
        planes.push_back(plane_for_cell(preps_[t.point], c, r, t.point));
  }
  const RegionMin best = min_envelope_over_region(planes, state.rect, state.cuts, rng_);
  if (config_.trace) {
    TraceEvent ev;
    ev.round = round_;
    ev.step = step_;
    ev.kind = "finish";
    ev.rect = state.rect;
    ev.decision = "center";
    stats_.trace.push_back(std::move(ev));
  }
  return {best.point, best.value};
}

Found Solver::run() {
  SolverState state = initial_state();
  const std::size_t t = steps_per_round();
  std::optional<Found> found;
  while (!found && state.active.size() > config_.small_threshold) {
    ++round_;
    step_ = 0;
    ++stats_.rounds;
    RoundRecord rec;
    rec.round = round_;
    rec.active = state.active.size();
    for (std::size_t j = 0; j < t && !found; ++j) {
      found = inner_shrink_step(state);
      ++rec.steps;
    }
    if (found) {
      rec.found_center = true;
      stats_.round_records.push_back(rec);
      break;
    }
    rec.x_total = state.x_total;
    rec.y_total = state.y_total;
    const Prunable prunable = find_prunable(state);
    rec.pstar = prunable.members.size();
    const PruneResult pr = prune_round(state, prunable);
    rec.pruned = pr.pruned;
    rec.general_position = pr.general_position;
    rec.found_center = pr.found.has_value();
    stats_.pruned += pr.pruned;
    stats_.round_records.push_back(rec);
    found = pr.found;
    if (pr.pruned == 0) break;
  }
  if (!found) found = finish_small(state);
  const double value = ed_max(preps_, found->point).value;
  return {found->point, value};
}

Solution solve(const Instance& instance, const SolverConfig& config) {
  Instance work = normalize_instance(instance);
  FrameDescriptor frame;
  if (work.metric == Metric::Linf) {
    auto converted = to_l1_frame(work);
    work = std::move(converted.first);
    frame = converted.second;
  }
  work = apply_weight_reduction(std::move(work));
  const std::vector<PointPrep> preps = build_preps(work);
  Solver solver(preps, config);
  const Found f = solver.run();
  Solution out;
  out.center = frame.to_original(f.point);
  out.objective = f.value * frame.objective_scale;
  out.stats = solver.stats();
  return out;
}

}  // namespace rcenter
