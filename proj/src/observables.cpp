#include "rwrers/observables.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "rwrers/errors.hpp"

namespace rwrers {

namespace {

LocalStar view_star(const RootedView& view) {
  const Space& space = view.space();
  const bool end_tree = space.kind() == SpaceKind::TreeWithEnd;
  const double up = static_cast<double>(space.degree() - 1);
  LocalStar star;
  for (const auto& arm : view.center_arms()) {
    LocalArm a;
    a.open = arm.mark != EdgeMark::Closed;
    switch (space.kind()) {
      case SpaceKind::Line:
      case SpaceKind::SubdividedLine: a.role = arm.toward_root ? ArmRole::Left : ArmRole::Right; break;
      case SpaceKind::TreeWithEnd: a.role = arm.toward_root ? ArmRole::Parent : ArmRole::Child; break;
      case SpaceKind::RegularTree: a.role = ArmRole::Neighbor; break;
    }
    if (end_tree) a.m_ratio = arm.toward_root ? up : 1.0 / up;
    star.arms.push_back(a);
  }
  if (view.center_node().param) star.param = *view.center_node().param;
  return star;
}

struct Fingerprint {
  double stay = 0.0;
  double toward = 0.0;         // left / parent
  std::vector<double> others;  // right, children or all neighbours, sorted descending
};

Fingerprint fingerprint(KernelFamily family, const RootedView& view) {
  const LocalStar star = view_star(view);
  const auto probs = local_transition(family, view.space().degree(), star);
  Fingerprint f;
  f.stay = probs[0];
  for (std::size_t i = 0; i < star.arms.size(); ++i) {
    const ArmRole role = star.arms[i].role;
    if (role == ArmRole::Left || role == ArmRole::Parent) {
      f.toward = probs[i + 1];
    } else {
      f.others.push_back(probs[i + 1]);
    }
  }
  std::sort(f.others.begin(), f.others.end(), std::greater<>());
  return f;
}

int view_open_degree(const RootedView& view) {
  int d = 0;
  for (const auto& arm : view.center_arms()) d += arm.mark == EdgeMark::Open ? 1 : 0;
  return d;
}

// 0 stay, 1 toward the root, 2 away from it.
int first_move(const RootedView& view) {
  const std::int32_t next = view.visited_at(1);
  if (next == view.center()) return 0;
  if (next == view.center_node().parent) return 1;
  return 2;
}

Observable view_observable(std::string name, const CatalogContext& ctx, int horizon, double lower, double upper,
                           std::function<double(const RootedView&)> fn) {
  Observable o;
  o.name = std::move(name);
  o.radius = ctx.r;
  o.horizon = horizon;
  o.lower = lower;
  o.upper = upper;
  o.on_view = std::move(fn);
  return o;
}

}  // namespace

double evaluate(const Observable& obs, const Space& space, const MarkSource& marks,
                std::span<const VertexId> trajectory, std::size_t n) {
  if (n + static_cast<std::size_t>(obs.horizon) >= trajectory.size())
    throw InputError("observable '" + obs.name + "' needs trajectory positions up to " +
                     std::to_string(n + static_cast<std::size_t>(obs.horizon)));
  if (obs.on_cluster) return obs.on_cluster(space, marks, trajectory[n]);
  const RootedView view = canonical_rooted_view(space, trajectory[n], obs.radius, marks,
                                                trajectory.subspan(n, static_cast<std::size_t>(obs.horizon) + 1));
  return obs.on_view(view);
}

Observable event_An(int R) {
  Observable o;
  o.name = "event_An[R=" + std::to_string(R) + "]";
  o.radius = 0;
  o.cluster_radius = R;
  o.on_cluster = [R](const Space& space, const MarkSource& marks, const VertexId& v) {
    if (space.kind() != SpaceKind::TreeWithEnd) throw DomainError("event_An is defined on tree-with-end spaces only");
    const VertexId up = space.parent(v);
    if (neighbor_edge_open(space, marks, v, 0, up)) return 0.0;
    return cluster_probe(marks, space, v, R, true, &up).boundary_hit ? 1.0 : 0.0;
  };
  return o;
}

Observable truncated_cluster_size(const Space& space, int R) {
  Observable o;
  o.name = "truncated_cluster_size";
  o.radius = 0;
  o.cluster_radius = R;
  o.lower = 1.0;
  o.upper = static_cast<double>(space.ball_size(R));
  o.on_cluster = [R](const Space& sp, const MarkSource& marks, const VertexId& v) {
    return static_cast<double>(cluster_probe(marks, sp, v, R).size);
  };
  return o;
}

std::vector<Observable> builtin_catalog(const CatalogContext& ctx) {
  if (ctx.r < 1) throw ConfigError("observables need view radius r >= 1");
  if (ctx.k < 1) throw ConfigError("observables need segment length k >= 1");
  const Space& space = ctx.space;
  const int D = space.degree();
  const KernelFamily family = ctx.family;
  std::vector<Observable> out;

  if (ctx.percolation) {
    out.push_back(view_observable("walker_degree", ctx, 0, 0, D,
                                  [](const RootedView& v) { return static_cast<double>(view_open_degree(v)); }));
    for (int j = 0; j <= D; ++j)
      out.push_back(view_observable("walker_degree_is_" + std::to_string(j), ctx, 0, 0, 1,
                                    [j](const RootedView& v) { return view_open_degree(v) == j ? 1.0 : 0.0; }));
  }
  if (ctx.scenery)
    out.push_back(view_observable("scenery_at_walker", ctx, 0, 0, ctx.palette - 1.0,
                                  [](const RootedView& v) { return static_cast<double>(*v.center_node().scenery); }));
  if (ctx.site_params)
    out.push_back(view_observable("site_param_at_walker", ctx, 0, ctx.a, ctx.b,
                                  [](const RootedView& v) { return *v.center_node().param; }));
  if (space.orbit_count() > 1)
    out.push_back(view_observable("walker_orbit", ctx, 0, 1, space.orbit_count(),
                                  [](const RootedView& v) { return static_cast<double>(v.center_node().orbit); }));

  out.push_back(view_observable("kernel_fingerprint:stay", ctx, 0, 0, 1,
                                [family](const RootedView& v) { return fingerprint(family, v).stay; }));
  switch (space.kind()) {
    case SpaceKind::Line:
    case SpaceKind::SubdividedLine:
      out.push_back(view_observable("kernel_fingerprint:left", ctx, 0, 0, 1,
                                    [family](const RootedView& v) { return fingerprint(family, v).toward; }));
      out.push_back(view_observable("kernel_fingerprint:right", ctx, 0, 0, 1,
                                    [family](const RootedView& v) { return fingerprint(family, v).others.at(0); }));
      break;
    case SpaceKind::TreeWithEnd:
      out.push_back(view_observable("kernel_fingerprint:parent", ctx, 0, 0, 1,
                                    [family](const RootedView& v) { return fingerprint(family, v).toward; }));
      for (int j = 0; j < D - 1; ++j)
        out.push_back(view_observable("kernel_fingerprint:child" + std::to_string(j + 1), ctx, 0, 0, 1,
                                      [family, j](const RootedView& v) {
                                        return fingerprint(family, v).others.at(static_cast<std::size_t>(j));
                                      }));
      break;
    case SpaceKind::RegularTree:
      for (int j = 0; j < D; ++j)
        out.push_back(view_observable("kernel_fingerprint:rank" + std::to_string(j + 1), ctx, 0, 0, 1,
                                      [family, j](const RootedView& v) {
                                        return fingerprint(family, v).others.at(static_cast<std::size_t>(j));
                                      }));
      break;
  }

  if (ctx.percolation) {
    out.push_back(truncated_cluster_size(space, ctx.R));
    if (space.kind() == SpaceKind::TreeWithEnd) {
      out.push_back(event_An(ctx.R));
      if (ctx.R_alt > 0 && ctx.R_alt != ctx.R) out.push_back(event_An(ctx.R_alt));
    }
  }

  auto step = [&](std::string suffix, std::function<bool(int)> test) {
    out.push_back(view_observable("first_step:" + std::move(suffix), ctx, ctx.k, 0, 1,
                                  [test = std::move(test)](const RootedView& v) {
                                    return test(first_move(v)) ? 1.0 : 0.0;
                                  }));
  };
  step("stay", [](int m) { return m == 0; });
  switch (space.kind()) {
    case SpaceKind::Line:
    case SpaceKind::SubdividedLine:
      step("left", [](int m) { return m == 1; });
      step("right", [](int m) { return m == 2; });
      break;
    case SpaceKind::TreeWithEnd:
      step("parent", [](int m) { return m == 1; });
      step("child", [](int m) { return m == 2; });
      break;
    case SpaceKind::RegularTree: step("move", [](int m) { return m != 0; }); break;
  }
  return out;
}

std::vector<Observable> select_observables(const CatalogContext& ctx, std::span<const std::string> names) {
  const std::vector<Observable> catalog = builtin_catalog(ctx);
  if (names.empty()) return catalog;
  std::vector<bool> chosen(catalog.size(), false);
  for (const std::string& want : names) {
    if (want == "all") {
      std::fill(chosen.begin(), chosen.end(), true);
      continue;
    }
    bool any = false;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      const std::string& name = catalog[i].name;
      const bool hit = name == want || (name.size() > want.size() && name.starts_with(want) &&
                                        (name[want.size()] == ':' || name[want.size()] == '['));
      if (hit) chosen[i] = any = true;
    }
    if (!any)
      throw ConfigError("observable '" + want + "' is not available for space " + ctx.space.name() + " and kernel " +
                        to_string(ctx.family));
  }
  std::vector<Observable> out;
  for (std::size_t i = 0; i < catalog.size(); ++i)
    if (chosen[i]) out.push_back(catalog[i]);
  return out;
}

ObservablePanel::ObservablePanel(const Space& space, std::vector<Observable> observables)
    : space_(space), observables_(std::move(observables)) {
  for (const Observable& o : observables_) {
    max_horizon_ = std::max(max_horizon_, o.horizon);
    if (o.on_cluster) {
      shape_of_.push_back(-1);
      continue;
    }
    const std::pair<int, int> shape{o.radius, o.horizon};
    auto it = std::find(view_shapes_.begin(), view_shapes_.end(), shape);
    if (it == view_shapes_.end()) it = view_shapes_.insert(view_shapes_.end(), shape);
    shape_of_.push_back(static_cast<int>(it - view_shapes_.begin()));
  }
}

void ObservablePanel::evaluate_all(const MarkSource& marks, std::span<const VertexId> trajectory, int N,
                                   std::span<double> values) const {
  const auto width = static_cast<std::size_t>(N) + 1;
  if (values.size() < observables_.size() * width) throw InputError("observable value buffer too small");
  if (trajectory.size() < width + static_cast<std::size_t>(max_horizon_))
    throw InputError("trajectory shorter than N + k + 1 positions");
  std::vector<std::optional<RootedView>> views(view_shapes_.size());
  for (std::size_t n = 0; n < width; ++n) {
    for (std::size_t s = 0; s < view_shapes_.size(); ++s) {
      const auto [radius, horizon] = view_shapes_[s];
      views[s].emplace(canonical_rooted_view(space_, trajectory[n], radius, marks,
                                             trajectory.subspan(n, static_cast<std::size_t>(horizon) + 1)));
    }
    for (std::size_t i = 0; i < observables_.size(); ++i) {
      const Observable& o = observables_[i];
      values[i * width + n] =
          shape_of_[i] < 0 ? o.on_cluster(space_, marks, trajectory[n]) : o.on_view(*views[static_cast<std::size_t>(shape_of_[i])]);
    }
  }
}

}  // namespace rwrers
