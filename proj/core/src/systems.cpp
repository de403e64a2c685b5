#include "meq/systems.hpp"

#include <algorithm>
#include <cstdlib>

#include "meq/errors.hpp"
#include "meq/parallel.hpp"

namespace meq {

namespace {

void require_dim1(const GroupElement& g) {
  if (g.dim != 1) throw InvalidParameter("this system is a Z-action; got a Z^2 element");
}

Point shift_act(const GroupElement& g, const Point& p) {
  require_dim1(g);
  return Point(p.as<SymbolicPoint>().shifted(g[0]));
}

MetricValue cantor_on_points(const Point& p, const Point& q, std::int64_t horizon) {
  return cantor_metric(p.as<SymbolicPoint>(), q.as<SymbolicPoint>(), horizon);
}

}  // namespace

// ------------------------------------------------------------ subshifts

SystemHandle subshift_system(const SubstitutionRule& rule, SubshiftParams params) {
  rule.validate();
  SymbolicPoint fixed = substitution_fixed_point(rule, params.seed, params.left_seed);
  SystemHandle sys;
  sys.label = params.label.empty() ? rule.name : params.label;
  sys.act = shift_act;
  sys.metric = cantor_on_points;
  sys.metric_kind = MetricKind::cantor;
  sys.shift_action = true;
  sys.sampler = [fixed, params](std::uint64_t seed) -> Point {
    Rng rng(seed);
    if (!params.extra_points.empty() && rng.below(8) == 0)
      return params.extra_points[rng.below(params.extra_points.size())];
    const std::int64_t lo = params.left_seed ? -params.sample_radius : 0;
    const std::int64_t draw = rng.between(lo, params.sample_radius);
    const std::int64_t offset = params.sample_stride > 0 ? draw * params.sample_stride : draw;
    return fixed.shifted(offset);
  };
  return sys;
}

SymbolicPoint cantor_two_sided_point() {
  return substitution_fixed_point(SubstitutionRule::cantor(), 0, Symbol{1});
}

SymbolicPoint thue_morse_two_sided_point(Symbol left, Symbol right) {
  return substitution_fixed_point(SubstitutionRule::thue_morse(), right, left);
}

SymbolicPoint period_doubling_two_sided_point() {
  return substitution_fixed_point(SubstitutionRule::period_doubling(), 1, Symbol{0});
}

SystemHandle cantor_substitution_system() {
  SubshiftParams params;
  params.seed = 0;
  params.left_seed = 1;
  params.label = "cantor-substitution";
  // Shifts by multiples of 3^12 keep every window [s, s + 3^k), k <= 12,
  // aligned with the substitution blocks.
  params.sample_stride = 531441;
  params.sample_radius = 64;
  params.extra_points.push_back(SymbolicPoint::constant(2, 1));
  return subshift_system(SubstitutionRule::cantor(), std::move(params));
}

SystemHandle thue_morse_system() {
  SubshiftParams params;
  params.seed = 0;
  params.left_seed = 1;
  params.label = "thue-morse";
  SystemHandle sys = subshift_system(SubstitutionRule::thue_morse(), params);
  // Complements of sampled points lie in the subshift as well.
  auto base = sys.sampler;
  sys.sampler = [base](std::uint64_t seed) -> Point {
    Point p = base(seed);
    if (Rng(Rng::derive(seed, 1)).below(2) == 1) return Point(p.as<SymbolicPoint>().complemented());
    return p;
  };
  return sys;
}

SystemHandle period_doubling_system() {
  SubshiftParams params;
  params.seed = 1;
  params.left_seed = 0;
  params.label = "period-doubling";
  return subshift_system(SubstitutionRule::period_doubling(), std::move(params));
}

// ------------------------------------------------------------- Sturmian

SymbolicPoint sturmian_point(const RotationNumber& alpha, CirclePoint theta, ArcConvention convention,
                             bool guard) {
  const std::uint64_t a = alpha.phase.bits();
  if (a == 0) throw InvalidParameter("Sturmian coding needs alpha != 0");
  const std::uint64_t t = theta.bits();
  auto meta = std::make_shared<SturmianMeta>();
  meta->alpha = alpha;
  meta->theta = theta;
  meta->convention = convention;
  std::string provenance = "sturmian(alpha=" + alpha.label + ",theta=" + std::to_string(theta.value()) +
                           (convention == ArcConvention::right_closed ? ",right-closed" : "") + ")";
  return SymbolicPoint(
      2,
      [a, t, convention, guard](std::int64_t n) -> Symbol {
        const std::uint64_t phase = t + a * static_cast<std::uint64_t>(n);
        if (guard) {
          const auto eps = static_cast<std::uint64_t>(std::llabs(n)) + 2;
          const std::uint64_t to_zero = std::min(phase, 0 - phase);
          const std::uint64_t to_alpha = std::min(phase - a, a - phase);
          if (to_zero <= eps || to_alpha <= eps)
            throw BoundaryAmbiguity(n, "Sturmian phase within precision of an arc endpoint");
        }
        if (convention == ArcConvention::left_closed) return phase < a ? 1 : 0;
        return (phase != 0 && phase <= a) ? 1 : 0;
      },
      -SymbolicPoint::kUnbounded, SymbolicPoint::kUnbounded, std::move(provenance), std::move(meta));
}

SystemHandle sturmian_system(const RotationNumber& alpha) {
  SystemHandle sys;
  sys.label = "sturmian";
  sys.act = shift_act;
  sys.metric = cantor_on_points;
  sys.metric_kind = MetricKind::cantor;
  sys.shift_action = true;
  sys.sampler = [alpha](std::uint64_t seed) -> Point {
    Rng rng(seed);
    return sturmian_point(alpha, CirclePoint::from_bits(rng.next()));
  };
  return sys;
}

// ------------------------------------------------------ circle and odometer

OdometerPoint random_odometer_point(std::uint64_t seed, int depth) {
  Rng rng(seed);
  std::vector<bool> digits(static_cast<std::size_t>(depth));
  for (auto&& d : digits) d = rng.below(2) == 1;
  return OdometerPoint::from_digits([&](int i) { return digits[static_cast<std::size_t>(i)]; }, depth);
}

SystemHandle odometer_system(int depth) {
  SystemHandle sys;
  sys.label = "odometer";
  sys.act = [](const GroupElement& g, const Point& p) -> Point {
    require_dim1(g);
    return Point(p.as<OdometerPoint>().plus(g[0]));
  };
  sys.metric = [](const Point& p, const Point& q, std::int64_t horizon) {
    return point_metric(p, q, horizon);
  };
  sys.sampler = [depth](std::uint64_t seed) -> Point { return random_odometer_point(seed, depth); };
  sys.metric_kind = MetricKind::odometer;
  sys.horizon_cap = depth;
  sys.horizon_tracks_window = false;
  return sys;
}

SystemHandle rotation_system(const RotationNumber& alpha) {
  SystemHandle sys;
  sys.label = "rotation";
  const CirclePoint a = alpha.phase;
  sys.act = [a](const GroupElement& g, const Point& p) -> Point {
    require_dim1(g);
    return Point(p.as<CirclePoint>() + a.times(g[0]));
  };
  sys.metric = [](const Point& p, const Point& q, std::int64_t) {
    return circle_metric(p.as<CirclePoint>(), q.as<CirclePoint>());
  };
  sys.sampler = [](std::uint64_t seed) -> Point {
    Rng rng(seed);
    return Point(CirclePoint::from_bits(rng.next()));
  };
  sys.metric_kind = MetricKind::circle;
  sys.horizon_cap = 1;
  sys.diameter = 0.5;
  return sys;
}

SystemHandle skew_product_system(std::vector<CirclePoint> base_points) {
  if (base_points.empty()) throw InvalidParameter("skew product needs at least one base point");
  SystemHandle sys;
  sys.label = "skew-product";
  sys.act = [](const GroupElement& g, const Point& p) -> Point {
    require_dim1(g);
    const auto& pp = p.as<ProductPoint>();
    const CirclePoint x = pp.left().as<CirclePoint>();
    const CirclePoint theta = pp.right().as<CirclePoint>();
    return make_product(x, theta + x.times(g[0]));
  };
  sys.metric = [](const Point& p, const Point& q, std::int64_t horizon) {
    return point_metric(p, q, horizon, ProductMode::max);
  };
  sys.sampler = [base = std::move(base_points)](std::uint64_t seed) -> Point {
    Rng rng(seed);
    const CirclePoint x = base[rng.below(base.size())];
    return make_product(x, CirclePoint::from_bits(rng.next()));
  };
  sys.metric_kind = MetricKind::product;
  sys.horizon_cap = 1;
  sys.diameter = 0.5;
  return sys;
}

SystemHandle product_system(const SystemHandle& a, const SystemHandle& b, ProductMode mode) {
  if (a.group_dim != b.group_dim) throw InvalidParameter("product of systems over different groups");
  SystemHandle sys;
  sys.label = a.label + "x" + b.label;
  sys.group_dim = a.group_dim;
  sys.act = [a, b](const GroupElement& g, const Point& p) -> Point {
    const auto& pp = p.as<ProductPoint>();
    return make_product(a.act(g, pp.left()), b.act(g, pp.right()));
  };
  sys.metric = [a, b, mode](const Point& p, const Point& q, std::int64_t horizon) {
    const auto& pp = p.as<ProductPoint>();
    const auto& qq = q.as<ProductPoint>();
    const MetricValue l = a.metric(pp.left(), qq.left(), horizon);
    const MetricValue r = b.metric(pp.right(), qq.right(), horizon);
    return MetricValue{mode == ProductMode::max ? std::max(l.units, r.units) : l.units + r.units,
                       l.flagged || r.flagged};
  };
  sys.sampler = [a, b](std::uint64_t seed) -> Point {
    return make_product(a.sampler(Rng::derive(seed, 0)), b.sampler(Rng::derive(seed, 1)));
  };
  sys.metric_kind = MetricKind::product;
  sys.horizon_cap = std::max(a.horizon_cap, b.horizon_cap);
  sys.horizon_tracks_window = a.horizon_tracks_window || b.horizon_tracks_window;
  sys.diameter = mode == ProductMode::max ? std::max(a.diameter, b.diameter) : a.diameter + b.diameter;
  return sys;
}

SystemHandle torus_rotation_system(const RotationNumber& a, const RotationNumber& b) {
  SystemHandle sys;
  sys.label = "torus-rotation";
  sys.group_dim = 2;
  const CirclePoint pa = a.phase, pb = b.phase;
  sys.act = [pa, pb](const GroupElement& g, const Point& p) -> Point {
    if (g.dim != 2) throw InvalidParameter("torus rotation is a Z^2-action");
    const auto& pp = p.as<ProductPoint>();
    return make_product(pp.left().as<CirclePoint>() + pa.times(g[0]),
                        pp.right().as<CirclePoint>() + pb.times(g[1]));
  };
  sys.metric = [](const Point& p, const Point& q, std::int64_t horizon) {
    return point_metric(p, q, horizon, ProductMode::max);
  };
  sys.sampler = [](std::uint64_t seed) -> Point {
    Rng rng(seed);
    return make_product(CirclePoint::from_bits(rng.next()), CirclePoint::from_bits(rng.next()));
  };
  sys.metric_kind = MetricKind::product;
  sys.horizon_cap = 1;
  sys.diameter = 0.5;
  return sys;
}

}  // namespace meq
