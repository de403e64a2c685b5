#include "meq/catalog.hpp"

#include <sstream>

#include "meq/errors.hpp"

namespace meq {

namespace {

bool symbolic_system(const std::string& s) {
  return s == "cantor-substitution" || s == "thue-morse" || s == "sturmian" || s == "toeplitz-ex5" ||
         s == "period-doubling";
}

int config_depth(const RunConfig& c) {
  const std::int64_t d = c.get_int("depth");
  if (d < 1 || d > 64) throw InvalidParameter("'depth' must lie in [1, 64]");
  return static_cast<int>(d);
}

ArcConvention parse_convention(const std::string& s) {
  if (s == "left") return ArcConvention::left_closed;
  if (s == "right") return ArcConvention::right_closed;
  throw InvalidParameter("'convention' must be left or right, got '" + s + "'");
}

}  // namespace

RotationNumber parse_rotation(const std::string& label) {
  if (label == "golden") return RotationNumber::golden();
  if (label == "silver") return RotationNumber::silver();
  if (label.rfind("cf:", 0) == 0) {
    std::vector<std::int64_t> q;
    std::stringstream in(label.substr(3));
    std::string item;
    while (std::getline(in, item, ',')) q.push_back(parse_int(item, "continued fraction term"));
    return RotationNumber::from_continued_fraction(q, label);
  }
  const auto slash = label.find('/');
  if (slash != std::string::npos)
    return RotationNumber::rational(parse_int(label.substr(0, slash), "alpha numerator"),
                                    parse_int(label.substr(slash + 1), "alpha denominator"));
  throw InvalidParameter("unknown rotation number '" + label + "' (golden, silver, p/q, cf:a1,a2,...)");
}

std::vector<Symbol> parse_fills(const std::string& digits) {
  std::vector<Symbol> fills;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw InvalidParameter("'fills' must be a digit string, got '" + digits + "'");
    fills.push_back(static_cast<Symbol>(ch - '0'));
  }
  if (fills.empty()) throw InvalidParameter("'fills' must not be empty");
  return fills;
}

const std::vector<std::string>& system_labels() {
  static const std::vector<std::string> labels{"cantor-substitution", "thue-morse", "sturmian",     "toeplitz-ex5",
                                               "odometer",            "rotation",   "skew-product", "period-doubling"};
  return labels;
}

SystemHandle make_system(const RunConfig& c) {
  const std::string& s = c.get("system");
  if (s == "cantor-substitution") return cantor_substitution_system();
  if (s == "thue-morse") return thue_morse_system();
  if (s == "period-doubling") return period_doubling_system();
  if (s == "sturmian") return sturmian_system(parse_rotation(c.get("alpha")));
  if (s == "toeplitz-ex5") return toeplitz_system(parse_fills(c.get("fills")));
  if (s == "odometer") return odometer_system(config_depth(c));
  if (s == "rotation") return rotation_system(parse_rotation(c.get("alpha")));
  if (s == "skew-product")
    return skew_product_system({parse_rotation(c.get("base1")).phase, parse_rotation(c.get("base2")).phase});
  throw InvalidParameter("unknown system '" + s + "'");
}

std::pair<Point, Point> configured_points(const RunConfig& c) {
  const std::string& s = c.get("system");
  const std::int64_t o1 = c.get_int("offset1"), o2 = c.get_int("offset2");
  if (s == "cantor-substitution") return {Point(cantor_two_sided_point().shifted(o1)), Point(cantor_two_sided_point().shifted(o2))};
  if (s == "thue-morse")
    return {Point(thue_morse_two_sided_point().shifted(o1)), Point(thue_morse_two_sided_point().shifted(o2))};
  if (s == "period-doubling")
    return {Point(period_doubling_two_sided_point().shifted(o1)), Point(period_doubling_two_sided_point().shifted(o2))};
  if (s == "sturmian") {
    const RotationNumber a = parse_rotation(c.get("alpha"));
    const ArcConvention conv = parse_convention(c.get("convention"));
    return {Point(sturmian_point(a, CirclePoint::from_double(c.get_double("theta1")), conv)),
            Point(sturmian_point(a, CirclePoint::from_double(c.get_double("theta2")), conv))};
  }
  if (s == "toeplitz-ex5") {
    const auto make = [&](const char* hole, std::int64_t offset) {
      ToeplitzParams p;
      p.hole_path = OdometerPoint::from_integer(c.get_int(hole));
      p.fills = parse_fills(c.get("fills"));
      const std::string& limit = c.get("limit");
      if (limit == "0" || limit == "1")
        p.limit_value = static_cast<Symbol>(limit[0] - '0');
      else if (limit != "none")
        throw InvalidParameter("'limit' must be 0, 1 or none");
      return Point(toeplitz_point(p).shifted(offset));
    };
    return {make("hole1", o1), make("hole2", o2)};
  }
  if (s == "odometer") {
    const int d = config_depth(c);
    return {Point(OdometerPoint::from_integer(o1, d)), Point(OdometerPoint::from_integer(o2, d))};
  }
  if (s == "rotation")
    return {Point(CirclePoint::from_double(c.get_double("theta1"))), Point(CirclePoint::from_double(c.get_double("theta2")))};
  if (s == "skew-product")
    return {make_product(Point(parse_rotation(c.get("base1")).phase), Point(CirclePoint::from_double(c.get_double("theta1")))),
            make_product(Point(parse_rotation(c.get("base2")).phase), Point(CirclePoint::from_double(c.get_double("theta2"))))};
  throw InvalidParameter("unknown system '" + s + "'");
}

Observable make_observable(const RunConfig& c) {
  const std::string& s = c.get("system");
  const std::string& o = c.get("observable");
  if (symbolic_system(s)) {
    if (o == "hamming") return Observable::hamming();
    if (o == "indicator") return Observable::symbol_indicator(1);
    if (o == "sign") return Observable::sign();
  } else if (s == "odometer") {
    if (o == "indicator") return Observable::digit_indicator(0);
  } else if (s == "rotation") {
    if (o == "indicator") return Observable::arc_indicator(CirclePoint::from_bits(0), CirclePoint::from_rational(1, 2));
    if (o == "character") return Observable::circle_character({1});
  } else if (s == "skew-product") {
    if (o == "character") return Observable::circle_character({0, 1});
  }
  throw InvalidParameter("observable '" + o + "' is not available on system '" + s + "'");
}

FoelnerFamily make_family(const RunConfig& c) {
  const auto [lo, hi] = c.get_range("tail");
  if (lo < 0 || hi > 40) throw InvalidParameter("'tail' must lie within 0..40");
  const std::string& f = c.get("family");
  if (f == "dyadic") return dyadic_family(static_cast<int>(hi));
  if (f == "centered") {
    std::vector<std::int64_t> lengths, starts;
    for (std::int64_t n = 0; n <= hi; ++n) {
      lengths.push_back(std::int64_t{1} << n);
      starts.push_back(-(lengths.back() / 2));
    }
    return make_interval_foelner(lengths, starts);
  }
  throw InvalidParameter("'family' must be dyadic or centered, got '" + f + "'");
}

Tail make_tail(const RunConfig& c) {
  const auto [lo, hi] = c.get_range("tail");
  return Tail{static_cast<int>(lo), static_cast<int>(hi)};
}

PairSampler make_pair_sampler(const RunConfig& c) {
  const std::string& s = c.get("system");
  if (s == "sturmian") return sturmian_pair_sampler(parse_rotation(c.get("alpha")));
  if (s == "thue-morse") return thue_morse_pair_sampler();
  if (s == "odometer") return odometer_pair_sampler(config_depth(c));
  if (s == "rotation") return rotation_pair_sampler();
  if (s == "toeplitz-ex5") return toeplitz_pair_sampler(parse_fills(c.get("fills")));
  throw InvalidParameter("no pair sampler for system '" + s + "'");
}

}  // namespace meq
