#include "meq/fullgroup.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>

#include "meq/errors.hpp"
#include "meq/metrics.hpp"
#include "meq/parallel.hpp"
#include "meq/systems.hpp"

namespace meq {

namespace {

constexpr int kMaxDepth = 20;
constexpr int kMaxCheckDepth = 22;

std::uint64_t mask(int bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

std::string cylinder_string(std::uint64_t c, int depth) {
  if (depth == 0) return "*";
  std::string s;
  for (int i = 0; i < depth; ++i) s += ((c >> i) & 1) ? '1' : '0';
  return s;
}

}  // namespace

FullGroupElement make_element(int depth, std::vector<std::int64_t> t) {
  if (depth < 0 || depth > kMaxDepth)
    throw InvalidElement("element depth must lie in [0, " + std::to_string(kMaxDepth) + "]");
  if (t.size() != (std::size_t{1} << depth))
    throw InvalidElement("depth " + std::to_string(depth) + " needs " + std::to_string(std::size_t{1} << depth) +
                         " translations, got " + std::to_string(t.size()));
  int bits = 0;
  for (std::int64_t v : t) {
    const std::uint64_t mag = v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    bits = std::max(bits, static_cast<int>(std::bit_width(mag)));
  }
  const int R = std::min(depth + bits + 2, std::max(depth, kMaxCheckDepth));
  const std::uint64_t mr = mask(R), md = mask(depth);
  std::vector<bool> hit(std::size_t{1} << R, false);
  for (std::uint64_t c = 0; c <= mr; ++c) {
    const std::uint64_t image = (c + static_cast<std::uint64_t>(t[c & md])) & mr;
    if (hit[image])
      throw InvalidElement("translations are not bijective: two cylinders reach residue " + std::to_string(image) +
                           " mod 2^" + std::to_string(R));
    hit[image] = true;
  }
  while (depth > 0) {
    const std::size_t half = std::size_t{1} << (depth - 1);
    if (!std::equal(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(half),
                    t.begin() + static_cast<std::ptrdiff_t>(half)))
      break;
    t.resize(half);
    --depth;
  }
  return FullGroupElement(depth, std::move(t));
}

FullGroupElement translation_element(std::int64_t n) { return make_element(0, {n}); }

FullGroupElement element_s() { return make_element(1, {0, 2}); }

OdometerPoint apply_element(const FullGroupElement& e, const OdometerPoint& theta) {
  const std::uint64_t c = e.depth() == 0 ? 0 : theta.low_bits(e.depth());
  return theta.plus(e.translation(c));
}

FullGroupElement compose(const FullGroupElement& e1, const FullGroupElement& e2) {
  const int D = std::max(e1.depth(), e2.depth());
  const std::uint64_t m1 = mask(e1.depth()), m2 = mask(e2.depth());
  std::vector<std::int64_t> t(std::size_t{1} << D);
  for (std::uint64_t c = 0; c < t.size(); ++c) {
    const std::int64_t t2 = e2.translation(c & m2);
    const std::uint64_t mid = (c + static_cast<std::uint64_t>(t2)) & m1;
    t[c] = t2 + e1.translation(mid);
  }
  return make_element(D, std::move(t));
}

FullGroupElement inverse(const FullGroupElement& e) {
  const std::uint64_t m = mask(e.depth());
  std::vector<std::int64_t> t(e.translations().size());
  for (std::uint64_t c = 0; c < t.size(); ++c) {
    const std::int64_t tc = e.translation(c);
    t[(c + static_cast<std::uint64_t>(tc)) & m] = -tc;
  }
  return make_element(e.depth(), std::move(t));
}

IsometryResult isometry_check(const FullGroupElement& e, std::size_t count, std::uint64_t seed, int depth) {
  std::vector<double> distortion(count, 0.0);
  parallel_for(count, [&](std::size_t i) {
    Rng rng(Rng::derive(seed, i));
    const OdometerPoint a = random_odometer_point(rng.next(), depth);
    OdometerPoint b = random_odometer_point(rng.next(), depth);
    // Most pairs share a random number of low digits.
    const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(depth, 41))));
    if (rng.below(4) != 0) b = a.plus(static_cast<std::int64_t>(2 * rng.below(1 << 20) + 1) << r);
    const double before = odometer_metric(a, b, depth).value();
    const double after = odometer_metric(apply_element(e, a), apply_element(e, b), depth).value();
    distortion[i] = std::abs(after - before);
  });
  IsometryResult r;
  r.pairs = count;
  r.max_distortion = distortion.empty() ? 0.0 : *std::max_element(distortion.begin(), distortion.end());
  r.isometric = r.max_distortion == 0.0;
  return r;
}

SymbolicPoint act_on_extension(const FullGroupElement& e, const SymbolicPoint& x, const FactorMap& factor) {
  const Point image = factor.apply(Point(x));
  const auto& h = image.as<OdometerPoint>();
  if (!h.integer() && h.depth() < e.depth())
    throw ResolutionTooCoarse("factor resolves " + std::to_string(h.depth()) + " digits; element needs " +
                              std::to_string(e.depth()));
  const std::uint64_t c = e.depth() == 0 ? 0 : h.low_bits(e.depth());
  return x.shifted(e.translation(c));
}

FullGroupElement parse_element(const std::string& literal) {
  const auto semi = literal.find(';');
  if (literal.rfind("depth:", 0) != 0 || semi == std::string::npos)
    throw InvalidParameter("element literal must look like depth:n;cyl=trans,... (got '" + literal + "')");
  int depth = 0;
  try {
    std::size_t used = 0;
    depth = std::stoi(literal.substr(6, semi - 6), &used);
    if (used != semi - 6) throw std::invalid_argument("depth");
  } catch (const std::exception&) {
    throw InvalidParameter("bad depth in element literal '" + literal + "'");
  }
  if (depth < 0 || depth > kMaxDepth) throw InvalidElement("element depth must lie in [0, 20]");
  std::vector<std::int64_t> t(std::size_t{1} << depth);
  std::vector<bool> given(t.size(), false);
  std::stringstream entries(literal.substr(semi + 1));
  std::string entry;
  while (std::getline(entries, entry, ',')) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw InvalidParameter("element entry '" + entry + "' lacks '='");
    const std::string cyl = entry.substr(0, eq);
    std::uint64_t c = 0;
    if (cyl == "*") {
      if (depth != 0) throw InvalidParameter("cylinder '*' is only valid at depth 0");
    } else {
      if (static_cast<int>(cyl.size()) != depth) throw InvalidParameter("cylinder '" + cyl + "' has the wrong length");
      for (int i = 0; i < depth; ++i) {
        if (cyl[static_cast<std::size_t>(i)] != '0' && cyl[static_cast<std::size_t>(i)] != '1')
          throw InvalidParameter("cylinder '" + cyl + "' is not binary");
        if (cyl[static_cast<std::size_t>(i)] == '1') c |= std::uint64_t{1} << i;
      }
    }
    try {
      std::size_t used = 0;
      const std::string value = entry.substr(eq + 1);
      t[c] = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument("translation");
    } catch (const std::exception&) {
      throw InvalidParameter("bad translation in element entry '" + entry + "'");
    }
    if (given[c]) throw InvalidParameter("cylinder '" + cyl + "' given twice");
    given[c] = true;
  }
  for (std::size_t c = 0; c < given.size(); ++c)
    if (!given[c]) throw InvalidElement("translation missing for cylinder " + cylinder_string(c, depth));
  return make_element(depth, std::move(t));
}

std::string to_literal(const FullGroupElement& e) {
  std::string out = "depth:" + std::to_string(e.depth()) + ";";
  for (std::uint64_t c = 0; c < e.translations().size(); ++c) {
    if (c > 0) out += ",";
    out += cylinder_string(c, e.depth()) + "=" + std::to_string(e.translation(c));
  }
  return out;
}

}  // namespace meq
