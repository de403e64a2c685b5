#include "meq/points.hpp"

#include <cmath>
#include <limits>

#include "meq/errors.hpp"

namespace meq {

double units_to_double(Units u) {
  return static_cast<double>(std::ldexp(static_cast<long double>(u), -kUnitBits));
}

Units units_from_double(double v) {
  if (!std::isfinite(v) || std::fabs(v) >= 0x1.0p26)
    throw InvalidParameter("value out of range for exact distance arithmetic");
  return static_cast<Units>(std::roundl(std::ldexp(static_cast<long double>(v), kUnitBits)));
}

// ---------------------------------------------------------------- circle

CirclePoint CirclePoint::from_double(double x) {
  if (!std::isfinite(x)) throw InvalidParameter("circle phase must be finite");
  const long double frac = static_cast<long double>(x) - std::floor(static_cast<long double>(x));
  const long double scaled = std::floor(std::ldexp(frac, 64));
  if (scaled >= 0x1.0p64L) return CirclePoint(0);
  return CirclePoint(static_cast<std::uint64_t>(scaled));
}

CirclePoint CirclePoint::from_rational(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw InvalidParameter("rational phase needs q > 0");
  std::int64_t r = p % q;
  if (r < 0) r += q;
  using U128 = unsigned __int128;
  const U128 scaled = (static_cast<U128>(r) << 64) / static_cast<U128>(q);
  return CirclePoint(static_cast<std::uint64_t>(scaled));
}

double CirclePoint::value() const { return std::ldexp(static_cast<double>(bits_), -64); }

RotationNumber RotationNumber::from_continued_fraction(const std::vector<std::int64_t>& quotients,
                                                       std::string label) {
  if (quotients.empty()) throw InvalidParameter("continued fraction needs at least one quotient");
  constexpr unsigned __int128 kLimit = std::uint64_t{1} << 62;
  unsigned __int128 p_prev = 1, q_prev = 0, p = 0, q = 1;
  RotationNumber out;
  for (std::int64_t a : quotients) {
    if (a < 1) throw InvalidParameter("partial quotients must be >= 1");
    const unsigned __int128 p_next = static_cast<unsigned __int128>(a) * p + p_prev;
    const unsigned __int128 q_next = static_cast<unsigned __int128>(a) * q + q_prev;
    if (q_next > kLimit) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    out.partial_quotients.push_back(a);
  }
  out.num = static_cast<std::uint64_t>(p);
  out.den = static_cast<std::uint64_t>(q);
  out.phase = CirclePoint::from_rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
  out.label = std::move(label);
  return out;
}

RotationNumber RotationNumber::golden(int terms) {
  return from_continued_fraction(std::vector<std::int64_t>(static_cast<std::size_t>(terms), 1),
                                 "golden");
}

RotationNumber RotationNumber::silver(int terms) {
  return from_continued_fraction(std::vector<std::int64_t>(static_cast<std::size_t>(terms), 2),
                                 "silver");
}

RotationNumber RotationNumber::rational(std::int64_t p, std::int64_t q) {
  RotationNumber out;
  out.phase = CirclePoint::from_rational(p, q);
  out.num = static_cast<std::uint64_t>(((p % q) + q) % q);
  out.den = static_cast<std::uint64_t>(q);
  out.label = std::to_string(p) + "/" + std::to_string(q);
  return out;
}

// -------------------------------------------------------------- odometer

namespace {

std::size_t words_for(int depth) { return static_cast<std::size_t>(depth > 0 ? (depth + 63) / 64 : 1); }

void check_depth(int depth) {
  if (depth < 1 || depth > 4096) throw InvalidParameter("odometer depth must be in [1, 4096]");
}

}  // namespace

void OdometerPoint::mask_to_depth() {
  words_.resize(words_for(depth_), 0);
  const int rem = depth_ % 64;
  if (rem != 0) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

OdometerPoint OdometerPoint::from_integer(std::int64_t n, int depth) {
  check_depth(depth);
  const std::uint64_t fill = n < 0 ? ~std::uint64_t{0} : 0;
  std::vector<std::uint64_t> words(words_for(depth), fill);
  words[0] = static_cast<std::uint64_t>(n);
  OdometerPoint p(std::move(words), depth, n);
  p.mask_to_depth();
  return p;
}

OdometerPoint OdometerPoint::from_digits(const std::function<bool(int)>& digit, int depth) {
  check_depth(depth);
  std::vector<std::uint64_t> words(words_for(depth), 0);
  for (int i = 0; i < depth; ++i)
    if (digit(i)) words[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
  return OdometerPoint(std::move(words), depth, std::nullopt);
}

bool OdometerPoint::digit(std::int64_t i) const {
  if (i < 0) throw InvalidParameter("negative odometer digit index");
  if (integer_) return i >= 63 ? *integer_ < 0 : ((static_cast<std::uint64_t>(*integer_) >> i) & 1U);
  if (i >= depth_) throw OracleExhausted(i, "odometer digit beyond declared depth");
  return (words_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1U;
}

std::uint64_t OdometerPoint::low_bits(int k) const {
  if (k < 0 || k > 64) throw InvalidParameter("low_bits: k must be in [0, 64]");
  if (k == 0) return 0;
  const std::uint64_t mask = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  if (integer_) return static_cast<std::uint64_t>(*integer_) & mask;
  if (k > depth_) throw OracleExhausted(k - 1, "odometer digit beyond declared depth");
  return words_[0] & mask;
}

OdometerPoint OdometerPoint::plus(std::int64_t n) const {
  if (integer_) {
    std::int64_t sum;
    if (!__builtin_add_overflow(*integer_, n, &sum)) return from_integer(sum, depth_);
  }
  std::vector<std::uint64_t> words = words_;
  const std::uint64_t fill = n < 0 ? ~std::uint64_t{0} : 0;
  unsigned carry = 0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::uint64_t addend = w == 0 ? static_cast<std::uint64_t>(n) : fill;
    const std::uint64_t s1 = words[w] + addend;
    const unsigned c1 = s1 < words[w];
    const std::uint64_t s2 = s1 + carry;
    const unsigned c2 = s2 < s1;
    words[w] = s2;
    carry = c1 | c2;
  }
  OdometerPoint out(std::move(words), depth_, std::nullopt);
  out.mask_to_depth();
  return out;
}

OdometerPoint OdometerPoint::negated() const {
  if (integer_ && *integer_ != std::numeric_limits<std::int64_t>::min())
    return from_integer(-*integer_, depth_);
  std::vector<std::uint64_t> words = words_;
  for (auto& w : words) w = ~w;
  OdometerPoint out(std::move(words), depth_, std::nullopt);
  out.mask_to_depth();
  return out.plus(1);
}

OdometerPoint OdometerPoint::truncated(int depth) const {
  check_depth(depth);
  if (integer_) return from_integer(*integer_, depth);
  if (depth > depth_) throw OracleExhausted(depth_, "cannot deepen a non-integer odometer point");
  OdometerPoint out(words_, depth, std::nullopt);
  out.mask_to_depth();
  return out;
}

std::string OdometerPoint::to_string() const {
  if (integer_) return std::to_string(*integer_);
  std::string s;
  const int shown = depth_ < 64 ? depth_ : 64;
  for (int i = 0; i < shown; ++i) s += digit(i) ? '1' : '0';
  return s + "...";
}

bool operator==(const OdometerPoint& a, const OdometerPoint& b) {
  return a.depth_ == b.depth_ && a.integer_ == b.integer_ && a.words_ == b.words_;
}

// -------------------------------------------------------------- symbolic

SymbolicPoint::SymbolicPoint(int alphabet_size, Oracle oracle, std::int64_t lo, std::int64_t hi,
                             std::string provenance, std::shared_ptr<const Meta> meta) {
  if (alphabet_size < 2 || alphabet_size > 255)
    throw InvalidParameter("alphabet size must be in [2, 255]");
  if (lo > hi) throw InvalidParameter("empty symbolic window");
  source_ = std::make_shared<const Source>(
      Source{alphabet_size, std::move(oracle), lo, hi, std::move(provenance), std::move(meta)});
}

SymbolicPoint SymbolicPoint::constant(int alphabet_size, Symbol s) {
  if (s >= alphabet_size) throw InvalidParameter("symbol outside alphabet");
  return SymbolicPoint(alphabet_size, [s](std::int64_t) { return s; }, -kUnbounded, kUnbounded,
                       "constant-" + std::to_string(s));
}

SymbolicPoint SymbolicPoint::periodic(int alphabet_size, std::vector<Symbol> word) {
  if (word.empty()) throw InvalidParameter("periodic point needs a nonempty word");
  std::string name = "periodic-";
  for (Symbol s : word) {
    if (s >= alphabet_size) throw InvalidParameter("symbol outside alphabet");
    name += static_cast<char>('0' + s);
  }
  const auto len = static_cast<std::int64_t>(word.size());
  return SymbolicPoint(
      alphabet_size,
      [w = std::move(word), len](std::int64_t k) {
        std::int64_t r = k % len;
        return w[static_cast<std::size_t>(r < 0 ? r + len : r)];
      },
      -kUnbounded, kUnbounded, name);
}

SymbolicPoint SymbolicPoint::from_word(int alphabet_size, std::int64_t lo, std::vector<Symbol> word) {
  if (word.empty()) throw InvalidParameter("finite point needs a nonempty word");
  for (Symbol s : word)
    if (s >= alphabet_size) throw InvalidParameter("symbol outside alphabet");
  const auto hi = lo + static_cast<std::int64_t>(word.size()) - 1;
  return SymbolicPoint(
      alphabet_size, [w = std::move(word), lo](std::int64_t k) { return w[static_cast<std::size_t>(k - lo)]; },
      lo, hi, "word");
}

bool SymbolicPoint::resolvable(std::int64_t k) const {
  const std::int64_t idx = k + offset_;
  return idx >= source_->lo && idx <= source_->hi;
}

Symbol SymbolicPoint::at(std::int64_t k) const {
  const std::int64_t idx = k + offset_;
  if (idx < source_->lo || idx > source_->hi)
    throw OracleExhausted(k, "coordinate outside the declared window of " + describe());
  return source_->oracle(idx);
}

std::pair<std::int64_t, std::int64_t> SymbolicPoint::window() const {
  return {source_->lo - offset_, source_->hi - offset_};
}

SymbolicPoint SymbolicPoint::shifted(std::int64_t n) const { return SymbolicPoint(source_, offset_ + n); }

SymbolicPoint SymbolicPoint::mapped(std::function<Symbol(Symbol)> f, int alphabet_size,
                                    std::string provenance) const {
  const auto [lo, hi] = window();
  SymbolicPoint base = *this;
  return SymbolicPoint(
      alphabet_size, [base, f = std::move(f)](std::int64_t k) { return f(base.at(k)); }, lo, hi,
      std::move(provenance));
}

SymbolicPoint SymbolicPoint::complemented() const {
  const int a = alphabet_size();
  return mapped([a](Symbol s) { return static_cast<Symbol>(a - 1 - s); }, a,
                "complement(" + describe() + ")");
}

std::string SymbolicPoint::describe() const {
  if (offset_ == 0) return source_->provenance;
  return source_->provenance + "[" + (offset_ > 0 ? "+" : "") + std::to_string(offset_) + "]";
}

std::string SymbolicPoint::render(std::int64_t lo, std::int64_t hi) const {
  std::string out;
  if (hi >= lo) out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t k = lo; k <= hi; ++k) {
    const Symbol s = at(k);
    out += s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + s - 10);
  }
  return out;
}

// ---------------------------------------------------------------- product

ProductPoint::ProductPoint(Point left, Point right)
    : parts_(std::make_shared<const std::pair<Point, Point>>(std::move(left), std::move(right))) {}

std::string Point::kind_name() const {
  switch (v_.index()) {
    case 0: return "symbolic";
    case 1: return "circle";
    case 2: return "odometer";
    default: return "product";
  }
}

std::string Point::describe() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymbolicPoint>) return p.describe();
        else if constexpr (std::is_same_v<T, CirclePoint>) return "circle:" + std::to_string(p.value());
        else if constexpr (std::is_same_v<T, OdometerPoint>) return "odometer:" + p.to_string();
        else return "(" + p.left().describe() + ", " + p.right().describe() + ")";
      },
      v_);
}

void throw_kind_mismatch(const std::string& wanted, const std::string& got) {
  throw MismatchedKinds("expected a " + wanted + " point, got a " + got + " point");
}

}  // namespace meq
