#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace meq {

using Symbol = std::uint8_t;

/// Exact distance arithmetic: distances are integers in units of 2^-100.
/// Cantor/odometer distances 2^-m (m <= 100), circle distances (64
/// fractional bits) and disagreement indicators are all representable, so
/// sums and maxima over windows are exact.
__extension__ typedef __int128 Units;
inline constexpr int kUnitBits = 100;
inline constexpr Units kUnitOne = Units{1} << kUnitBits;

/// 2^-m in units; 0 once m exceeds the unit resolution.
constexpr Units units_pow2(std::int64_t m) {
  return m < 0 ? kUnitOne : (m > kUnitBits ? Units{0} : Units{1} << (kUnitBits - m));
}
double units_to_double(Units u);
/// Nearest unit value of a finite double (|v| < 2^26).
Units units_from_double(double v);

/// Result of a metric evaluation. `flagged` marks an agreement-to-horizon
/// surrogate: no disagreement was found within the horizon, so the value
/// is an upper bound, not the distance.
struct MetricValue {
  Units units = 0;
  bool flagged = false;

  double value() const { return units_to_double(units); }
};

/// Point of the circle R/Z stored with 64 fractional bits. Addition wraps
/// modulo 1 exactly.
class CirclePoint {
 public:
  constexpr CirclePoint() = default;
  static constexpr CirclePoint from_bits(std::uint64_t bits) { return CirclePoint(bits); }
  static CirclePoint from_double(double x);
  /// floor(p/q * 2^64) reduced mod 1; q > 0.
  static CirclePoint from_rational(std::int64_t p, std::int64_t q);

  constexpr std::uint64_t bits() const { return bits_; }
  double value() const;

  CirclePoint operator+(CirclePoint o) const { return CirclePoint(bits_ + o.bits_); }
  CirclePoint operator-(CirclePoint o) const { return CirclePoint(bits_ - o.bits_); }
  CirclePoint operator-() const { return CirclePoint(0 - bits_); }
  /// n * this mod 1, exact at the storage precision.
  CirclePoint times(std::int64_t n) const {
    return CirclePoint(bits_ * static_cast<std::uint64_t>(n));
  }
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

 private:
  constexpr explicit CirclePoint(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// Rotation number given by a continued fraction [0; a1, a2, ...]. The
/// stored phase is the last convergent p/q that fits 63 bits, rounded down
/// to 64 fractional bits; |alpha - p/q| < 1/q^2 is far below the storage ulp.
struct RotationNumber {
  CirclePoint phase;
  std::vector<std::int64_t> partial_quotients;
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  std::string label;

  static RotationNumber from_continued_fraction(const std::vector<std::int64_t>& quotients,
                                                std::string label);
  /// (sqrt(5) - 1) / 2 = [0; 1, 1, 1, ...].
  static RotationNumber golden(int terms = 90);
  /// sqrt(2) - 1 = [0; 2, 2, 2, ...].
  static RotationNumber silver(int terms = 50);
  static RotationNumber rational(std::int64_t p, std::int64_t q);

  double value() const { return phase.value(); }
};

/// Point of the dyadic odometer 2^N (2-adic integers). Digits are stored to
/// a declared depth; integers embed exactly (two's complement digits, known
/// to every depth). Digits past the depth of a non-integer point are not
/// available and raise OracleExhausted.
class OdometerPoint {
 public:
  static constexpr int kDefaultDepth = 64;

  OdometerPoint() : OdometerPoint(from_integer(0)) {}
  static OdometerPoint from_integer(std::int64_t n, int depth = kDefaultDepth);
  static OdometerPoint from_digits(const std::function<bool(int)>& digit, int depth);

  int depth() const { return depth_; }
  std::optional<std::int64_t> integer() const { return integer_; }
  bool digit(std::int64_t i) const;
  /// theta mod 2^k as an integer in [0, 2^k), k <= 64 and k <= depth unless
  /// the point is an integer.
  std::uint64_t low_bits(int k) const;

  OdometerPoint plus(std::int64_t n) const;
  OdometerPoint negated() const;
  /// Same point with the stored depth cut to `depth` (integers keep their
  /// exact value).
  OdometerPoint truncated(int depth) const;

  std::string to_string() const;
  friend bool operator==(const OdometerPoint& a, const OdometerPoint& b);

 private:
  OdometerPoint(std::vector<std::uint64_t> words, int depth, std::optional<std::int64_t> integer)
      : words_(std::move(words)), depth_(depth), integer_(integer) {}
  void mask_to_depth();

  std::vector<std::uint64_t> words_;
  int depth_ = kDefaultDepth;
  std::optional<std::int64_t> integer_;
};

/// Two-sided sequence over {0, ..., alphabet_size-1} given by a pure
/// coordinate oracle. Coordinates inside the declared window [lo, hi]
/// (relative to the source) are guaranteed; others raise OracleExhausted.
/// Shifting is O(1): it only moves an offset.
class SymbolicPoint {
 public:
  using Oracle = std::function<Symbol(std::int64_t)>;

  /// Optional typed construction parameters (e.g. Toeplitz hole path) that
  /// factor maps can read back instead of re-detecting structure.
  struct Meta {
    virtual ~Meta() = default;
  };

  static constexpr std::int64_t kUnbounded = std::int64_t{1} << 61;

  SymbolicPoint(int alphabet_size, Oracle oracle, std::int64_t lo, std::int64_t hi,
                std::string provenance, std::shared_ptr<const Meta> meta = {});

  static SymbolicPoint constant(int alphabet_size, Symbol s);
  /// Periodic point with x_k = word[k mod |word|].
  static SymbolicPoint periodic(int alphabet_size, std::vector<Symbol> word);
  /// Finite point: symbols placed at [lo, lo + size), nothing outside.
  static SymbolicPoint from_word(int alphabet_size, std::int64_t lo, std::vector<Symbol> word);

  /// x_k; throws OracleExhausted outside the window.
  Symbol at(std::int64_t k) const;
  bool resolvable(std::int64_t k) const;
  /// Resolvable coordinates of this (shifted) point, [lo, hi].
  std::pair<std::int64_t, std::int64_t> window() const;

  int alphabet_size() const { return source_->alphabet_size; }
  /// (sigma^n x)_k = x_{k+n}.
  SymbolicPoint shifted(std::int64_t n) const;
  /// Total shift relative to the generating source.
  std::int64_t offset() const { return offset_; }
  /// Pointwise symbol map (e.g. bitwise complement).
  SymbolicPoint mapped(std::function<Symbol(Symbol)> f, int alphabet_size,
                       std::string provenance) const;
  SymbolicPoint complemented() const;

  const std::string& provenance() const { return source_->provenance; }
  /// Provenance plus offset, e.g. "thue-morse[+12]".
  std::string describe() const;
  const Meta* meta() const { return source_->meta.get(); }

  /// Symbols on [lo, hi] as a digit string (alphabet <= 10).
  std::string render(std::int64_t lo, std::int64_t hi) const;

 private:
  struct Source {
    int alphabet_size;
    Oracle oracle;
    std::int64_t lo, hi;
    std::string provenance;
    std::shared_ptr<const Meta> meta;
  };
  SymbolicPoint(std::shared_ptr<const Source> source, std::int64_t offset)
      : source_(std::move(source)), offset_(offset) {}

  std::shared_ptr<const Source> source_;
  std::int64_t offset_ = 0;
};

class Point;

/// Pair (left, right) of points of any kind.
class ProductPoint {
 public:
  ProductPoint(Point left, Point right);
  const Point& left() const;
  const Point& right() const;

 private:
  std::shared_ptr<const std::pair<Point, Point>> parts_;
};

/// Any point a system can act on.
class Point {
 public:
  using Variant = std::variant<SymbolicPoint, CirclePoint, OdometerPoint, ProductPoint>;

  Point(SymbolicPoint p) : v_(std::move(p)) {}
  Point(CirclePoint p) : v_(p) {}
  Point(OdometerPoint p) : v_(std::move(p)) {}
  Point(ProductPoint p) : v_(std::move(p)) {}

  const Variant& variant() const { return v_; }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(v_);
  }
  /// Throws MismatchedKinds if the point is of another kind.
  template <class T>
  const T& as() const;

  std::string kind_name() const;
  std::string describe() const;

 private:
  Variant v_;
};

void throw_kind_mismatch(const std::string& wanted, const std::string& got);

template <class T>
const T& Point::as() const {
  if (const T* p = std::get_if<T>(&v_)) return *p;
  const char* wanted = std::is_same_v<T, SymbolicPoint>   ? "symbolic"
                       : std::is_same_v<T, CirclePoint>   ? "circle"
                       : std::is_same_v<T, OdometerPoint> ? "odometer"
                                                          : "product";
  throw_kind_mismatch(wanted, kind_name());
  return *std::get_if<T>(&v_);  // unreachable
}

inline const Point& ProductPoint::left() const { return parts_->first; }
inline const Point& ProductPoint::right() const { return parts_->second; }

inline Point make_product(Point left, Point right) {
  return Point(ProductPoint(std::move(left), std::move(right)));
}

}  // namespace meq
