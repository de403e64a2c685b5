#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meq/points.hpp"

namespace meq {

/// Substitution a -> images[a] on the alphabet {0, ..., images.size()-1}.
struct SubstitutionRule {
  std::vector<std::vector<Symbol>> images;
  std::string name;

  /// 0 -> 010, 1 -> 111. Not primitive: 1 never produces 0.
  static SubstitutionRule cantor();
  /// 0 -> 01, 1 -> 10.
  static SubstitutionRule thue_morse();
  /// 0 -> 11, 1 -> 10; the image of Thue-Morse under y_n = x_n xor x_{n+1}.
  static SubstitutionRule period_doubling();

  int alphabet_size() const { return static_cast<int>(images.size()); }
  /// Throws InvalidParameter on empty images or out-of-alphabet symbols.
  void validate() const;
  /// Some power of the incidence matrix is strictly positive.
  bool is_primitive() const;
  SubstitutionRule power(int p) const;
  /// rule^times(word), materialized. Used as a direct-iteration oracle.
  std::vector<Symbol> iterate(std::vector<Symbol> word, int times) const;
};

/// Fixed point of the rule (or of a power of it) grown from `seed` at
/// coordinate 0. With `left_seed`, the point is two-sided: the left half is
/// the left-infinite fixed point ending in left_seed at coordinate -1.
/// Coordinates are computed by descending through substitution levels,
/// O(log |k|) per query with no materialized prefix. Throws InvalidParameter
/// if no power p <= 2 * alphabet makes both seeds extendable.
SymbolicPoint substitution_fixed_point(const SubstitutionRule& rule, Symbol seed,
                                       std::optional<Symbol> left_seed = std::nullopt);

}  // namespace meq
