#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmac {

/// Largest n whose factorial fits in std::uint64_t (20! < 2^64 < 21!).
inline constexpr int kMaxFactorialN = 20;

class CodecError : public std::invalid_argument {
 public:
  enum class Kind { InvalidPermutation, InvalidCode, RankOutOfRange, TooLarge };

  CodecError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// n! for 0 <= n <= kMaxFactorialN; throws CodecError(TooLarge) beyond.
std::uint64_t factorial(int n);

/// A permutation of {1..n}. Positions are 1-based in the public accessors.
class Permutation {
 public:
  /// Validates that values is a bijection on {1..n}.
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(values_.size()); }
  int at(int position) const { return values_.at(static_cast<std::size_t>(position - 1)); }
  std::span<const int> values() const { return values_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

/// Lehmer code: digit i (1-based) counts the smaller elements to the right of position i.
class LehmerCode {
 public:
  /// Validates 0 <= digits[i] <= n - i for every 1-based position i.
  explicit LehmerCode(std::vector<int> digits);

  int size() const { return static_cast<int>(digits_.size()); }
  int at(int position) const { return digits_.at(static_cast<std::size_t>(position - 1)); }
  std::span<const int> digits() const { return digits_; }

  friend bool operator==(const LehmerCode&, const LehmerCode&) = default;

 private:
  std::vector<int> digits_;
};

/// Zero-based lexical position among the n! permutations of {1..n}.
struct Rank {
  std::uint64_t value = 0;
  int n = 1;

  friend bool operator==(const Rank&, const Rank&) = default;
};

LehmerCode encode(const Permutation& perm);
Permutation decode(const LehmerCode& code);
std::uint64_t inversion_count(const Permutation& perm);

/// Factoradic digits of m, most significant first: digit i = floor(r / (n-i)!), r <- r mod (n-i)!.
LehmerCode rank_to_lehmer(Rank m);
Rank lehmer_to_rank(const LehmerCode& code);

std::string to_string(const Permutation& perm);
std::string to_string(const LehmerCode& code);

}  // namespace qmac
