#include "qmac/permutation.hpp"

#include <sstream>

namespace qmac {

namespace {

template <typename Seq>
std::string join(const Seq& seq) {
  std::ostringstream out;
  out << '(';
  bool first = true;
  for (int v : seq) {
    if (!first) out << ',';
    out << v;
    first = false;
  }
  out << ')';
  return out.str();
}

void check_size(int n) {
  if (n < 1) {
    throw CodecError(CodecError::Kind::InvalidPermutation, "permutation size must be at least 1");
  }
  if (n > kMaxFactorialN) {
    throw CodecError(CodecError::Kind::TooLarge,
                     "n=" + std::to_string(n) + " exceeds the 64-bit factorial limit of " +
                         std::to_string(kMaxFactorialN));
  }
}

}  // namespace

std::uint64_t factorial(int n) {
  if (n < 0) {
    throw CodecError(CodecError::Kind::InvalidCode, "factorial of a negative number");
  }
  if (n > kMaxFactorialN) {
    throw CodecError(CodecError::Kind::TooLarge, "factorial overflows 64 bits for n=" + std::to_string(n));
  }
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const int n = static_cast<int>(values_.size());
  check_size(n);
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : values_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw CodecError(CodecError::Kind::InvalidPermutation, "not a permutation of 1..n: " + join(values_));
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  check_size(n);
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(std::move(v));
}

LehmerCode::LehmerCode(std::vector<int> digits) : digits_(std::move(digits)) {
  const int n = static_cast<int>(digits_.size());
  if (n < 1) {
    throw CodecError(CodecError::Kind::InvalidCode, "Lehmer code must have at least one digit");
  }
  if (n > kMaxFactorialN) {
    throw CodecError(CodecError::Kind::TooLarge, "Lehmer code longer than " + std::to_string(kMaxFactorialN));
  }
  for (int i = 0; i < n; ++i) {
    const int d = digits_[static_cast<std::size_t>(i)];
    if (d < 0 || d > n - 1 - i) {
      throw CodecError(CodecError::Kind::InvalidCode,
                       "digit " + std::to_string(i + 1) + " out of range in " + join(digits_));
    }
  }
}

LehmerCode encode(const Permutation& perm) {
  const auto v = perm.values();
  const std::size_t n = v.size();
  std::vector<int> digits(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (v[j] < v[i]) ++smaller;
    }
    digits[i] = smaller;
  }
  return LehmerCode(std::move(digits));
}

Permutation decode(const LehmerCode& code) {
  const auto d = code.digits();
  const std::size_t n = d.size();
  std::vector<int> out(d.begin(), d.end());
  // Backward sweep: each earlier digit bumps every later value it does not exceed.
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (out[j] >= out[i]) ++out[j];
    }
  }
  for (int& x : out) ++x;
  return Permutation(std::move(out));
}

std::uint64_t inversion_count(const Permutation& perm) {
  const LehmerCode code = encode(perm);
  std::uint64_t total = 0;
  for (int d : code.digits()) total += static_cast<std::uint64_t>(d);
  return total;
}

LehmerCode rank_to_lehmer(Rank m) {
  check_size(m.n);
  if (m.value >= factorial(m.n)) {
    throw CodecError(CodecError::Kind::RankOutOfRange,
                     "rank " + std::to_string(m.value) + " not below " + std::to_string(m.n) + "!");
  }
  std::vector<int> digits(static_cast<std::size_t>(m.n));
  std::uint64_t remainder = m.value;
  for (int i = 1; i <= m.n; ++i) {
    const std::uint64_t place = factorial(m.n - i);
    digits[static_cast<std::size_t>(i - 1)] = static_cast<int>(remainder / place);
    remainder %= place;
  }
  return LehmerCode(std::move(digits));
}

Rank lehmer_to_rank(const LehmerCode& code) {
  const int n = code.size();
  std::uint64_t value = 0;
  for (int i = 1; i <= n; ++i) {
    value += static_cast<std::uint64_t>(code.at(i)) * factorial(n - i);
  }
  return Rank{value, n};
}

std::string to_string(const Permutation& perm) { return join(perm.values()); }
std::string to_string(const LehmerCode& code) { return join(code.digits()); }

}  // namespace qmac
