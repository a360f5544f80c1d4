#include "qmac/entanglement.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace qmac {

int WStateOutcome::excited() const {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) return static_cast<int>(i) + 1;
  }
  return 0;
}

BellPairOutcome sample_bell(RandomSource& rng) {
  const int a = rng.next_bit() ? 1 : 0;
  return BellPairOutcome{a, 1 - a};
}

WStateOutcome sample_w(int n, RandomSource& rng) {
  if (n < 2) {
    throw std::invalid_argument("W state needs at least 2 qubits, got " + std::to_string(n));
  }
  WStateOutcome out;
  out.bits.assign(static_cast<std::size_t>(n), 0);
  out.bits[rng.uniform_below(static_cast<std::uint64_t>(n))] = 1;
  return out;
}

int oracle_input_bits(int n) {
  return std::bit_width(factorial(n)) - 1;
}

int station_register_bits(int n) {
  if (n < 2) return 0;
  return std::bit_width(static_cast<unsigned>(n - 1));
}

OracleSample oracle_output(int n, std::uint64_t rank) {
  if (n < 2) {
    throw std::invalid_argument("oracle needs at least 2 stations, got " + std::to_string(n));
  }
  const int p = oracle_input_bits(n);
  if (rank >= (std::uint64_t{1} << p)) {
    throw CodecError(CodecError::Kind::RankOutOfRange,
                     "oracle input " + std::to_string(rank) + " exceeds its " + std::to_string(p) + "-bit register");
  }
  const Rank r{rank, n};
  return OracleSample{r, decode(rank_to_lehmer(r)), n, p, station_register_bits(n)};
}

OracleSample sample_oracle(int n, RandomSource& rng) {
  if (n < 2) {
    throw std::invalid_argument("oracle needs at least 2 stations, got " + std::to_string(n));
  }
  const int p = oracle_input_bits(n);
  return oracle_output(n, rng.uniform_below(std::uint64_t{1} << p));
}

}  // namespace qmac
