#pragma once

// Outcome-level samplers for the entangled resources the access point hands
// out. Only joint measurement statistics are modeled: a sampler draws the
// correlated result once and each station reads its share of it.

#include <cstdint>
#include <vector>

#include "qmac/permutation.hpp"
#include "qmac/random.hpp"

namespace qmac {

/// Measurement of an anti-correlated Bell pair (|01> + |10>)/sqrt(2).
struct BellPairOutcome {
  int side_a = 0;
  int side_b = 1;
};

/// Measurement of an n-qubit W state: exactly one bit is 1.
struct WStateOutcome {
  std::vector<std::uint8_t> bits;

  int size() const { return static_cast<int>(bits.size()); }
  /// 1-based index of the excited qubit.
  int excited() const;
};

/// One collapse of the permutation oracle: the input register value and the
/// permutation read out of the output register.
struct OracleSample {
  Rank rank;
  Permutation perm;
  int n = 0;
  /// Width of the input register: floor(log2(n!)).
  int input_bits = 0;
  /// Qubits dispatched to each station: ceil(log2(n)).
  int bits_per_station = 0;
};

BellPairOutcome sample_bell(RandomSource& rng);

/// Throws std::invalid_argument when n < 2.
WStateOutcome sample_w(int n, RandomSource& rng);

/// Throws std::invalid_argument when n < 2 and CodecError(TooLarge) when n! overflows.
OracleSample sample_oracle(int n, RandomSource& rng);

/// floor(log2(n!)), so that 2^bits <= n! < 2^(bits+1).
int oracle_input_bits(int n);

/// ceil(log2(n)) for n >= 2.
int station_register_bits(int n);

/// Builds the sample the oracle produces for a given input register value.
OracleSample oracle_output(int n, std::uint64_t rank);

}  // namespace qmac
