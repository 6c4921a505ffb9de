#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gaussmarg/density.hpp"

namespace gmarg {

// Stream discipline
// -----------------
// A sample is built from fixed-size blocks of proposals. Block b of a run with
// root seed s draws from its own mt19937_64 seeded with splitmix64(s + (b + 1) * golden),
// golden = 0x9E3779B97F4A7C15. Blocks are concatenated in index order and the
// result truncated at N accepted points, so the output depends only on (spec, N, s),
// never on the worker count. Independent operations sharing one root seed take
// sub-seeds from derive_seed(root, stream_tag).

inline constexpr std::size_t kProposalBlock = 4096;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream_tag);

struct SampleBatch {
  std::size_t dimension = 0;
  /// Row-major N x dimension.
  std::vector<double> points;
  std::uint64_t seed = 0;
  std::uint64_t proposals_used = 0;
  double acceptance_rate = 0.0;

  std::size_t size() const noexcept { return dimension == 0 ? 0 : points.size() / dimension; }
  std::span<const double> point(std::size_t i) const { return {points.data() + i * dimension, dimension}; }
};

/// One block of gaussian proposals with their accept/reject decisions.
/// A proposal x with uniform u is accepted iff 2u < f(x) / gaussian(x), the envelope
/// constant 2 being valid because that ratio lies in [0, 2] when |epsilon| K <= 1.
struct ProposalBlock {
  std::vector<double> proposals;  // row-major kProposalBlock x n
  std::vector<double> uniforms;
  std::vector<unsigned char> accepted;
};

ProposalBlock propose_block(const DensitySpec& spec, std::uint64_t seed, std::uint64_t block_index);

/// Exact rejection sampling from f with a standard gaussian proposal; N >= 1.
SampleBatch sample_serial(const DensitySpec& spec, std::size_t n_samples, std::uint64_t seed);
/// Same output as sample_serial; blocks are generated concurrently.
SampleBatch sample(const DensitySpec& spec, std::size_t n_samples, std::uint64_t seed);

}  // namespace gmarg
