#include "gaussmarg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gaussmarg/errors.hpp"
#include "gaussmarg/kernels.hpp"

namespace gmarg {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Uniform on [0, 1) from the top 53 bits.
double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

// Box-Muller pair; 1 - u keeps the logarithm finite.
std::pair<double, double> normal_pair(std::mt19937_64& gen) {
  const double u1 = 1.0 - unit_uniform(gen);
  const double u2 = unit_uniform(gen);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

// Appends accepted points of `block` until `batch` holds n_samples; true when full.
bool absorb(const ProposalBlock& block, std::size_t n, std::size_t n_samples, SampleBatch& batch) {
  for (std::size_t i = 0; i < block.accepted.size(); ++i) {
    ++batch.proposals_used;
    if (!block.accepted[i]) continue;
    batch.points.insert(batch.points.end(), block.proposals.begin() + static_cast<std::ptrdiff_t>(i * n),
                        block.proposals.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
    if (batch.size() == n_samples) return true;
  }
  return false;
}

SampleBatch start_batch(const DensitySpec& spec, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw ArgumentError("sample size must be at least 1");
  SampleBatch batch;
  batch.dimension = spec.dimension();
  batch.seed = seed;
  batch.points.reserve(n_samples * batch.dimension);
  return batch;
}

void finish_batch(SampleBatch& batch) {
  batch.acceptance_rate = static_cast<double>(batch.size()) / static_cast<double>(batch.proposals_used);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream_tag) {
  return splitmix64(root ^ splitmix64(stream_tag));
}

ProposalBlock propose_block(const DensitySpec& spec, std::uint64_t seed, std::uint64_t block_index) {
  const std::size_t n = spec.dimension();
  std::mt19937_64 gen(splitmix64(seed + (block_index + 1) * kGolden));
  ProposalBlock block;
  block.proposals.resize(kProposalBlock * n);
  block.uniforms.resize(kProposalBlock);
  block.accepted.resize(kProposalBlock);
  for (std::size_t i = 0; i < kProposalBlock; ++i) {
    std::span<double> x(block.proposals.data() + i * n, n);
    for (std::size_t j = 0; j < n; j += 2) {
      const auto [z0, z1] = normal_pair(gen);
      x[j] = z0;
      if (j + 1 < n) x[j + 1] = z1;
    }
    block.uniforms[i] = unit_uniform(gen);
    block.accepted[i] = 2.0 * block.uniforms[i] < perturbation_factor(spec, x) ? 1 : 0;
  }
  return block;
}

SampleBatch sample_serial(const DensitySpec& spec, std::size_t n_samples, std::uint64_t seed) {
  SampleBatch batch = start_batch(spec, n_samples, seed);
  for (std::uint64_t b = 0;; ++b) {
    if (absorb(propose_block(spec, seed, b), batch.dimension, n_samples, batch)) break;
  }
  finish_batch(batch);
  return batch;
}

SampleBatch sample(const DensitySpec& spec, std::size_t n_samples, std::uint64_t seed) {
  SampleBatch batch = start_batch(spec, n_samples, seed);
  const std::size_t wave = static_cast<std::size_t>(std::max(4, 2 * kernels::max_threads()));
  std::vector<ProposalBlock> blocks(wave);
  for (std::uint64_t first = 0;; first += wave) {
    const auto count = static_cast<long long>(wave);
#pragma omp parallel for schedule(dynamic)
    for (long long w = 0; w < count; ++w) {
      blocks[static_cast<std::size_t>(w)] = propose_block(spec, seed, first + static_cast<std::uint64_t>(w));
    }
    bool full = false;
    for (const auto& block : blocks) {
      if ((full = absorb(block, batch.dimension, n_samples, batch))) break;
    }
    if (full) break;
  }
  finish_batch(batch);
  return batch;
}

}  // namespace gmarg
