#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triage/preprocess.hpp"

namespace triage {

// Fixed-dimension hashed term-count vector.
struct FeatureVector {
  std::size_t dim = 0;
  std::vector<double> values;
};

// FNV-1a over the token's UTF-8 bytes: offset basis 14695981039346656037,
// prime 1099511628211. Fixed across runs, platforms and releases; golden
// values live in data/hash_golden.json.
std::uint64_t fnv1a64(std::string_view bytes);

// fnv1a64(token) mod dim.
std::size_t hash_token(std::string_view token, std::size_t dim);

// Bucket-count accumulation: values[hash_token(t, dim)] += 1 per token.
FeatureVector vectorize(std::span<const std::string> tokens, std::size_t dim);

// Per-review fan-out over a tokenized corpus (order-preserving).
std::vector<FeatureVector> vectorize_batch(std::span<const TokenizedReview> reviews,
                                           std::size_t dim);
std::vector<FeatureVector> vectorize_batch_serial(std::span<const TokenizedReview> reviews,
                                                  std::size_t dim);

}  // namespace triage
