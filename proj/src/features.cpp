#include "triage/features.hpp"

#include <stdexcept>

namespace triage {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::size_t hash_token(std::string_view token, std::size_t dim) {
  if (dim == 0) throw std::runtime_error("hash_token: dim must be positive");
  return static_cast<std::size_t>(fnv1a64(token) % dim);
}

FeatureVector vectorize(std::span<const std::string> tokens, std::size_t dim) {
  if (dim == 0) throw std::runtime_error("vectorize: dim must be positive");
  FeatureVector vec;
  vec.dim = dim;
  vec.values.assign(dim, 0.0);
  for (const auto& token : tokens) {
    vec.values[hash_token(token, dim)] += 1.0;
  }
  return vec;
}

std::vector<FeatureVector> vectorize_batch(std::span<const TokenizedReview> reviews,
                                           std::size_t dim) {
  if (dim == 0) throw std::runtime_error("vectorize_batch: dim must be positive");
  std::vector<FeatureVector> out(reviews.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    out[i] = vectorize(reviews[i].tokens, dim);
  }
  return out;
}

std::vector<FeatureVector> vectorize_batch_serial(std::span<const TokenizedReview> reviews,
                                                  std::size_t dim) {
  std::vector<FeatureVector> out;
  out.reserve(reviews.size());
  for (const auto& review : reviews) {
    out.push_back(vectorize(review.tokens, dim));
  }
  return out;
}

}  // namespace triage
