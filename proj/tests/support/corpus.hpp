#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "termweave/content_model.hpp"
#include "termweave/model.hpp"

namespace testsupport {

// Random content expression, depth-bounded, over the alphabet
// {a, b, c, d, text}. Exercises every expression kind including counted
// repetition.
termweave::ContentExprPtr random_expr(std::mt19937& rng, int maxDepth);

// Uniform random token string over the same alphabet, length 0..maxLen.
std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t maxLen);

// One random member of the expression's language, for positive coverage.
std::vector<std::string> sample_member(std::mt19937& rng,
                                       const termweave::ContentExpr& e);

// Seed-fixed random mainstream document: 1-5 entries, 1-3 langSets with
// distinct languages, 1-3 tigs each, auxiliary items drawn from the default
// registry. Valid by construction and loss-free under conversion to the
// blend and back.
termweave::Document random_document(std::uint32_t seed);

// The same document serialized.
std::string corpus_xml(std::uint32_t seed);

}  // namespace testsupport
