#pragma once

#include <span>
#include <string>
#include <vector>

#include "termweave/content_model.hpp"

// Reference matcher used to cross-check the position automaton. It interprets
// content expressions directly via Brzozowski derivatives, including counted
// repetitions, so it shares no code with Matcher.
namespace oracle {

bool nullable(const termweave::ContentExpr& e);

// Derivative of e with respect to one token. Returns nullptr for the empty
// language (no continuation can match).
termweave::ContentExprPtr derive(const termweave::ContentExprPtr& e,
                                 const std::string& token);

bool accepts(const termweave::ContentExprPtr& e,
             std::span<const std::string> tokens);

}  // namespace oracle
