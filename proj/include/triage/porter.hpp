#pragma once

#include <string>
#include <string_view>

namespace triage {

// Classic Porter stemming (1980), operating on lowercase ASCII tokens.
// Words of length <= 2 are returned unchanged, matching the reference
// implementation's documented departure.
std::string porter_stem(std::string_view token);

}  // namespace triage
