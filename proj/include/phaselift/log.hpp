#pragma once

#include <functional>
#include <string_view>

namespace phaselift {

/// Receives library warnings (ill-posed extraction, small-n truncation).
/// The default sink writes to std::clog; pass an empty function to silence.
using WarningSink = std::function<void(std::string_view)>;

void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

} // namespace phaselift
