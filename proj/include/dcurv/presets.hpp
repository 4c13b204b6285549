#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dcurv/config.hpp"

namespace dcurv {

enum class Scale { Ci, Paper };

Scale parse_scale(std::string_view text);

// exp1..exp6, their flat-space controls (expN-flat) and exp6-nopml.
std::vector<std::string> preset_names();

// Paper-scale configuration text, identical to presets/<name>.cfg.
std::string_view preset_text(std::string_view name);

// Ci scale keeps every grid at N <= 1024 per axis and exp3 at 100 steps.
RunConfig preset(std::string_view name, Scale scale = Scale::Paper);

}  // namespace dcurv
