#pragma once

#include <string_view>

#include "minkowski/norm.hpp"

namespace minkowski {

// Builds a profile from a textual spec:
//   lp:<p>
//   ellipse:<a>,<b>
//   fourier:<base>;<freq>,<cos>,<sin>;...
//   radon-glued:<p>
//   file:<path>      CSV with columns x,y listing boundary points in order
// Syntax errors raise ParseError, invalid parameters ProfileError.
[[nodiscard]] NormProfile parse_profile_spec(std::string_view spec,
                                             int resolution = NormProfile::default_resolution);

}  // namespace minkowski
