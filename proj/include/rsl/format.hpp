#pragma once

#include <string>

namespace rsl {

/// Shortest-form %.12g rendering used for every floating value we write out.
/// Negative zero prints as 0 so output does not depend on roundoff sign.
std::string fmt12(double x);

} // namespace rsl
