#pragma once

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace enrichfp {

/// Insertion-ordered so emitted documents have a stable field order.
using Json = nlohmann::ordered_json;

}  // namespace enrichfp
