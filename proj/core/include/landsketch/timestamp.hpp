#pragma once

#include <string>

namespace landsketch {

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace landsketch
