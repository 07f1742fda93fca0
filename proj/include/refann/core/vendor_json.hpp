#pragma once

// nlohmann/json ships in vendor/ at the repository root.
#include <json.hpp>
