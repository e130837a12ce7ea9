#ifndef BLOWUP_VENDOR_JSON_FWD_HPP
#define BLOWUP_VENDOR_JSON_FWD_HPP

// nlohmann/json ships a forward header inside the single header; keep the
// include localized so library headers stay light.
#include <json.hpp>

#endif
