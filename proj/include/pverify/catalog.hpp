#pragma once

#include <string>
#include <vector>

#include "pverify/system.hpp"

namespace pverify {

// Names of the built-in systems, in catalog order.
const std::vector<std::string>& builtin_system_names();

// Source text of a built-in system in the system-file grammar.
// Throws UnknownSystem for names outside builtin_system_names().
const std::string& builtin_system_text(const std::string& name);

// Parsed definition of a built-in system.
// Throws UnknownSystem for names outside builtin_system_names().
SystemDefinition builtin_system(const std::string& name);

}  // namespace pverify
