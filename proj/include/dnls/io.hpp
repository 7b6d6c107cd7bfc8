#pragma once

#include "dnls/field.hpp"

#include <iosfwd>
#include <string>

namespace dnls {

std::string serialize(const FieldGrid& f);
std::string serialize(const ScatteringData& d);

// Parse errors name the offending key and throw ValidationError.
FieldGrid deserialize_field(const std::string& text);
ScatteringData deserialize_scattering(const std::string& text);

void write_csv(std::ostream& os, const FieldGrid& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

} // namespace dnls
