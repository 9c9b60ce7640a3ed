#pragma once

#include <string>

#include "sfmc/montecarlo.hpp"

namespace sfmc {

/// Defaults used when a key is absent: 1580 nm / 70 fs pulse, sodium
/// target (5.14 eV), five-mode BSV at nbar = 100.  alpha is derived from
/// ip_ev and peak_field_au unless given explicitly.
SimConfig default_config();

/// Parse a flat key = value document ('#' comments allowed).  Unknown keys
/// and malformed lines raise ParseError with the line number; constraint
/// violations raise ValidationError naming the key.
SimConfig parse_config(const std::string& text);

SimConfig parse_config_file(const std::string& path);

/// Emit every key explicitly; emit -> parse is the identity.
std::string emit_config(const SimConfig& cfg);

} // namespace sfmc
