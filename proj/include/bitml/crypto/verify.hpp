#pragma once

#include <vector>

#include "bitml/analyzer/model.hpp"
#include "bitml/diagnostic.hpp"

namespace bitml::crypto {

/// Recomputes every pbkdf2 / hmac512 / hash160 connector target from its source
/// when both ends carry values, and checks HeaderHex proof of work.
std::vector<Diagnostic> verify_crypto_connectors(const Model& model);

}  // namespace bitml::crypto
