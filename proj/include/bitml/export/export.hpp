#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bitml/analyzer/model.hpp"
#include "bitml/profile.hpp"

namespace bitml::exporter {

enum class Format { Dot, Json, MdgXml };

std::string_view to_string(Format f);
std::optional<Format> format_from_name(std::string_view name);

struct ExportOptions {
    Format format = Format::Json;
    std::optional<std::string> diagram_filter;  // ignored by mdg-xml
    bool include_values = false;                // false redacts secret tag values
};

class ExportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ImportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SchemaVersionError : public ImportError {
public:
    using ImportError::ImportError;
};

inline constexpr std::string_view kSchema = "bitml/1";

std::string to_dot(const Model& model, const ExportOptions& opts = {});
std::string to_json(const Model& model, const ExportOptions& opts = {});
/// Throws SchemaVersionError, ImportError (malformed input) or UnknownStereotype.
Model from_json(std::string_view text, const ProfileRegistry& registry = bitml_profile());
std::string profile_to_mdg_xml(const ProfileRegistry& registry = bitml_profile());

/// Dispatches on `opts.format`.
std::string export_model(const Model& model, const ExportOptions& opts);

}  // namespace bitml::exporter
