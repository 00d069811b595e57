#include <cctype>
#include <sstream>

#include "bitml/export/export.hpp"

namespace bitml::exporter {

namespace {

std::string xml_attr(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += items[i];
    }
    return out;
}

void write_tag(std::ostream& out, const TaggedValueDef& t, const ProfileRegistry& reg) {
    std::string type;
    std::string values;
    switch (t.value_type) {
        case TagType::EnumRef:
            type = "enumeration";
            values = join(t.allowed.empty() ? reg.lookup_enum(*t.enum_ref)->literals : t.allowed);
            break;
        case TagType::String:
            type = t.allowed.empty() ? "String" : "enumeration";
            values = join(t.allowed);
            break;
        case TagType::Boolean:
            type = "Boolean";
            values = "true,false";
            break;
        case TagType::Integer: type = "Integer"; break;
    }
    out << "        <Tag name=\"" << xml_attr(t.name) << "\" type=\"" << type << "\" description=\"\" unit=\"\" values=\""
        << xml_attr(values) << "\" default=\"" << xml_attr(t.default_value.value_or("")) << "\"/>\n";
}

}  // namespace

std::string profile_to_mdg_xml(const ProfileRegistry& registry) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<MDGProfile name=\"BitML\" version=\"1.0\" notes=\"\">\n";
    out << "  <Stereotypes>\n";
    for (const auto& st : registry.stereotypes()) {
        const bool connector = st.extends == Metaclass::Association || st.extends == Metaclass::Dependency;
        out << "    <Stereotype name=\"" << xml_attr(st.name) << "\"";
        if (connector) {
            out << " metatype=\"" << xml_attr(lower(st.name)) << "\"";
        } else {
            out << " alias=\"" << xml_attr(st.alias) << "\" metatype=\"" << xml_attr(st.alias) << "\"";
        }
        out << " notes=\"\" cx=\"0\" cy=\"0\" bgcolor=\"-1\" fontcolor=\"-1\" bordercolor=\"-1\" borderwidth=\""
            << (st.extends == Metaclass::Class ? "1" : "-1") << "\" hideicon=\"0\">\n";

        if (st.extends == Metaclass::Class) {
            std::vector<std::pair<std::string, std::string>> rels;
            for (const auto& c : registry.connectors()) {
                for (const auto& [src, dst] : c.allowed_pairs) {
                    if (src == st.name) rels.emplace_back(c.name, dst);
                }
            }
            if (!rels.empty()) {
                out << "      <stereotypedrelationships>\n";
                for (const auto& [conn, dst] : rels) {
                    out << "        <stereotypedrelationship stereotype=\"BitML::" << xml_attr(conn)
                        << "\" constraint=\"BitML::" << xml_attr(dst) << "\"/>\n";
                }
                out << "      </stereotypedrelationships>\n";
            }
        }

        out << "      <AppliesTo>\n";
        out << "        <Apply type=\"" << to_string(st.extends) << "\">\n";
        if (connector) {
            const ConnectorDef& def = registry.connector(*connector_from_name(st.name));
            out << "          <Property name=\"_MeaningForwards\" value=\"" << xml_attr(def.meaning_forwards) << "\"/>\n";
            out << "          <Property name=\"_MeaningBackwards\" value=\"" << xml_attr(def.meaning_backwards)
                << "\"/>\n";
            out << "          <Property name=\"direction\" value=\"Source -&gt; Destination\"/>\n";
        } else if (st.extends == Metaclass::Class) {
            out << "          <Property name=\"isActive\" value=\"\"/>\n";
            out << "          <Property name=\"_HideUmlLinks\" value=\"false\"/>\n";
        }
        out << "        </Apply>\n";
        out << "      </AppliesTo>\n";

        if (!st.tagged_values.empty()) {
            out << "      <TaggedValues>\n";
            for (const auto& t : st.tagged_values) write_tag(out, t, registry);
            out << "      </TaggedValues>\n";
        }
        out << "    </Stereotype>\n";
    }
    out << "  </Stereotypes>\n";
    out << "</MDGProfile>\n";
    return out.str();
}

std::string_view to_string(Format f) {
    switch (f) {
        case Format::Dot: return "dot";
        case Format::Json: return "json";
        case Format::MdgXml: return "mdg-xml";
    }
    return "json";
}

std::optional<Format> format_from_name(std::string_view name) {
    if (name == "dot") return Format::Dot;
    if (name == "json") return Format::Json;
    if (name == "mdg-xml") return Format::MdgXml;
    return std::nullopt;
}

std::string export_model(const Model& model, const ExportOptions& opts) {
    switch (opts.format) {
        case Format::Dot: return to_dot(model, opts);
        case Format::Json: return to_json(model, opts);
        case Format::MdgXml: return profile_to_mdg_xml();
    }
    return {};
}

}  // namespace bitml::exporter
