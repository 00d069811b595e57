#include <json.hpp>

#include "bitml/analyzer/analyzer.hpp"
#include "bitml/export/export.hpp"

namespace bitml::exporter {

using nlohmann::json;

namespace {

json span_json(const SourceSpan& s) {
    return {{"file", s.file}, {"line", s.start_line}, {"col", s.start_col}, {"end_line", s.end_line},
            {"end_col", s.end_col}};
}

SourceSpan span_from(const json& j) {
    SourceSpan s;
    s.file = j.at("file").get<std::string>();
    s.start_line = j.at("line").get<int>();
    s.start_col = j.at("col").get<int>();
    s.end_line = j.at("end_line").get<int>();
    s.end_col = j.at("end_col").get<int>();
    return s;
}

json literal_json(const Literal& l) {
    switch (l.kind) {
        case Literal::Kind::Integer: return {{"int", l.text}};
        case Literal::Kind::Hex: return {{"hex", l.text}};
        case Literal::Kind::String: return {{"string", l.text}};
        case Literal::Kind::Ident: return {{"ident", l.text}};
        case Literal::Kind::Boolean: return {{"bool", l.text == "true"}};
    }
    return nullptr;
}

Literal literal_from(const json& j) {
    if (!j.is_object() || j.size() != 1) throw ImportError("literal must be a one-key object");
    const auto& [key, v] = *j.items().begin();
    if (key == "int") return {Literal::Kind::Integer, v.get<std::string>()};
    if (key == "hex") return {Literal::Kind::Hex, v.get<std::string>()};
    if (key == "string") return {Literal::Kind::String, v.get<std::string>()};
    if (key == "ident") return {Literal::Kind::Ident, v.get<std::string>()};
    if (key == "bool") return {Literal::Kind::Boolean, v.get<bool>() ? "true" : "false"};
    throw ImportError("unknown literal kind '" + key + "'");
}

json tag_json(const TagValue& v) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, bool>) return {{"bool", x}};
            else if constexpr (std::is_same_v<T, std::uint64_t>) return {{"int", x}};
            else if constexpr (std::is_same_v<T, std::string>) return {{"string", x}};
            else return {{"enum", x.literal}};
        },
        v);
}

TagValue tag_from(const json& j) {
    if (!j.is_object() || j.size() != 1) throw ImportError("tag value must be a one-key object");
    const auto& [key, v] = *j.items().begin();
    if (key == "bool") return v.get<bool>();
    if (key == "int") return v.get<std::uint64_t>();
    if (key == "string") return v.get<std::string>();
    if (key == "enum") return EnumValue{v.get<std::string>()};
    throw ImportError("unknown tag value kind '" + key + "'");
}

bool redacted(const std::string& tag, const ExportOptions& opts, const ProfileRegistry& reg) {
    if (opts.include_values) return false;
    const TaggedValueDef* def = reg.lookup_tag(tag);
    return def != nullptr && def->carries_secret_value;
}

json element_json(const Element& e, const ExportOptions& opts) {
    const auto& reg = bitml_profile();
    json tags = json::object();
    for (const auto& [name, value] : e.tags) {
        if (!redacted(name, opts, reg)) tags[name] = tag_json(value);
    }
    json attrs = json::array();
    for (const auto& a : e.attributes) {
        attrs.push_back({{"name", a.name},
                         {"stereotype", a.stereotype},
                         {"value", a.value ? literal_json(*a.value) : json(nullptr)},
                         {"span", span_json(a.span)}});
    }
    json ops = json::array();
    for (const auto& o : e.operations) {
        ops.push_back({{"name", o.name}, {"stereotype", o.stereotype}, {"span", span_json(o.span)}});
    }
    return {{"id", e.id},
            {"name", e.name},
            {"stereotype", e.stereotype},
            {"owner", e.owner ? json(*e.owner) : json(nullptr)},
            {"children", e.children},
            {"members", e.members},
            {"tags", tags},
            {"attributes", attrs},
            {"operations", ops},
            {"span", span_json(e.span)}};
}

}  // namespace

std::string to_json(const Model& model, const ExportOptions& opts) {
    json diagrams = json::array();
    for (const auto& d : model.diagrams) {
        if (opts.diagram_filter && *opts.diagram_filter != d.name) continue;
        json elements = json::array();
        for (const auto& id : d.elements) {
            if (const Element* e = model.find(id)) elements.push_back(element_json(*e, opts));
        }
        json connectors = json::array();
        for (const auto& c : model.connectors) {
            if (c.diagram != d.name) continue;
            connectors.push_back({{"kind", std::string(connector_name(c.kind))},
                                  {"source", c.source},
                                  {"target", c.target},
                                  {"span", span_json(c.span)}});
        }
        diagrams.push_back({{"kind", std::string(dsl::to_string(d.kind))},
                            {"name", d.name},
                            {"elements", elements},
                            {"connectors", connectors},
                            {"span", span_json(d.span)}});
    }
    if (opts.diagram_filter && diagrams.empty()) {
        throw ExportError("no diagram named '" + *opts.diagram_filter + "'");
    }
    json root = {{"schema", std::string(kSchema)}, {"diagrams", diagrams}};
    if (!model.invariants.empty()) {
        json invs = json::array();
        for (const auto& inv : model.invariants) {
            invs.push_back({{"name", inv.name},
                            {"context", inv.context},
                            {"expr", inv.expr ? constraints::print_expr(*inv.expr) : std::string()},
                            {"span", span_json(inv.span)}});
        }
        root["invariants"] = invs;
    }
    return root.dump() + "\n";
}

Model from_json(std::string_view text, const ProfileRegistry& registry) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ImportError(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ImportError("document must be a JSON object");
    const auto schema = root.find("schema");
    if (schema == root.end() || !schema->is_string()) throw SchemaVersionError("missing schema field");
    if (schema->get<std::string>() != kSchema) {
        throw SchemaVersionError("unsupported schema '" + schema->get<std::string>() + "', expected '" +
                                 std::string(kSchema) + "'");
    }

    Model model;
    try {
        for (const auto& d : root.at("diagrams")) {
            Diagram diagram;
            const auto kind = dsl::diagram_kind_from_keyword(d.at("kind").get<std::string>());
            if (!kind) throw ImportError("unknown diagram kind '" + d.at("kind").get<std::string>() + "'");
            diagram.kind = *kind;
            diagram.name = d.at("name").get<std::string>();
            diagram.span = span_from(d.at("span"));
            for (const auto& je : d.at("elements")) {
                Element e;
                e.id = je.at("id").get<std::string>();
                e.name = je.at("name").get<std::string>();
                e.stereotype = je.at("stereotype").get<std::string>();
                if (!registry.is_class_stereotype(e.stereotype)) throw UnknownStereotype(e.stereotype);
                if (!je.at("owner").is_null()) e.owner = je.at("owner").get<std::string>();
                e.children = je.at("children").get<std::vector<std::string>>();
                e.members = je.at("members").get<std::vector<std::string>>();
                for (const auto& [name, v] : je.at("tags").items()) e.tags.emplace(name, tag_from(v));
                for (const auto& ja : je.at("attributes")) {
                    Attribute a;
                    a.name = ja.at("name").get<std::string>();
                    a.stereotype = ja.at("stereotype").get<std::string>();
                    const StereotypeDef* st = registry.lookup_stereotype(a.stereotype);
                    if (st == nullptr || st->extends != Metaclass::Attribute) throw UnknownStereotype(a.stereotype);
                    if (!ja.at("value").is_null()) a.value = literal_from(ja.at("value"));
                    a.span = span_from(ja.at("span"));
                    e.attributes.push_back(std::move(a));
                }
                for (const auto& jo : je.at("operations")) {
                    Operation o{jo.at("name").get<std::string>(), jo.at("stereotype").get<std::string>(),
                                span_from(jo.at("span"))};
                    const StereotypeDef* st = registry.lookup_stereotype(o.stereotype);
                    if (st == nullptr || st->extends != Metaclass::Operation) throw UnknownStereotype(o.stereotype);
                    e.operations.push_back(std::move(o));
                }
                e.diagram_kind = diagram.kind;
                e.diagram = diagram.name;
                e.span = span_from(je.at("span"));
                diagram.elements.push_back(e.id);
                model.elements.push_back(std::move(e));
            }
            for (const auto& jc : d.at("connectors")) {
                const auto kind = connector_from_name(jc.at("kind").get<std::string>());
                if (!kind) throw UnknownStereotype(jc.at("kind").get<std::string>());
                model.connectors.push_back(Connector{*kind, jc.at("source").get<std::string>(),
                                                     jc.at("target").get<std::string>(), diagram.name,
                                                     span_from(jc.at("span"))});
            }
            model.diagrams.push_back(std::move(diagram));
        }
        model.reindex();
        if (const auto it = root.find("invariants"); it != root.end()) {
            for (const auto& ji : *it) {
                Invariant inv;
                inv.name = ji.at("name").get<std::string>();
                inv.context = ji.at("context").get<std::string>();
                const auto st = resolve_invariant_context(inv.context, registry);
                if (!st) throw ImportError("unknown invariant context '" + inv.context + "'");
                inv.context_stereotype = *st;
                auto parsed = constraints::parse_expr(ji.at("expr").get<std::string>());
                if (!parsed.expr) throw ImportError("invariant '" + inv.name + "' expression does not parse");
                inv.expr = parsed.expr;
                inv.span = span_from(ji.at("span"));
                model.invariants.push_back(std::move(inv));
            }
        }
    } catch (const json::exception& e) {
        throw ImportError(std::string("malformed model: ") + e.what());
    }
    return model;
}

}  // namespace bitml::exporter
