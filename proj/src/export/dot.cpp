#include <algorithm>
#include <sstream>

#include "bitml/export/export.hpp"

namespace bitml::exporter {

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

// Escapes record-label metacharacters; the result is embedded in a quoted string.
std::string record_text(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '{' || c == '}' || c == '|' || c == '<' || c == '>' || c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

std::string node_label(const Element& e, bool include_values) {
    const auto& reg = bitml_profile();
    std::string label = "{" + record_text("«" + e.stereotype + "» " + e.name);
    std::string rows;
    for (const auto& [name, value] : e.tags) {
        const TaggedValueDef* def = reg.lookup_tag(name);
        const bool hide = !include_values && def != nullptr && def->carries_secret_value;
        rows += record_text(name + " = " + (hide ? std::string("<redacted>") : tag_value_to_source(value))) + "\\l";
    }
    if (!rows.empty()) label += "|" + rows;
    std::string attrs;
    for (const auto& a : e.attributes) {
        std::string row = a.name + ": " + a.stereotype;
        if (a.value) row += " = " + a.value->to_source();
        attrs += record_text(row) + "\\l";
    }
    for (const auto& o : e.operations) attrs += record_text(o.name + "(): " + o.stereotype) + "\\l";
    if (!attrs.empty()) label += "|" + attrs;
    return label + "}";
}

}  // namespace

std::string to_dot(const Model& model, const ExportOptions& opts) {
    if (opts.diagram_filter) {
        const bool known = std::any_of(model.diagrams.begin(), model.diagrams.end(),
                                       [&](const Diagram& d) { return d.name == *opts.diagram_filter; });
        if (!known) throw ExportError("no diagram named '" + *opts.diagram_filter + "'");
    }
    auto selected = [&](const std::string& diagram) {
        return !opts.diagram_filter || *opts.diagram_filter == diagram;
    };

    std::vector<const Element*> nodes;
    for (const auto& e : model.elements) {
        if (selected(e.diagram)) nodes.push_back(&e);
    }
    std::sort(nodes.begin(), nodes.end(), [](const Element* a, const Element* b) { return a->id < b->id; });

    std::vector<const Connector*> edges;
    for (const auto& c : model.connectors) {
        if (selected(c.diagram)) edges.push_back(&c);
    }
    std::sort(edges.begin(), edges.end(), [](const Connector* a, const Connector* b) {
        return std::tie(a->source, a->target, a->kind) < std::tie(b->source, b->target, b->kind);
    });

    std::ostringstream out;
    out << "// BitML model export (" << kSchema << ")\n";
    if (nodes.empty() && edges.empty()) {
        out << "digraph bitml {}\n";
        return out.str();
    }
    out << "digraph bitml {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=record, fontname=\"Helvetica\"];\n";
    out << "  edge [fontname=\"Helvetica\", fontsize=10];\n";
    for (const Element* e : nodes) {
        out << "  " << quote(e->id) << " [label=\"" << node_label(*e, opts.include_values) << "\"];\n";
    }
    for (const Element* e : nodes) {
        if (!e->owner || !selected(e->diagram)) continue;
        out << "  " << quote(*e->owner) << " -> " << quote(e->id)
            << " [arrowtail=diamond, dir=back, arrowhead=none, color=gray40];\n";
    }
    for (const Connector* c : edges) {
        out << "  " << quote(c->source) << " -> " << quote(c->target) << " [label=\"«"
            << connector_name(c->kind) << "»\"";
        if (c->kind != ConnectorKind::Spend) out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace bitml::exporter
