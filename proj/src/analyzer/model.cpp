#include "bitml/analyzer/model.hpp"

#include <algorithm>

namespace bitml {

std::string tag_value_to_source(const TagValue& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::uint64_t>) return std::to_string(x);
            else if constexpr (std::is_same_v<T, std::string>)
                return Literal{Literal::Kind::String, x}.to_source();
            else return x.literal;
        },
        v);
}

const TagValue* Element::tag(std::string_view tag_name) const {
    auto it = tags.find(std::string(tag_name));
    return it == tags.end() ? nullptr : &it->second;
}

const Attribute* Element::attribute(std::string_view attr_name) const {
    for (const auto& a : attributes) {
        if (a.name == attr_name) return &a;
    }
    return nullptr;
}

std::vector<const Attribute*> Element::attributes_of(std::string_view st) const {
    std::vector<const Attribute*> out;
    for (const auto& a : attributes) {
        if (a.stereotype == st) out.push_back(&a);
    }
    return out;
}

bool Element::role(std::string_view tag_name) const {
    const TagValue* v = tag(tag_name);
    if (v == nullptr) return false;
    const bool* b = std::get_if<bool>(v);
    return b != nullptr && *b;
}

bool operator==(const Invariant& a, const Invariant& b) {
    if (a.name != b.name || a.context != b.context || a.context_stereotype != b.context_stereotype ||
        a.span != b.span) {
        return false;
    }
    if (!a.expr || !b.expr) return !a.expr && !b.expr;
    return constraints::same_structure(*a.expr, *b.expr);
}

const Element* Model::find(std::string_view id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &elements[it->second];
}

std::vector<const Element*> Model::children_of(const Element& e) const {
    std::vector<const Element*> out;
    for (const auto& id : e.children) {
        if (const Element* c = find(id)) out.push_back(c);
    }
    return out;
}

std::vector<const Connector*> Model::incoming(std::string_view id, ConnectorKind k) const {
    std::vector<const Connector*> out;
    for (const auto& c : connectors) {
        if (c.kind == k && c.target == id) out.push_back(&c);
    }
    return out;
}

std::vector<const Connector*> Model::outgoing(std::string_view id, ConnectorKind k) const {
    std::vector<const Connector*> out;
    for (const auto& c : connectors) {
        if (c.kind == k && c.source == id) out.push_back(&c);
    }
    return out;
}

std::vector<const Element*> Model::blocks_containing(std::string_view tx_id) const {
    std::vector<const Element*> out;
    for (const auto& e : elements) {
        if (std::find(e.members.begin(), e.members.end(), tx_id) != e.members.end()) {
            out.push_back(&e);
        }
    }
    return out;
}

void Model::reindex() {
    index_.clear();
    for (std::size_t i = 0; i < elements.size(); ++i) index_.emplace(elements[i].id, i);
}

bool operator==(const Model& a, const Model& b) {
    return a.elements == b.elements && a.connectors == b.connectors && a.diagrams == b.diagrams &&
           a.invariants == b.invariants;
}

}  // namespace bitml
