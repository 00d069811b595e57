#include <algorithm>
#include <map>
#include <set>

#include "bitml/analyzer/analyzer.hpp"

namespace bitml {

namespace {

using dsl::AstElement;
using dsl::ElementKind;

bool nesting_allowed(ElementKind parent, ElementKind child) {
    switch (parent) {
        case ElementKind::Transaction:
            return child == ElementKind::Input || child == ElementKind::Output ||
                   child == ElementKind::CoinbaseInput;
        case ElementKind::Block: return child == ElementKind::BlockHeader;
        default: return false;
    }
}

std::string describe_literal(const Literal& l) {
    switch (l.kind) {
        case Literal::Kind::Integer: return "integer " + l.text;
        case Literal::Kind::Hex: return "hex 0x" + l.text;
        case Literal::Kind::String: return "string " + l.to_source();
        case Literal::Kind::Ident: return "identifier " + l.text;
        case Literal::Kind::Boolean: return "boolean " + l.text;
    }
    return l.text;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

// Returns the typed value, or sets `error` to a reason.
std::optional<TagValue> type_tag(const TaggedValueDef& def, const Literal& lit,
                                 const ProfileRegistry& reg, std::string& error) {
    switch (def.value_type) {
        case TagType::Boolean:
            if (lit.kind == Literal::Kind::Boolean) return TagValue(lit.text == "true");
            error = "expects a boolean, found " + describe_literal(lit);
            return std::nullopt;
        case TagType::Integer:
            if (auto v = lit.as_u64()) return TagValue(*v);
            error = "expects an unsigned 64-bit integer, found " + describe_literal(lit);
            return std::nullopt;
        case TagType::String: {
            const bool textual = lit.kind == Literal::Kind::String ||
                                 (!def.allowed.empty() && lit.kind == Literal::Kind::Ident);
            if (!textual) {
                error = "expects a string, found " + describe_literal(lit);
                return std::nullopt;
            }
            if (!def.allowed.empty() &&
                std::find(def.allowed.begin(), def.allowed.end(), lit.text) == def.allowed.end()) {
                error = "expects one of " + join(def.allowed, "|") + ", found " + describe_literal(lit);
                return std::nullopt;
            }
            return TagValue(lit.text);
        }
        case TagType::EnumRef: {
            const EnumDef* e = reg.lookup_enum(*def.enum_ref);
            const auto& accepted = def.allowed.empty() ? e->literals : def.allowed;
            if (lit.kind != Literal::Kind::Ident ||
                std::find(accepted.begin(), accepted.end(), lit.text) == accepted.end()) {
                error = "expects a " + e->name + " literal (" + join(accepted, ", ") + "), found " +
                        describe_literal(lit);
                return std::nullopt;
            }
            return TagValue(EnumValue{lit.text});
        }
    }
    return std::nullopt;
}

TagValue untyped_tag(const Literal& lit) {
    switch (lit.kind) {
        case Literal::Kind::Boolean: return lit.text == "true";
        case Literal::Kind::Integer:
        case Literal::Kind::Hex:
            if (auto v = lit.as_u64()) return *v;
            return lit.to_source();
        case Literal::Kind::String: return lit.text;
        case Literal::Kind::Ident: return EnumValue{lit.text};
    }
    return lit.text;
}

class Resolver {
public:
    Resolver(const dsl::AstModel& ast, const ProfileRegistry& reg) : ast_(ast), reg_(reg) {}

    Resolution run() {
        for (const auto& d : ast_.diagrams) {
            Diagram diagram{d.kind, d.name, {}, d.span};
            for (const auto& e : d.elements) add_element(e, nullptr, d, diagram);
            out_.model.diagrams.push_back(std::move(diagram));
        }
        out_.model.reindex();
        resolve_tx_refs();
        for (const auto& d : ast_.diagrams) {
            for (const auto& c : d.connectors) add_connector(c, d.name);
        }
        for (const auto& inv : ast_.user_invariants) {
            if (auto r = resolve_invariant(inv, reg_, out_.diagnostics)) {
                out_.model.invariants.push_back(std::move(*r));
            }
        }
        sort_diagnostics(out_.diagnostics);
        return std::move(out_);
    }

private:
    void diag(std::string_view rule, std::string message, const SourceSpan& span,
              Severity sev = Severity::Error) {
        out_.diagnostics.push_back(Diagnostic{sev, std::string(rule), std::move(message), span});
    }

    void add_element(const AstElement& ast, const Element* parent, const dsl::AstDiagram& d,
                     Diagram& diagram) {
        const std::string kw(dsl::element_keyword(ast.kind));
        std::string id = parent ? parent->id + "." + ast.name : ast.name;

        if (parent != nullptr) {
            const auto parent_kind = *dsl::element_kind_from_stereotype(parent->stereotype);
            if (!nesting_allowed(parent_kind, ast.kind)) {
                diag(rules::kIllegalNesting,
                     kw + " '" + ast.name + "' cannot be nested inside " +
                         std::string(dsl::element_keyword(parent_kind)) + " '" + parent->name + "'",
                     ast.span);
                return;
            }
        }
        if (auto it = declared_.find(id); it != declared_.end()) {
            diag(rules::kDuplicateName,
                 "duplicate element name '" + id + "' (first declared at line " +
                     std::to_string(it->second.start_line) + ")",
                 ast.span);
            return;
        }
        declared_.emplace(id, ast.span);

        Element e;
        e.id = id;
        e.name = ast.name;
        e.stereotype = std::string(dsl::element_stereotype(ast.kind));
        e.owner = parent ? std::optional<std::string>(parent->id) : std::nullopt;
        e.diagram_kind = d.kind;
        e.diagram = d.name;
        e.span = ast.span;

        const StereotypeDef* st = reg_.lookup_stereotype(e.stereotype);
        for (const auto& tag : ast.tags) {
            if (e.tags.count(tag.name) != 0) {
                diag(rules::kDuplicateName, "tag '" + tag.name + "' assigned twice on '" + id + "'",
                     tag.span);
                continue;
            }
            if (const TaggedValueDef* def = st->find_tag(tag.name)) {
                std::string why;
                if (auto v = type_tag(*def, tag.value, reg_, why)) {
                    e.tags.emplace(tag.name, std::move(*v));
                } else {
                    diag(rules::kBadTagValue, "tag '" + tag.name + "' on '" + id + "' " + why, tag.span);
                }
            } else if (reg_.lookup_tag(tag.name) != nullptr) {
                diag(rules::kTagNotApplicable,
                     "tag '" + tag.name + "' is not defined for stereotype «" + e.stereotype + "»",
                     tag.span);
            } else {
                e.tags.emplace(tag.name, untyped_tag(tag.value));
            }
        }
        for (const auto& a : ast.attrs) {
            const StereotypeDef* as = reg_.lookup_stereotype(a.stereotype);
            if (as == nullptr || as->extends != Metaclass::Attribute) {
                diag(rules::kUnknownMemberStereotype,
                     "unknown attribute stereotype '" + a.stereotype + "' on '" + id + "." + a.name + "'",
                     a.span);
                continue;
            }
            e.attributes.push_back(Attribute{a.name, a.stereotype, a.value, a.span});
        }
        for (const auto& o : ast.ops) {
            const StereotypeDef* os = reg_.lookup_stereotype(o.stereotype);
            if (os == nullptr || os->extends != Metaclass::Operation) {
                diag(rules::kUnknownMemberStereotype,
                     "unknown operation stereotype '" + o.stereotype + "' on '" + id + "." + o.name + "'",
                     o.span);
                continue;
            }
            e.operations.push_back(Operation{o.name, o.stereotype, o.span});
        }
        for (const auto& ref : ast.tx_refs) {
            if (ast.kind != ElementKind::Block) {
                diag(rules::kIllegalNesting, "'tx' references are only allowed inside blocks", ref.span);
                continue;
            }
            pending_refs_.push_back({id, ref});
        }

        diagram.elements.push_back(id);
        const std::size_t index = out_.model.elements.size();
        out_.model.elements.push_back(std::move(e));
        position_.emplace(id, index);
        if (parent != nullptr) out_.model.elements[position_.at(parent->id)].children.push_back(id);
        // Children take a copy of the parent's identity; `elements` may reallocate.
        const Element self_copy = out_.model.elements[index];
        for (const auto& child : ast.children) add_element(child, &self_copy, d, diagram);
    }

    void resolve_tx_refs() {
        for (const auto& [block_id, ref] : pending_refs_) {
            const Element* target = out_.model.find(ref.name);
            if (target == nullptr) {
                diag(rules::kUnresolvedReference, "unresolved transaction reference '" + ref.name + "'",
                     ref.span);
                continue;
            }
            if (target->stereotype != "Transaction") {
                diag(rules::kUnresolvedReference,
                     "'" + ref.name + "' is a «" + target->stereotype + "», not a «Transaction»", ref.span);
                continue;
            }
            out_.model.elements[position_.at(block_id)].members.push_back(target->id);
        }
    }

    void add_connector(const dsl::AstConnector& c, const std::string& diagram) {
        const std::string src = c.source.joined();
        const std::string dst = c.target.joined();
        bool ok = true;
        for (const auto* path : {&c.source, &c.target}) {
            if (out_.model.find(path->joined()) == nullptr) {
                diag(rules::kUnresolvedReference,
                     "unresolved connector endpoint '" + path->joined() + "'",
                     path->span);
                ok = false;
            }
        }
        if (ok) out_.model.connectors.push_back(Connector{c.kind, src, dst, diagram, c.span});
    }

    const dsl::AstModel& ast_;
    const ProfileRegistry& reg_;
    Resolution out_;
    std::map<std::string, SourceSpan> declared_;
    std::map<std::string, std::size_t> position_;
    std::vector<std::pair<std::string, dsl::AstTxRef>> pending_refs_;
};

}  // namespace

std::optional<std::string> resolve_invariant_context(std::string_view context,
                                                     const ProfileRegistry& registry) {
    if (context == "input") return std::string("AbstractTransactionInput");
    if (auto kind = dsl::element_kind_from_keyword(context)) {
        return std::string(dsl::element_stereotype(*kind));
    }
    if (registry.is_class_stereotype(context)) return std::string(context);
    return std::nullopt;
}

std::optional<Invariant> resolve_invariant(const dsl::AstInvariant& inv,
                                           const ProfileRegistry& registry,
                                           std::vector<Diagnostic>& diags) {
    auto st = resolve_invariant_context(inv.context, registry);
    if (!st) {
        diags.push_back(Diagnostic{Severity::Error, std::string(rules::kUnknownContext),
                                   "invariant '" + inv.name + "' has unknown context '" + inv.context + "'",
                                   inv.span});
        return std::nullopt;
    }
    return Invariant{inv.name, inv.context, *st, inv.expr, inv.span};
}

Resolution resolve(const dsl::AstModel& ast, const ProfileRegistry& registry) {
    return Resolver(ast, registry).run();
}

}  // namespace bitml
