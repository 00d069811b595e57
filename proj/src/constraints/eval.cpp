#include "bitml/constraints/eval.hpp"

#include <algorithm>

namespace bitml::constraints {

namespace {

struct EvalError {
    std::string message;
};

Value from_literal(const Literal& lit) {
    switch (lit.kind) {
        case Literal::Kind::Integer:
        case Literal::Kind::Hex: return Value(*lit.as_u256());
        case Literal::Kind::String: return Value(lit.text);
        case Literal::Kind::Ident: return Value(EnumValue{lit.text});
        case Literal::Kind::Boolean: return Value(lit.text == "true");
    }
    return Value(Absent{});
}

Value from_tag(const TagValue& tag) {
    return std::visit(
        [](const auto& x) -> Value {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::uint64_t>) return Value(U256(x));
            else return Value(x);
        },
        tag);
}

std::string type_name(const Value& v) {
    switch (v.data.index()) {
        case 0: return "absent";
        case 1: return "integer";
        case 2: return "boolean";
        case 3: return "string";
        case 4: return "enumeration literal";
        case 5: return "element";
        case 6: return "collection";
    }
    return "value";
}

// Text of a string or enum literal, for mixed string/enum equality.
const std::string* textual(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v.data)) return s;
    if (const auto* e = std::get_if<EnumValue>(&v.data)) return &e->literal;
    return nullptr;
}

class Evaluator {
public:
    Evaluator(const Element& self, const Model& model, const ProfileRegistry& reg)
        : self_(self), model_(model), reg_(reg) {}

    Evaluation run(const Expr& e) {
        Evaluation out;
        try {
            out.value = eval(e);
        } catch (const EvalError& err) {
            out.value = Absent{};
            out.error = err.message;
        }
        out.absent_reasons = std::move(absent_reasons_);
        return out;
    }

private:
    Value absent(std::string why) {
        absent_reasons_.push_back(std::move(why));
        return Absent{};
    }

    [[noreturn]] static void fail(std::string message) { throw EvalError{std::move(message)}; }

    static const Element& element_of(const Value& v, std::string_view what) {
        const auto* ref = std::get_if<ElementRef>(&v.data);
        if (ref == nullptr || ref->element == nullptr) {
            fail("'" + std::string(what) + "' needs an element, found " + type_name(v));
        }
        return *ref->element;
    }

    Value eval(const Expr& e) {
        return std::visit([&](const auto& n) { return eval_node(n); }, e.node);
    }

    Value eval_node(const IntLiteral& n) { return n.value; }
    Value eval_node(const StringLiteral& n) { return n.value; }
    Value eval_node(const BoolLiteral& n) { return n.value; }
    Value eval_node(const SelfRef&) { return ElementRef{&self_}; }

    Value eval_node(const IteratorRef&) {
        if (iterators_.empty()) fail("'it' used outside forAll/exists");
        return iterators_.back();
    }

    Value eval_node(const NameRef& n) {
        if (const TagValue* t = self_.tag(n.name)) return from_tag(*t);
        for (const auto& en : reg_.enums()) {
            if (en.has_literal(n.name)) return EnumValue{n.name};
        }
        return absent("'" + self_.id + "' has no tag '" + n.name + "'");
    }

    Value eval_node(const Navigation& n) {
        const Value source = eval(*n.source);
        if (source.is_absent()) return Absent{};
        const Element& e = element_of(source, n.name);
        if (!n.is_call) return read_member(e, n.name);
        return navigate(e, n);
    }

    Value read_member(const Element& e, const std::string& name) {
        if (const Attribute* a = e.attribute(name)) {
            if (!a->value) return absent("attribute '" + e.id + "." + name + "' has no value");
            return from_literal(*a->value);
        }
        if (const TagValue* t = e.tag(name)) return from_tag(*t);
        return absent("'" + e.id + "' has no attribute '" + name + "'");
    }

    Collection refs(const std::vector<const Element*>& elements) const {
        Collection out;
        for (const Element* el : elements) out.emplace_back(ElementRef{el});
        return out;
    }

    void require(const Element& e, std::string_view stereotype, const Navigation& n) const {
        if (!reg_.specializes(e.stereotype, stereotype)) {
            fail(n.name + "() applies to «" + std::string(stereotype) + "», not «" + e.stereotype + "» '" +
                 e.id + "'");
        }
    }

    Value navigate(const Element& e, const Navigation& n) {
        if (n.name == "tag") {
            if (n.args.size() != 1) fail("tag() takes exactly one tag name");
            if (const TagValue* t = e.tag(n.args[0])) return from_tag(*t);
            return absent("'" + e.id + "' has no tag '" + n.args[0] + "'");
        }
        if (!n.args.empty()) fail(n.name + "() takes no arguments");

        if (n.name == "inputs" || n.name == "outputs") {
            require(e, "Transaction", n);
            const std::string_view want = n.name == "inputs" ? "AbstractTransactionInput" : "TransactionOutput";
            std::vector<const Element*> items;
            for (const Element* c : model_.children_of(e)) {
                if (reg_.specializes(c->stereotype, want)) items.push_back(c);
            }
            return refs(items);
        }
        if (n.name == "tx") {
            const Element* owner = e.owner ? model_.find(*e.owner) : nullptr;
            if (owner == nullptr || owner->stereotype != "Transaction") {
                fail("tx() applies to transaction inputs and outputs, not '" + e.id + "'");
            }
            return ElementRef{owner};
        }
        if (n.name == "spends") {
            require(e, "AbstractTransactionInput", n);
            for (const Connector* c : model_.incoming(e.id, ConnectorKind::Spend)) {
                const Element* src = model_.find(c->source);
                if (src && src->stereotype == "TransactionOutput") return ElementRef{src};
            }
            return absent("input '" + e.id + "' spends no output");
        }
        if (n.name == "spenders") {
            require(e, "TransactionOutput", n);
            std::vector<const Element*> items;
            for (const Connector* c : model_.outgoing(e.id, ConnectorKind::Spend)) {
                if (const Element* dst = model_.find(c->target)) items.push_back(dst);
            }
            return refs(items);
        }
        if (n.name == "header") {
            require(e, "Block", n);
            for (const Element* c : model_.children_of(e)) {
                if (c->stereotype == "BlockHeader") return ElementRef{c};
            }
            return absent("block '" + e.id + "' has no header");
        }
        if (n.name == "transactions") {
            require(e, "Block", n);
            std::vector<const Element*> items;
            for (const auto& id : e.members) {
                if (const Element* tx = model_.find(id)) items.push_back(tx);
            }
            return refs(items);
        }
        fail("unknown navigation '" + n.name + "()'");
    }

    Value eval_node(const CollectionCall& n) {
        const Value source = eval(*n.source);
        if (source.is_absent()) return Absent{};
        Collection items;
        if (const auto* c = std::get_if<Collection>(&source.data)) items = *c;
        else items.push_back(source);  // a single object behaves as a one-element collection

        switch (n.op) {
            case CollectionOp::Size: return U256(items.size());
            case CollectionOp::IsEmpty: return items.empty();
            case CollectionOp::NotEmpty: return !items.empty();
            case CollectionOp::ForAll:
            case CollectionOp::Exists: {
                const bool for_all = n.op == CollectionOp::ForAll;
                bool saw_absent = false;
                for (const auto& item : items) {
                    iterators_.push_back(item);
                    Value r;
                    try {
                        r = eval(*n.body);
                    } catch (...) {
                        iterators_.pop_back();
                        throw;
                    }
                    iterators_.pop_back();
                    if (r.is_absent()) {
                        saw_absent = true;
                        continue;
                    }
                    const bool* b = r.as_bool();
                    if (b == nullptr) fail(std::string(to_string(n.op)) + " body must be boolean, found " + type_name(r));
                    if (*b != for_all) return !for_all;
                }
                if (saw_absent) return Absent{};
                return for_all;
            }
        }
        return Absent{};
    }

    static const bool& boolean(const Value& v, std::string_view op) {
        const bool* b = v.as_bool();
        if (b == nullptr) fail("'" + std::string(op) + "' needs a boolean, found " + type_name(v));
        return *b;
    }

    Value eval_node(const Unary& n) {
        const Value v = eval(*n.operand);
        if (v.is_absent()) return Absent{};
        if (n.op == UnaryOp::Not) return !boolean(v, "not");
        const U256* i = v.as_int();
        if (i == nullptr) fail("unary '-' needs an integer, found " + type_name(v));
        if (*i != 0) fail("negation of " + i->str() + " leaves the unsigned domain");
        return U256(0);
    }

    Value eval_node(const Binary& n) {
        switch (n.op) {
            case BinaryOp::And: return logical(n, false);
            case BinaryOp::Or: return logical(n, true);
            case BinaryOp::Implies: {
                const Value l = eval(*n.lhs);
                if (!l.is_absent() && !boolean(l, "implies")) return true;
                const Value r = eval(*n.rhs);
                if (r.is_absent()) return Absent{};
                const bool rb = boolean(r, "implies");
                if (l.is_absent()) return rb ? Value(true) : Value(Absent{});
                return rb;
            }
            default: break;
        }
        const Value l = eval(*n.lhs);
        const Value r = eval(*n.rhs);
        if (l.is_absent() || r.is_absent()) return Absent{};
        switch (n.op) {
            case BinaryOp::Eq: return equal(l, r);
            case BinaryOp::Ne: return !equal(l, r);
            case BinaryOp::Lt: case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge:
                return compare(n.op, l, r);
            default: return arithmetic(n.op, l, r);
        }
    }

    // `and` short-circuits on false, `or` on true. An absent left side is decided by
    // the right side when it is the dominating value.
    Value logical(const Binary& n, bool dominant) {
        const std::string_view op = dominant ? "or" : "and";
        const Value l = eval(*n.lhs);
        if (!l.is_absent() && boolean(l, op) == dominant) return dominant;
        const Value r = eval(*n.rhs);
        if (r.is_absent()) return Absent{};
        const bool rb = boolean(r, op);
        if (l.is_absent()) return rb == dominant ? Value(dominant) : Value(Absent{});
        return rb;
    }

    static bool equal(const Value& l, const Value& r) {
        if (l.data.index() == r.data.index()) {
            if (std::holds_alternative<Collection>(l.data)) fail("collections cannot be compared with '='");
            return l == r;
        }
        const std::string* ls = textual(l);
        const std::string* rs = textual(r);
        if (ls && rs) return *ls == *rs;
        fail("cannot compare " + type_name(l) + " with " + type_name(r));
    }

    static bool compare(BinaryOp op, const Value& l, const Value& r) {
        const U256* a = l.as_int();
        const U256* b = r.as_int();
        if (!a || !b) {
            fail("'" + std::string(to_string(op)) + "' needs integers, found " + type_name(l) + " and " +
                 type_name(r));
        }
        switch (op) {
            case BinaryOp::Lt: return *a < *b;
            case BinaryOp::Le: return *a <= *b;
            case BinaryOp::Gt: return *a > *b;
            default: return *a >= *b;
        }
    }

    static Value arithmetic(BinaryOp op, const Value& l, const Value& r) {
        const U256* a = l.as_int();
        const U256* b = r.as_int();
        if (!a || !b) {
            fail("'" + std::string(to_string(op)) + "' needs integers, found " + type_name(l) + " and " +
                 type_name(r));
        }
        try {
            switch (op) {
                case BinaryOp::Add: return U256(*a + *b);
                case BinaryOp::Sub:
                    if (*b > *a) fail("subtraction " + a->str() + " - " + b->str() + " leaves the unsigned domain");
                    return U256(*a - *b);
                case BinaryOp::Mul: return U256(*a * *b);
                case BinaryOp::Div:
                    if (*b == 0) fail("division by zero");
                    return U256(*a / *b);
                default: break;
            }
        } catch (const std::overflow_error&) {
            fail("arithmetic overflow");
        } catch (const std::range_error&) {
            fail("arithmetic overflow");
        }
        fail("unsupported operator");
    }

    const Element& self_;
    const Model& model_;
    const ProfileRegistry& reg_;
    std::vector<Value> iterators_;
    std::vector<std::string> absent_reasons_;
};

}  // namespace

std::string describe(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Absent>) return "absent";
            else if constexpr (std::is_same_v<T, U256>) return x.str();
            else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>) return "\"" + x + "\"";
            else if constexpr (std::is_same_v<T, EnumValue>) return x.literal;
            else if constexpr (std::is_same_v<T, ElementRef>) return x.element ? x.element->id : "null";
            else {
                std::string out = "{";
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (i) out += ", ";
                    out += describe(x[i]);
                }
                return out + "}";
            }
        },
        v.data);
}

Evaluation evaluate(const Expr& expr, const Element& context, const Model& model,
                    const ProfileRegistry& registry) {
    return Evaluator(context, model, registry).run(expr);
}

Value eval(const Expr& expr, const Element& context, const Model& model) {
    return evaluate(expr, context, model).value;
}

}  // namespace bitml::constraints
