#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bitml {

/// UML metaclasses a BitML stereotype may extend.
enum class Metaclass { Class, Attribute, Operation, Association, Dependency };

std::string_view to_string(Metaclass m);

enum class TagType { Boolean, Integer, String, EnumRef };

struct TaggedValueDef {
    std::string name;
    TagType value_type = TagType::String;
    std::optional<std::string> enum_ref;
    std::optional<std::string> default_value;
    // Restricts the accepted values: enum literals for EnumRef tags, spellings for
    // enum-like string tags. Empty means unrestricted.
    std::vector<std::string> allowed;
    // Holds key material or raw header bytes; exporters redact these on request.
    bool carries_secret_value = false;
};

struct StereotypeDef {
    std::string name;
    std::string alias;
    Metaclass extends = Metaclass::Class;
    std::vector<TaggedValueDef> tagged_values;
    bool named_in_source = false;  // false for names this profile had to supply
    std::optional<std::string> generalizes;  // parent class stereotype, if any

    [[nodiscard]] const TaggedValueDef* find_tag(std::string_view tag) const;
};

struct EnumDef {
    std::string name;
    std::vector<std::string> literals;

    [[nodiscard]] bool has_literal(std::string_view literal) const;
};

enum class ConnectorKind { Spend, Unlock, Pbkdf2, Hmac512, Hash160 };

inline constexpr ConnectorKind kAllConnectorKinds[] = {
    ConnectorKind::Spend, ConnectorKind::Unlock, ConnectorKind::Pbkdf2, ConnectorKind::Hmac512,
    ConnectorKind::Hash160};

std::string_view connector_name(ConnectorKind k);   // "Spend", "HMACSHA512", ...
std::string_view connector_keyword(ConnectorKind k);  // "spend", "hmac512", ...
std::optional<ConnectorKind> connector_from_name(std::string_view name);
std::optional<ConnectorKind> connector_from_keyword(std::string_view keyword);

struct ConnectorDef {
    ConnectorKind kind = ConnectorKind::Spend;
    std::string name;
    Metaclass uml_base = Metaclass::Dependency;
    // Allowed (source, target) class-stereotype pairs. Specializations of either side
    // are accepted as well.
    std::vector<std::pair<std::string, std::string>> allowed_pairs;
    std::string meaning_forwards;
    std::string meaning_backwards;
};

class UnknownStereotype : public std::runtime_error {
public:
    explicit UnknownStereotype(const std::string& name)
        : std::runtime_error("unknown stereotype '" + name + "'"), name_(name) {}
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// The BitML profile: class, attribute, operation and connector stereotypes with their
/// tagged values and enumerations. Immutable once built.
class ProfileRegistry {
public:
    [[nodiscard]] const std::vector<StereotypeDef>& stereotypes() const { return stereotypes_; }
    [[nodiscard]] const std::vector<TaggedValueDef>& tagged_values() const { return tagged_values_; }
    [[nodiscard]] const std::vector<EnumDef>& enums() const { return enums_; }
    [[nodiscard]] const std::vector<ConnectorDef>& connectors() const { return connectors_; }

    /// Case-sensitive lookup across every metaclass.
    [[nodiscard]] const StereotypeDef* lookup_stereotype(std::string_view name) const;
    [[nodiscard]] const EnumDef* lookup_enum(std::string_view name) const;
    [[nodiscard]] const TaggedValueDef* lookup_tag(std::string_view name) const;
    [[nodiscard]] const ConnectorDef& connector(ConnectorKind kind) const;

    [[nodiscard]] std::vector<const StereotypeDef*> stereotypes_of(Metaclass m) const;
    [[nodiscard]] bool is_class_stereotype(std::string_view name) const;

    /// True when `name` equals `base` or is a (transitive) specialization of it.
    [[nodiscard]] bool specializes(std::string_view name, std::string_view base) const;

    /// Whether a connector of `kind` may be drawn from `src` to `dst`.
    /// Throws UnknownStereotype when either name is not in the registry.
    [[nodiscard]] bool connector_endpoints_allowed(ConnectorKind kind, std::string_view src,
                                                   std::string_view dst) const;

private:
    friend ProfileRegistry build_registry();

    std::vector<StereotypeDef> stereotypes_;
    std::vector<TaggedValueDef> tagged_values_;
    std::vector<EnumDef> enums_;
    std::vector<ConnectorDef> connectors_;
    std::map<std::string, std::size_t, std::less<>> stereotype_index_;
};

/// Builds the full registry and self-checks its cardinalities; a failed self-check
/// aborts the process.
ProfileRegistry build_registry();

/// Process-wide registry instance, built on first use.
const ProfileRegistry& bitml_profile();

// Tag names shared across modules.
namespace tags {
inline constexpr std::string_view kWallet = "Wallet";
inline constexpr std::string_view kMiner = "Miner";
inline constexpr std::string_view kFullBlockchain = "FullBlockchain";
inline constexpr std::string_view kNetworkRouting = "NetworkRouting";
inline constexpr std::string_view kStratumNode = "StratumNode";
inline constexpr std::string_view kStratumServer = "StratumServer";
inline constexpr std::string_view kPoolServer = "PoolServer";
inline constexpr std::string_view kProtocol = "Protocol";
inline constexpr std::string_view kMiningType = "MiningType";
inline constexpr std::string_view kMnemonicWords = "MnemonicWords";
inline constexpr std::string_view kPassphrase = "Passphrase";
inline constexpr std::string_view kSeedHex = "SeedHex";
inline constexpr std::string_view kKeyHex = "KeyHex";
inline constexpr std::string_view kChainCodeHex = "ChainCodeHex";
inline constexpr std::string_view kAddressBase58 = "AddressBase58";
inline constexpr std::string_view kHeaderHex = "HeaderHex";

inline constexpr std::string_view kNodeRoles[] = {kWallet,      kMiner,         kFullBlockchain,
                                                  kNetworkRouting, kStratumNode, kStratumServer,
                                                  kPoolServer};
}  // namespace tags

}  // namespace bitml
