#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "abe/bytes.hpp"
#include "abe/hash.hpp"

namespace abe {

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Attribute universe: ordered attribute names, each with an ordered list of
// possible values. File order defines the indices used everywhere else.
class Universe {
public:
    struct Attribute {
        std::string name;
        std::vector<std::string> values;
    };

    explicit Universe(std::vector<Attribute> attributes);

    std::size_t attr_count() const { return attrs_.size(); }
    const Attribute& attribute(std::size_t i) const { return attrs_.at(i); }
    std::size_t value_count(std::size_t i) const { return attrs_.at(i).values.size(); }
    // Total number of (attribute, value) slots, sum of n_i.
    std::size_t slot_count() const;

    int attr_index(const std::string& name) const;             // -1 if absent
    int value_index(std::size_t attr, const std::string& name) const;

    // One line per attribute: "name: v1, v2". Parsing accepts '#' comments
    // and blank lines; printing is canonical (used for the binding digest).
    static std::shared_ptr<const Universe> parse(const std::string& text);
    std::string canonical_text() const;
    Digest digest() const;

    bool operator==(const Universe& o) const;

private:
    std::vector<Attribute> attrs_;
};

using UniversePtr = std::shared_ptr<const Universe>;

// Total assignment: one value index per universe attribute.
class AttributeList {
public:
    AttributeList(UniversePtr universe, std::vector<std::size_t> value_indices);

    // "dept=cs,level=phd" — every universe attribute must appear exactly once.
    static AttributeList parse(UniversePtr universe, const std::string& text);

    const UniversePtr& universe() const { return universe_; }
    std::size_t value_of(std::size_t attr) const { return values_.at(attr); }
    std::size_t size() const { return values_.size(); }
    std::string to_string() const;

private:
    UniversePtr universe_;
    std::vector<std::size_t> values_;
};

struct PolicyNode {
    enum class Kind { And, Or, Leaf };
    Kind kind = Kind::Leaf;
    std::vector<PolicyNode> children;        // interior nodes, >= 2 children
    std::size_t attr = 0;                    // leaf
    std::set<std::size_t> allowed_values;    // leaf, non-empty

    static PolicyNode leaf(std::size_t attr, std::set<std::size_t> values);
    static PolicyNode and_node(std::vector<PolicyNode> children);
    static PolicyNode or_node(std::vector<PolicyNode> children);

    bool operator==(const PolicyNode& o) const;
};

class Policy {
public:
    Policy(UniversePtr universe, PolicyNode root, bool normalized = false);

    const UniversePtr& universe() const { return universe_; }
    const PolicyNode& root() const { return root_; }
    bool normalized() const { return normalized_; }

    bool operator==(const Policy& o) const;

private:
    UniversePtr universe_;
    PolicyNode root_;
    bool normalized_;
};

// Grammar: OR binds looser than AND; leaves are `attr=value` or
// `attr in {v1, v2}`; parentheses group. Each attribute may appear in at
// most one leaf.
Policy parse_policy(const std::string& text, UniversePtr universe);

// Canonical text; parse_policy(print_policy(w)) is structurally w.
std::string print_policy(const Policy& policy);

bool satisfies(const AttributeList& list, const Policy& policy);

// Adjoins a wildcard leaf (all values allowed) for every attribute the
// policy omits, under the root AND (a new AND root is introduced if needed),
// so every universe attribute appears in exactly one leaf.
Policy normalize(const Policy& policy);

}  // namespace abe
