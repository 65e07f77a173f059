#include "abe/policy.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace abe {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool valid_ident(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_ident_char);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

Universe::Universe(std::vector<Attribute> attributes) : attrs_(std::move(attributes)) {
    if (attrs_.empty()) throw Error("universe has no attributes");
    std::set<std::string> names;
    for (const auto& a : attrs_) {
        if (!valid_ident(a.name)) throw Error("invalid attribute name: " + a.name);
        if (!names.insert(a.name).second)
            throw Error("duplicate attribute name: " + a.name);
        if (a.values.empty())
            throw Error("attribute has no values: " + a.name);
        std::set<std::string> vals;
        for (const auto& v : a.values) {
            if (!valid_ident(v)) throw Error("invalid value name: " + v);
            if (!vals.insert(v).second)
                throw Error("duplicate value " + v + " for attribute " + a.name);
        }
    }
}

std::size_t Universe::slot_count() const {
    std::size_t n = 0;
    for (const auto& a : attrs_) n += a.values.size();
    return n;
}

int Universe::attr_index(const std::string& name) const {
    for (std::size_t i = 0; i < attrs_.size(); ++i)
        if (attrs_[i].name == name) return static_cast<int>(i);
    return -1;
}

int Universe::value_index(std::size_t attr, const std::string& name) const {
    const auto& vals = attrs_.at(attr).values;
    for (std::size_t t = 0; t < vals.size(); ++t)
        if (vals[t] == name) return static_cast<int>(t);
    return -1;
}

UniversePtr Universe::parse(const std::string& text) {
    std::vector<Attribute> attrs;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw FormatError("universe line missing ':': " + line);
        Attribute a;
        a.name = trim(line.substr(0, colon));
        for (const auto& v : split(line.substr(colon + 1), ','))
            a.values.push_back(trim(v));
        attrs.push_back(std::move(a));
    }
    return std::make_shared<const Universe>(std::move(attrs));
}

std::string Universe::canonical_text() const {
    std::string out;
    for (const auto& a : attrs_) {
        out += a.name;
        out += ": ";
        for (std::size_t t = 0; t < a.values.size(); ++t) {
            if (t) out += ", ";
            out += a.values[t];
        }
        out += '\n';
    }
    return out;
}

Digest Universe::digest() const {
    std::string text = canonical_text();
    return sha256({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

bool Universe::operator==(const Universe& o) const {
    if (attrs_.size() != o.attrs_.size()) return false;
    for (std::size_t i = 0; i < attrs_.size(); ++i)
        if (attrs_[i].name != o.attrs_[i].name || attrs_[i].values != o.attrs_[i].values)
            return false;
    return true;
}

AttributeList::AttributeList(UniversePtr universe, std::vector<std::size_t> value_indices)
    : universe_(std::move(universe)), values_(std::move(value_indices)) {
    if (values_.size() != universe_->attr_count())
        throw Error("attribute list must assign every universe attribute");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] >= universe_->value_count(i))
            throw Error("value index out of range for attribute " +
                        universe_->attribute(i).name);
}

AttributeList AttributeList::parse(UniversePtr universe, const std::string& text) {
    std::vector<int> assigned(universe->attr_count(), -1);
    for (const auto& part : split(text, ',')) {
        auto item = trim(part);
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("attribute assignment missing '=': " + item);
        auto name = trim(item.substr(0, eq));
        auto value = trim(item.substr(eq + 1));
        int i = universe->attr_index(name);
        if (i < 0) throw Error("unknown attribute: " + name);
        if (assigned[i] >= 0) throw Error("attribute assigned twice: " + name);
        int t = universe->value_index(i, value);
        if (t < 0) throw Error("unknown value " + value + " for attribute " + name);
        assigned[i] = t;
    }
    std::vector<std::size_t> values;
    for (std::size_t i = 0; i < assigned.size(); ++i) {
        if (assigned[i] < 0)
            throw Error("attribute list incomplete: missing " +
                        universe->attribute(i).name);
        values.push_back(static_cast<std::size_t>(assigned[i]));
    }
    return {std::move(universe), std::move(values)};
}

std::string AttributeList::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += ",";
        out += universe_->attribute(i).name;
        out += "=";
        out += universe_->attribute(i).values[values_[i]];
    }
    return out;
}

PolicyNode PolicyNode::leaf(std::size_t attr, std::set<std::size_t> values) {
    if (values.empty()) throw Error("leaf with empty value set");
    PolicyNode n;
    n.kind = Kind::Leaf;
    n.attr = attr;
    n.allowed_values = std::move(values);
    return n;
}

PolicyNode PolicyNode::and_node(std::vector<PolicyNode> children) {
    if (children.size() < 2) throw Error("AND node needs at least 2 children");
    PolicyNode n;
    n.kind = Kind::And;
    n.children = std::move(children);
    return n;
}

PolicyNode PolicyNode::or_node(std::vector<PolicyNode> children) {
    if (children.size() < 2) throw Error("OR node needs at least 2 children");
    PolicyNode n;
    n.kind = Kind::Or;
    n.children = std::move(children);
    return n;
}

bool PolicyNode::operator==(const PolicyNode& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Leaf)
        return attr == o.attr && allowed_values == o.allowed_values;
    return children == o.children;
}

namespace {

void collect_attrs(const PolicyNode& node, std::set<std::size_t>& seen,
                   const Universe& universe) {
    if (node.kind == PolicyNode::Kind::Leaf) {
        if (node.attr >= universe.attr_count())
            throw Error("leaf attribute index out of range");
        for (auto t : node.allowed_values)
            if (t >= universe.value_count(node.attr))
                throw Error("leaf value index out of range");
        if (!seen.insert(node.attr).second)
            throw Error("attribute appears in more than one leaf: " +
                        universe.attribute(node.attr).name);
        return;
    }
    if (node.children.size() < 2)
        throw Error("interior node needs at least 2 children");
    for (const auto& c : node.children) collect_attrs(c, seen, universe);
}

}  // namespace

Policy::Policy(UniversePtr universe, PolicyNode root, bool normalized)
    : universe_(std::move(universe)), root_(std::move(root)), normalized_(normalized) {
    std::set<std::size_t> seen;
    collect_attrs(root_, seen, *universe_);
    if (normalized_ && seen.size() != universe_->attr_count())
        throw Error("normalized policy must cover every attribute");
}

bool Policy::operator==(const Policy& o) const {
    return *universe_ == *o.universe_ && root_ == o.root_;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    enum class Kind { Ident, KwAnd, KwOr, KwIn, LParen, RParen, LBrace, RBrace,
                      Comma, Eq, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::Kind::End, "", start};
            return;
        }
        char c = src_[pos_];
        if (is_ident_char(c)) {
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
            std::string word = src_.substr(start, pos_ - start);
            Token::Kind k = Token::Kind::Ident;
            if (word == "AND") k = Token::Kind::KwAnd;
            else if (word == "OR") k = Token::Kind::KwOr;
            else if (word == "in") k = Token::Kind::KwIn;
            tok_ = {k, std::move(word), start};
            return;
        }
        ++pos_;
        switch (c) {
            case '(': tok_ = {Token::Kind::LParen, "(", start}; return;
            case ')': tok_ = {Token::Kind::RParen, ")", start}; return;
            case '{': tok_ = {Token::Kind::LBrace, "{", start}; return;
            case '}': tok_ = {Token::Kind::RBrace, "}", start}; return;
            case ',': tok_ = {Token::Kind::Comma, ",", start}; return;
            case '=': tok_ = {Token::Kind::Eq, "=", start}; return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token tok_{Token::Kind::End, "", 0};
};

class Parser {
public:
    Parser(const std::string& src, const Universe& universe)
        : lex_(src), universe_(universe) {}

    PolicyNode parse() {
        PolicyNode root = or_expr();
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError("trailing input", lex_.peek().pos);
        return root;
    }

private:
    PolicyNode or_expr() {
        std::vector<PolicyNode> children;
        children.push_back(and_expr());
        while (lex_.peek().kind == Token::Kind::KwOr) {
            lex_.next();
            children.push_back(and_expr());
        }
        if (children.size() == 1) return std::move(children[0]);
        return PolicyNode::or_node(std::move(children));
    }

    PolicyNode and_expr() {
        std::vector<PolicyNode> children;
        children.push_back(term());
        while (lex_.peek().kind == Token::Kind::KwAnd) {
            lex_.next();
            children.push_back(term());
        }
        if (children.size() == 1) return std::move(children[0]);
        return PolicyNode::and_node(std::move(children));
    }

    PolicyNode term() {
        if (lex_.peek().kind == Token::Kind::LParen) {
            lex_.next();
            PolicyNode inner = or_expr();
            expect(Token::Kind::RParen, "')'");
            return inner;
        }
        return leaf();
    }

    PolicyNode leaf() {
        Token name = expect(Token::Kind::Ident, "attribute name");
        int attr = universe_.attr_index(name.text);
        if (attr < 0)
            throw ParseError("unknown attribute '" + name.text + "'", name.pos);
        std::set<std::size_t> values;
        if (lex_.peek().kind == Token::Kind::Eq) {
            lex_.next();
            values.insert(value_index(attr));
        } else if (lex_.peek().kind == Token::Kind::KwIn) {
            lex_.next();
            expect(Token::Kind::LBrace, "'{'");
            values.insert(value_index(attr));
            while (lex_.peek().kind == Token::Kind::Comma) {
                lex_.next();
                values.insert(value_index(attr));
            }
            expect(Token::Kind::RBrace, "'}'");
        } else {
            throw ParseError("expected '=' or 'in'", lex_.peek().pos);
        }
        return PolicyNode::leaf(static_cast<std::size_t>(attr), std::move(values));
    }

    std::size_t value_index(int attr) {
        Token v = expect(Token::Kind::Ident, "value name");
        int t = universe_.value_index(static_cast<std::size_t>(attr), v.text);
        if (t < 0)
            throw ParseError("unknown value '" + v.text + "' for attribute '" +
                                 universe_.attribute(attr).name + "'",
                             v.pos);
        return static_cast<std::size_t>(t);
    }

    Token expect(Token::Kind kind, const std::string& what) {
        if (lex_.peek().kind != kind)
            throw ParseError("expected " + what, lex_.peek().pos);
        return lex_.next();
    }

    Lexer lex_;
    const Universe& universe_;
};

}  // namespace

Policy parse_policy(const std::string& text, UniversePtr universe) {
    Parser parser(text, *universe);
    PolicyNode root = parser.parse();
    // Policy ctor re-walks the tree and rejects duplicate-attribute leaves.
    return Policy(std::move(universe), std::move(root));
}

namespace {

void print_node(const PolicyNode& node, const Universe& universe, std::string& out) {
    switch (node.kind) {
        case PolicyNode::Kind::Leaf: {
            const auto& a = universe.attribute(node.attr);
            out += a.name;
            if (node.allowed_values.size() == 1) {
                out += "=";
                out += a.values[*node.allowed_values.begin()];
            } else {
                out += " in {";
                bool first = true;
                for (auto t : node.allowed_values) {
                    if (!first) out += ", ";
                    first = false;
                    out += a.values[t];
                }
                out += "}";
            }
            return;
        }
        case PolicyNode::Kind::And:
        case PolicyNode::Kind::Or: {
            const char* sep = node.kind == PolicyNode::Kind::And ? " AND " : " OR ";
            bool first = true;
            for (const auto& c : node.children) {
                if (!first) out += sep;
                first = false;
                // Parenthesize interior children so reparsing keeps the
                // exact tree (no flattening, no precedence capture).
                bool parens = c.kind != PolicyNode::Kind::Leaf;
                if (parens) out += "(";
                print_node(c, universe, out);
                if (parens) out += ")";
            }
            return;
        }
    }
}

}  // namespace

std::string print_policy(const Policy& policy) {
    std::string out;
    print_node(policy.root(), *policy.universe(), out);
    return out;
}

namespace {

bool satisfies_node(const AttributeList& list, const PolicyNode& node) {
    switch (node.kind) {
        case PolicyNode::Kind::Leaf:
            return node.allowed_values.count(list.value_of(node.attr)) > 0;
        case PolicyNode::Kind::And:
            for (const auto& c : node.children)
                if (!satisfies_node(list, c)) return false;
            return true;
        case PolicyNode::Kind::Or:
            for (const auto& c : node.children)
                if (satisfies_node(list, c)) return true;
            return false;
    }
    return false;
}

}  // namespace

bool satisfies(const AttributeList& list, const Policy& policy) {
    if (!(*list.universe() == *policy.universe()))
        throw ParamsMismatchError("attribute list and policy universes differ");
    return satisfies_node(list, policy.root());
}

Policy normalize(const Policy& policy) {
    const auto& universe = *policy.universe();
    std::set<std::size_t> seen;
    collect_attrs(policy.root(), seen, universe);

    std::vector<PolicyNode> wildcards;
    for (std::size_t i = 0; i < universe.attr_count(); ++i) {
        if (seen.count(i)) continue;
        std::set<std::size_t> all;
        for (std::size_t t = 0; t < universe.value_count(i); ++t) all.insert(t);
        wildcards.push_back(PolicyNode::leaf(i, std::move(all)));
    }

    if (wildcards.empty())
        return Policy(policy.universe(), policy.root(), /*normalized=*/true);

    PolicyNode root = policy.root();
    if (root.kind == PolicyNode::Kind::And) {
        for (auto& w : wildcards) root.children.push_back(std::move(w));
    } else {
        std::vector<PolicyNode> children;
        children.push_back(std::move(root));
        for (auto& w : wildcards) children.push_back(std::move(w));
        root = PolicyNode::and_node(std::move(children));
    }
    return Policy(policy.universe(), std::move(root), /*normalized=*/true);
}

}  // namespace abe
