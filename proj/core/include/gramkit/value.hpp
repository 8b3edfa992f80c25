#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gramkit {

struct Attribute;
struct SequenceToken;

/// An attribute value. Five kinds: identifier, string, integer, annotation
/// (a nested attribute block) and a sequence of values and punctuation.
class Value {
public:
    enum class Kind { Identifier, String, Int, Annotation, Sequence };

    static Value identifier(std::string name);
    static Value string(std::string text);
    static Value integer(std::int64_t v);
    static Value annotation(std::vector<Attribute> attributes);
    static Value sequence(std::vector<SequenceToken> tokens);

    Kind kind() const { return kind_; }

    const std::string& identifierName() const { return text_; }
    const std::string& stringText() const { return text_; }
    std::int64_t intValue() const { return int_; }
    const std::vector<Attribute>& attributes() const { return attributes_; }
    const std::vector<SequenceToken>& tokens() const { return tokens_; }

    friend bool operator==(const Value& a, const Value& b);
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

private:
    Kind kind_ = Kind::Identifier;
    std::string text_;
    std::int64_t int_ = 0;
    std::vector<Attribute> attributes_;
    std::vector<SequenceToken> tokens_;
};

/// One element of a sequence value: either a nested Value or a single
/// punctuation character.
struct SequenceToken {
    std::variant<Value, char> item;

    bool isPunct() const { return std::holds_alternative<char>(item); }
    char punct() const { return std::get<char>(item); }
    const Value& value() const { return std::get<Value>(item); }

    friend bool operator==(const SequenceToken& a, const SequenceToken& b);
    friend bool operator!=(const SequenceToken& a, const SequenceToken& b) { return !(a == b); }
};

/// A name-value pair. Flag attributes (`leftRecursive;`) have no value.
struct Attribute {
    std::string name;
    std::optional<Value> value;

    friend bool operator==(const Attribute& a, const Attribute& b);
    friend bool operator!=(const Attribute& a, const Attribute& b) { return !(a == b); }
};

enum class AttachOutcome { Added, Replaced, Unchanged };

/// Ordered set of attributes with unique names. Re-setting an existing name
/// replaces the value in place; new names append.
class AnnotationSet {
public:
    const std::vector<Attribute>& attributes() const { return attrs_; }
    bool empty() const { return attrs_.empty(); }
    std::size_t size() const { return attrs_.size(); }

    const Attribute* find(std::string_view name) const;
    bool has(std::string_view name) const { return find(name) != nullptr; }

    AttachOutcome set(Attribute attr);

    friend bool operator==(const AnnotationSet& a, const AnnotationSet& b) {
        return a.attrs_ == b.attrs_;
    }
    friend bool operator!=(const AnnotationSet& a, const AnnotationSet& b) { return !(a == b); }

private:
    std::vector<Attribute> attrs_;
};

}  // namespace gramkit
