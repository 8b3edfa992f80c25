#include "gramkit/value.hpp"

#include <algorithm>
#include <utility>

namespace gramkit {

Value Value::identifier(std::string name) {
    Value v;
    v.kind_ = Kind::Identifier;
    v.text_ = std::move(name);
    return v;
}

Value Value::string(std::string text) {
    Value v;
    v.kind_ = Kind::String;
    v.text_ = std::move(text);
    return v;
}

Value Value::integer(std::int64_t n) {
    Value v;
    v.kind_ = Kind::Int;
    v.int_ = n;
    return v;
}

Value Value::annotation(std::vector<Attribute> attributes) {
    Value v;
    v.kind_ = Kind::Annotation;
    v.attributes_ = std::move(attributes);
    return v;
}

Value Value::sequence(std::vector<SequenceToken> tokens) {
    Value v;
    v.kind_ = Kind::Sequence;
    v.tokens_ = std::move(tokens);
    return v;
}

bool operator==(const Value& a, const Value& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case Value::Kind::Identifier:
        case Value::Kind::String: return a.text_ == b.text_;
        case Value::Kind::Int: return a.int_ == b.int_;
        case Value::Kind::Annotation: return a.attributes_ == b.attributes_;
        case Value::Kind::Sequence: return a.tokens_ == b.tokens_;
    }
    return false;
}

bool operator==(const SequenceToken& a, const SequenceToken& b) {
    return a.item == b.item;
}

bool operator==(const Attribute& a, const Attribute& b) {
    return a.name == b.name && a.value == b.value;
}

const Attribute* AnnotationSet::find(std::string_view name) const {
    for (const auto& a : attrs_)
        if (a.name == name) return &a;
    return nullptr;
}

AttachOutcome AnnotationSet::set(Attribute attr) {
    for (auto& a : attrs_) {
        if (a.name == attr.name) {
            if (a.value == attr.value) return AttachOutcome::Unchanged;
            a.value = std::move(attr.value);
            return AttachOutcome::Replaced;
        }
    }
    attrs_.push_back(std::move(attr));
    return AttachOutcome::Added;
}

}  // namespace gramkit
