#pragma once

#include <cstdint>
#include <functional>

namespace gramkit {

/// Stable identity of one node inside one Grammar. Unique per grammar,
/// preserved by copies, never reused. 0 is "no node".
struct NodeId {
    std::uint32_t value = 0;

    explicit operator bool() const { return value != 0; }
    friend bool operator==(NodeId a, NodeId b) { return a.value == b.value; }
    friend bool operator!=(NodeId a, NodeId b) { return a.value != b.value; }
    friend bool operator<(NodeId a, NodeId b) { return a.value < b.value; }
};

}  // namespace gramkit

template <>
struct std::hash<gramkit::NodeId> {
    std::size_t operator()(gramkit::NodeId id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
