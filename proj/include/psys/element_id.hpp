#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>

#include "psys/error.hpp"

namespace psys {

/// Opaque label of a ground-set element ("H", "Bk", ...). Never empty and
/// free of the separators used by the file formats (comma, colon, whitespace).
class ElementId {
 public:
  ElementId() = delete;
  explicit ElementId(std::string label) : label_(std::move(label)) {
    if (!is_valid_label(label_)) {
      throw Error(ErrorCode::invalid_element_id, "bad element label '" + label_ + "'");
    }
  }
  ElementId(const char* label) : ElementId(std::string(label)) {}

  static bool is_valid_label(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c == ',' || c == ':' || c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
          c == '\v' || c == '\f' || c == '"') {
        return false;
      }
    }
    return true;
  }

  const std::string& str() const noexcept { return label_; }

  friend bool operator==(const ElementId&, const ElementId&) = default;
  friend auto operator<=>(const ElementId&, const ElementId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const ElementId& id) {
    return os << id.label_;
  }

 private:
  std::string label_;
};

using ElementSet = std::set<ElementId>;

}  // namespace psys

template <>
struct std::hash<psys::ElementId> {
  std::size_t operator()(const psys::ElementId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
