#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace forcing_lab {

// A finite 0/1 word of length at most 64, stored as the integer whose binary
// expansion (most significant bit first) spells the word. The empty word
// names the root cylinder.
class BinaryString {
 public:
  static constexpr int kMaxLength = 64;

  BinaryString() = default;
  static BinaryString from_index(std::uint64_t value, int length);
  static BinaryString parse(std::string_view text);

  int length() const { return length_; }
  bool empty() const { return length_ == 0; }
  std::uint64_t index() const { return bits_; }
  int bit(int position) const;

  BinaryString child(int bit) const;
  BinaryString prefix(int length) const;
  BinaryString parent() const { return prefix(length_ - 1); }
  BinaryString concat(const BinaryString& tail) const;

  bool is_prefix_of(const BinaryString& other) const;
  bool compatible_with(const BinaryString& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }

  std::string to_string() const;

  friend bool operator==(const BinaryString&, const BinaryString&) = default;
  // Lexicographic order on words: a proper prefix sorts before its extensions.
  friend std::strong_ordering operator<=>(const BinaryString& a, const BinaryString& b);

 private:
  BinaryString(std::uint64_t bits, int length) : bits_(bits), length_(length) {}
  std::uint64_t bits_ = 0;
  int length_ = 0;
};

struct BinaryStringHash {
  std::size_t operator()(const BinaryString& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.index() * 0x9e3779b97f4a7c15ULL + static_cast<unsigned>(s.length()));
  }
};

}  // namespace forcing_lab
