#include "forcing_lab/binary_string.hpp"

#include "forcing_lab/error.hpp"

namespace forcing_lab {

namespace {

std::uint64_t low_mask(int length) {
  return length >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << length) - 1);
}

void check_length(int length) {
  if (length < 0 || length > BinaryString::kMaxLength) {
    throw Error(ErrorKind::CapacityExceeded,
                "binary string length " + std::to_string(length) + " outside [0,64]");
  }
}

}  // namespace

BinaryString BinaryString::from_index(std::uint64_t value, int length) {
  check_length(length);
  if ((value & ~low_mask(length)) != 0) {
    throw Error(ErrorKind::ParseError, "index does not fit the requested length");
  }
  return BinaryString(value, length);
}

BinaryString BinaryString::parse(std::string_view text) {
  check_length(static_cast<int>(text.size()));
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::ParseError, "binary string contains '" + std::string(1, c) + "'");
    }
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return BinaryString(bits, static_cast<int>(text.size()));
}

int BinaryString::bit(int position) const {
  return static_cast<int>((bits_ >> (length_ - 1 - position)) & 1U);
}

BinaryString BinaryString::child(int b) const {
  check_length(length_ + 1);
  return BinaryString((bits_ << 1) | static_cast<std::uint64_t>(b & 1), length_ + 1);
}

BinaryString BinaryString::prefix(int length) const {
  if (length < 0 || length > length_) {
    throw Error(ErrorKind::PreconditionFailed, "prefix length out of range");
  }
  if (length == 0) return {};
  return BinaryString(bits_ >> (length_ - length), length);
}

BinaryString BinaryString::concat(const BinaryString& tail) const {
  check_length(length_ + tail.length_);
  if (tail.length_ == 0) return *this;
  std::uint64_t head = tail.length_ >= 64 ? 0 : (bits_ << tail.length_);
  return BinaryString(head | tail.bits_, length_ + tail.length_);
}

bool BinaryString::is_prefix_of(const BinaryString& other) const {
  if (length_ > other.length_) return false;
  if (length_ == 0) return true;
  return (other.bits_ >> (other.length_ - length_)) == bits_;
}

std::string BinaryString::to_string() const {
  std::string out(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i) {
    if (bit(i)) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

std::strong_ordering operator<=>(const BinaryString& a, const BinaryString& b) {
  int common = a.length_ < b.length_ ? a.length_ : b.length_;
  std::uint64_t pa = common == 0 ? 0 : (a.bits_ >> (a.length_ - common));
  std::uint64_t pb = common == 0 ? 0 : (b.bits_ >> (b.length_ - common));
  if (pa != pb) return pa <=> pb;
  return a.length_ <=> b.length_;
}

}  // namespace forcing_lab
