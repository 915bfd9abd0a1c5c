#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spinsift {

// Fixed-length binary word over at most 64 variables.
//
// Text order: character j of the printed string is variable (qubit) j, so the
// LEFTMOST character is qubit 0. Qubit 0 is the least significant bit of the
// basis-state index, i.e. index(x) = sum_j x_j * 2^j. This is the one bit-order
// convention used everywhere: feature vectors, histogram keys, JSON files.
class Bitstring {
  public:
    Bitstring() = default;
    Bitstring(std::uint64_t index, int size);

    // Parses a 0/1 string such as "110011001110".
    static Bitstring parse(std::string_view text);

    int size() const { return size_; }
    std::uint64_t index() const { return word_; }

    int bit(int i) const { return static_cast<int>((word_ >> i) & 1u); }
    void set_bit(int i, int value);

    std::string str() const;

    friend bool operator==(const Bitstring&, const Bitstring&) = default;
    auto operator<=>(const Bitstring&) const = default;

  private:
    std::uint64_t word_ = 0;
    int size_ = 0;
};

// Substituent group carried by one two-bit site.
enum class Group : std::uint8_t { H, Me, CN, F };

// Two-bit site codes: H=10, Me=11, CN=00, F=01 (first char = first bit).
std::pair<int, int> group_code(Group g);
Group group_from_code(int b0, int b1);

std::string group_label(Group g);
Group group_from_label(std::string_view label);

// Concatenates the two-bit codes of `labels` in site order.
Bitstring encode_groups(const std::vector<Group>& labels);

// Inverse of encode_groups; accepts any even-length bitstring.
std::vector<Group> decode_groups(const Bitstring& x);

// "Me-CN-Me-CN-Me-H" style rendering of a decoded bitstring.
std::string format_groups(const std::vector<Group>& labels);

// One row of training data: feature bits and the measured target value.
struct Sample {
    Bitstring x;
    double y = 0.0;
};

// Number of distinct group kinds appearing among the sites of x.
int group_kind_count(const Bitstring& x);

}  // namespace spinsift
