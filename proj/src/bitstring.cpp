#include "spinsift/bitstring.hpp"

#include <array>

#include "spinsift/errors.hpp"

namespace spinsift {

Bitstring::Bitstring(std::uint64_t index, int size) : word_(index), size_(size) {
    if (size < 0 || size > 64) throw ValidationError("bitstring size out of range: " + std::to_string(size));
    if (size < 64 && (index >> size) != 0)
        throw ValidationError("bitstring index does not fit in " + std::to_string(size) + " bits");
}

Bitstring Bitstring::parse(std::string_view text) {
    if (text.size() > 64) throw ValidationError("bitstring longer than 64 characters");
    Bitstring out;
    out.size_ = static_cast<int>(text.size());
    for (std::size_t j = 0; j < text.size(); ++j) {
        if (text[j] == '1')
            out.word_ |= std::uint64_t{1} << j;
        else if (text[j] != '0')
            throw ValidationError(std::string("bitstring contains non-binary character '") + text[j] + "'");
    }
    return out;
}

void Bitstring::set_bit(int i, int value) {
    if (i < 0 || i >= size_) throw ValidationError("bit index out of range");
    if (value)
        word_ |= std::uint64_t{1} << i;
    else
        word_ &= ~(std::uint64_t{1} << i);
}

std::string Bitstring::str() const {
    std::string s(static_cast<std::size_t>(size_), '0');
    for (int j = 0; j < size_; ++j)
        if (bit(j)) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

std::pair<int, int> group_code(Group g) {
    switch (g) {
        case Group::H: return {1, 0};
        case Group::Me: return {1, 1};
        case Group::CN: return {0, 0};
        case Group::F: return {0, 1};
    }
    throw ValidationError("unknown group");
}

Group group_from_code(int b0, int b1) {
    if (b0) return b1 ? Group::Me : Group::H;
    return b1 ? Group::F : Group::CN;
}

std::string group_label(Group g) {
    switch (g) {
        case Group::H: return "H";
        case Group::Me: return "Me";
        case Group::CN: return "CN";
        case Group::F: return "F";
    }
    throw ValidationError("unknown group");
}

Group group_from_label(std::string_view label) {
    if (label == "H") return Group::H;
    if (label == "Me") return Group::Me;
    if (label == "CN") return Group::CN;
    if (label == "F") return Group::F;
    throw ValidationError("unknown group label '" + std::string(label) + "' (expected H, Me, CN or F)");
}

Bitstring encode_groups(const std::vector<Group>& labels) {
    if (labels.size() > 32) throw ValidationError("too many sites");
    Bitstring out(0, static_cast<int>(2 * labels.size()));
    for (std::size_t s = 0; s < labels.size(); ++s) {
        const auto [b0, b1] = group_code(labels[s]);
        out.set_bit(static_cast<int>(2 * s), b0);
        out.set_bit(static_cast<int>(2 * s + 1), b1);
    }
    return out;
}

std::vector<Group> decode_groups(const Bitstring& x) {
    if (x.size() % 2 != 0) throw ValidationError("bitstring length must be even to decode groups");
    std::vector<Group> out;
    out.reserve(static_cast<std::size_t>(x.size() / 2));
    for (int s = 0; s < x.size() / 2; ++s) out.push_back(group_from_code(x.bit(2 * s), x.bit(2 * s + 1)));
    return out;
}

std::string format_groups(const std::vector<Group>& labels) {
    std::string out;
    for (std::size_t s = 0; s < labels.size(); ++s) {
        if (s) out += '-';
        out += group_label(labels[s]);
    }
    return out;
}

int group_kind_count(const Bitstring& x) {
    std::array<bool, 4> seen{};
    for (Group g : decode_groups(x)) seen[static_cast<std::size_t>(g)] = true;
    int kinds = 0;
    for (bool b : seen) kinds += b ? 1 : 0;
    return kinds;
}

}  // namespace spinsift
