#pragma once
// Crossing-level codes (Gauss, DT) and the group-label text format.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace altknot {

class CodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Sign : std::int8_t { minus = -1, plus = 1 };

inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

// Group identity; sign is an attribute of the group, not part of its name.
struct GroupId {
    int size = 1;
    int index = 1;
    friend auto operator<=>(const GroupId&, const GroupId&) = default;
};

inline constexpr int kNoPosition = -1;

struct Label {
    int size = 1;
    int index = 1;
    Sign sign = Sign::plus;
    int position = kNoPosition;

    GroupId group() const { return {size, index}; }
    int signed_size() const { return sign == Sign::plus ? size : -size; }
    bool has_position() const { return position != kNoPosition; }
    Label without_position() const { return {size, index, sign, kNoPosition}; }

    // Triple order (signed size, index, position).
    friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
        if (auto c = a.signed_size() <=> b.signed_size(); c != 0) return c;
        if (auto c = a.index <=> b.index; c != 0) return c;
        return a.position <=> b.position;
    }
    friend bool operator==(const Label& a, const Label& b) {
        return a.size == b.size && a.index == b.index && a.sign == b.sign &&
               a.position == b.position;
    }
};

using LabelSeq = std::vector<Label>;

// Cyclic code without positions: each group appears exactly twice.
struct GroupCode {
    LabelSeq entries;
    friend bool operator==(const GroupCode&, const GroupCode&) = default;
};

// Cyclic code carrying orbit positions.
struct MasterGroupCode {
    LabelSeq entries;
    friend bool operator==(const MasterGroupCode&, const MasterGroupCode&) = default;
};

struct GaussCode {
    std::vector<int> seq;
    int crossings() const { return static_cast<int>(seq.size() / 2); }
    friend bool operator==(const GaussCode&, const GaussCode&) = default;
};

struct DTCode {
    std::vector<int> evens;
    bool canonical = false;
    friend bool operator==(const DTCode&, const DTCode&) = default;
};

// Text format.
Label parse_label(std::string_view text);
std::string render_label(const Label& l);
std::string render(std::span<const Label> seq);
inline std::string render(const GroupCode& c) { return render(c.entries); }
inline std::string render(const MasterGroupCode& c) { return render(c.entries); }

LabelSeq parse_labels(std::string_view text);
GroupCode parse_group_code(std::string_view text);
MasterGroupCode parse_master_code(std::string_view text);
std::variant<GroupCode, MasterGroupCode> parse_code(std::string_view text);

void validate_group_code(std::span<const Label> seq);
void validate_master_code(std::span<const Label> seq);

int crossing_count(std::span<const Label> seq);
int group_count(std::span<const Label> seq);

GaussCode parse_gauss(std::string_view text);
std::string render(const GaussCode& g);
std::string render(const DTCode& d);
DTCode parse_dt(std::string_view text);
void validate_gauss(const GaussCode& g);

// Group code -> crossing sequence. A positive group is visited in the same
// order on both passes, a negative one in reverse order on the second pass.
GaussCode expand_to_gauss(const GroupCode& code);

// Expansion that remembers where each crossing came from. Crossing ids are
// 1-based; group_of[c] and offset_of[c] give the owning entry's group and the
// crossing's rank along the group's first pass.
struct TracedGauss {
    GaussCode gauss;
    std::vector<GroupId> group_of;
    std::vector<int> offset_of;
};
TracedGauss expand_traced(const GroupCode& code);

// Twist regions from a crossing sequence; indices per size in order of
// first appearance.
GroupCode groups_from_gauss(const GaussCode& g);

DTCode dt_code(const GaussCode& g, bool canonical = true);
DTCode dt_code_at(const GaussCode& g, int start, bool reversed);
GaussCode gauss_from_dt(const DTCode& d);

bool is_realizable(const GaussCode& g);

// Crossings relabelled 1..n in order of first appearance.
GaussCode normalize_gauss(const GaussCode& g);

}  // namespace altknot
