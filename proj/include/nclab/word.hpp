#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nclab {

/// A word over the letters {1, ..., d}; the empty word is the monoid unit.
/// Words are immutable value objects, ordered degree-lexicographically
/// (length first, then letterwise with 1 < 2 < ... < d).
class Word {
public:
    Word() = default;
    explicit Word(std::vector<int> letters);

    /// Parses a digit string such as "121"; usable only when d <= 9.
    /// The empty string is the unit.
    static Word from_digits(std::string_view digits);

    int length() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }
    const std::vector<int>& letters() const { return letters_; }
    int letter(int i) const { return letters_[static_cast<std::size_t>(i)]; }
    int max_letter() const;

    Word concat(const Word& tail) const;
    Word prepended(int letter) const;
    Word appended(int letter) const;
    Word reversed() const;
    /// Letters from position `from` (0-based) to the end.
    Word suffix(int from) const;

    bool is_prefix_of(const Word& other) const;

    std::string str() const;

    bool operator==(const Word&) const = default;
    std::strong_ordering operator<=>(const Word& other) const;

private:
    std::vector<int> letters_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

/// All words of length <= max_len in degree-lexicographic order; index 0 is
/// the unit. Requires d >= 1, max_len >= 0.
std::vector<Word> enumerate_words(int d, int max_len);

/// Number of words of length <= max_len over d letters.
std::size_t word_count(int d, int max_len);

/// Outcome of collapsing L^{a*} L^b. The left shifts are isometries with
/// pairwise orthogonal ranges, so the product is I, a forward monomial L^g,
/// a backward monomial L^{g*}, or zero:
///   b == a           -> Unit
///   b == a.g, g != 0 -> Analytic(g)
///   a == b.g, g != 0 -> CoAnalytic(g)
///   otherwise        -> Zero
struct Reduction {
    enum class Kind { Unit, Analytic, CoAnalytic, Zero };

    Kind kind = Kind::Unit;
    Word factor;  // nonempty exactly when kind is Analytic or CoAnalytic

    static Reduction unit() { return {Kind::Unit, Word{}}; }
    static Reduction zero() { return {Kind::Zero, Word{}}; }
    static Reduction analytic(Word g);
    static Reduction coanalytic(Word g);

    bool operator==(const Reduction&) const = default;
};

Reduction reduce_adjoint_product(const Word& lhs, const Word& rhs);

}  // namespace nclab
