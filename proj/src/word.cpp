#include "nclab/word.hpp"

#include <algorithm>

#include "nclab/errors.hpp"

namespace nclab {

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
    for (int k : letters_) {
        if (k < 1) {
            throw ContractViolation("word letters must be >= 1, got " + std::to_string(k));
        }
    }
}

Word Word::from_digits(std::string_view digits) {
    std::vector<int> letters;
    letters.reserve(digits.size());
    for (char c : digits) {
        if (c < '1' || c > '9') {
            throw ContractViolation(std::string("invalid digit '") + c + "' in word shorthand");
        }
        letters.push_back(c - '0');
    }
    return Word(std::move(letters));
}

int Word::max_letter() const {
    int m = 0;
    for (int k : letters_) m = std::max(m, k);
    return m;
}

Word Word::concat(const Word& tail) const {
    std::vector<int> out = letters_;
    out.insert(out.end(), tail.letters_.begin(), tail.letters_.end());
    return Word(std::move(out));
}

Word Word::prepended(int letter) const {
    std::vector<int> out;
    out.reserve(letters_.size() + 1);
    out.push_back(letter);
    out.insert(out.end(), letters_.begin(), letters_.end());
    return Word(std::move(out));
}

Word Word::appended(int letter) const {
    std::vector<int> out = letters_;
    out.push_back(letter);
    return Word(std::move(out));
}

Word Word::reversed() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    return Word(std::move(out));
}

Word Word::suffix(int from) const {
    if (from < 0 || from > length()) {
        throw ContractViolation("suffix position out of bounds");
    }
    return Word(std::vector<int>(letters_.begin() + from, letters_.end()));
}

bool Word::is_prefix_of(const Word& other) const {
    if (length() > other.length()) return false;
    return std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
}

std::string Word::str() const {
    std::string s;
    bool digits = max_letter() <= 9;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (!digits && i > 0) s += '.';
        s += std::to_string(letters_[i]);
    }
    return s;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
    if (auto c = length() <=> other.length(); c != 0) return c;
    return letters_ <=> other.letters_;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int k : w.letters()) {
        h ^= static_cast<std::size_t>(k);
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<Word> enumerate_words(int d, int max_len) {
    if (d < 1) throw ContractViolation("alphabet size must be >= 1");
    if (max_len < 0) throw ContractViolation("max_len must be >= 0");
    std::vector<Word> words;
    words.reserve(word_count(d, max_len));
    words.emplace_back();
    std::size_t level_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t level_end = words.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (int k = 1; k <= d; ++k) {
                words.push_back(words[i].appended(k));
            }
        }
        level_begin = level_end;
    }
    return words;
}

std::size_t word_count(int d, int max_len) {
    std::size_t total = 0, level = 1;
    for (int len = 0; len <= max_len; ++len) {
        total += level;
        level *= static_cast<std::size_t>(d);
    }
    return total;
}

Reduction Reduction::analytic(Word g) {
    if (g.empty()) return unit();
    return {Kind::Analytic, std::move(g)};
}

Reduction Reduction::coanalytic(Word g) {
    if (g.empty()) return unit();
    return {Kind::CoAnalytic, std::move(g)};
}

Reduction reduce_adjoint_product(const Word& lhs, const Word& rhs) {
    if (lhs.is_prefix_of(rhs)) {
        return Reduction::analytic(rhs.suffix(lhs.length()));
    }
    if (rhs.is_prefix_of(lhs)) {
        return Reduction::coanalytic(lhs.suffix(rhs.length()));
    }
    return Reduction::zero();
}

}  // namespace nclab
