#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ifslab {

/// Finite alphabet {0, 1, ..., size-1}.
struct Alphabet {
    std::size_t size = 0;

    explicit Alphabet(std::size_t n);

    bool contains(int letter) const {
        return letter >= 0 && static_cast<std::size_t>(letter) < size;
    }
    bool operator==(const Alphabet&) const = default;
};

/// Finite word over an alphabet. Length 0 is the empty word.
class Word {
public:
    Word() = default;
    Word(Alphabet alphabet, std::vector<int> letters);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<int>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }

    bool operator==(const Word&) const = default;

    /// Serialized as letters joined by '.', e.g. "0.1.1"; empty word -> "".
    std::string to_string() const;
    static Word parse(Alphabet alphabet, const std::string& text);

private:
    Alphabet alphabet_{1};
    std::vector<int> letters_;
};

Word concat(const Word& u, const Word& v);

/// Eventually periodic infinite word preperiod.period.period... in canonical
/// form: the period is primitive (not a proper power) and the preperiod does
/// not end with a full copy of the period. Canonical form makes equality of
/// the denoted infinite words decidable by field comparison.
class AddressSpec {
public:
    AddressSpec(Word preperiod, Word period);

    const Word& preperiod() const { return preperiod_; }
    const Word& period() const { return period_; }
    const Alphabet& alphabet() const { return period_.alphabet(); }

    /// Letter at 0-based position i of the denoted infinite word.
    int letter_at(std::size_t i) const;

    bool operator==(const AddressSpec&) const = default;

    /// Serialized as "pre|per" with '.'-joined letters, e.g. "1|0" for 1000...
    std::string to_string() const;
    static AddressSpec parse(Alphabet alphabet, const std::string& text);

private:
    Word preperiod_;
    Word period_;
};

/// First m letters of the denoted infinite word.
Word prefix(const AddressSpec& a, std::size_t m);

/// The periodic word w.w.w... for non-empty w.
AddressSpec periodicize(const Word& w);

/// tau_i: prepend letter i to the denoted infinite word.
AddressSpec shift_insert(int letter, const AddressSpec& a);

/// Drop the first letter of the denoted infinite word.
AddressSpec shift_drop(const AddressSpec& a);

/// 0 if equal, else 2^-k where k >= 1 indexes the first differing letter.
/// Exact: k is found on canonical forms and 2^-k is a binary dyadic.
double code_distance(const AddressSpec& a, const AddressSpec& b);

/// All of Lambda_n(I), lexicographic. Throws if |I|^n exceeds cap.
std::vector<Word> enumerate_words(Alphabet alphabet, std::size_t n,
                                  std::size_t cap = 1000000);

}  // namespace ifslab
