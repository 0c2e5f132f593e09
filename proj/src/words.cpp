#include "ifslab/words.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ifslab {

Alphabet::Alphabet(std::size_t n) : size(n) {
    if (n == 0) throw std::invalid_argument("alphabet size must be >= 1");
}

Word::Word(Alphabet alphabet, std::vector<int> letters)
    : alphabet_(alphabet), letters_(std::move(letters)) {
    for (int l : letters_) {
        if (!alphabet_.contains(l))
            throw std::invalid_argument("letter " + std::to_string(l) +
                                        " out of range for alphabet of size " +
                                        std::to_string(alphabet_.size));
    }
}

std::string Word::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(letters_[i]);
    }
    return out;
}

Word Word::parse(Alphabet alphabet, const std::string& text) {
    std::vector<int> letters;
    if (!text.empty()) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, '.')) {
            if (tok.empty()) throw std::invalid_argument("empty letter in word \"" + text + "\"");
            std::size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument("bad letter \"" + tok + "\"");
            letters.push_back(v);
        }
    }
    return Word(alphabet, std::move(letters));
}

Word concat(const Word& u, const Word& v) {
    if (u.alphabet() != v.alphabet())
        throw std::invalid_argument("concat: alphabet mismatch");
    std::vector<int> letters = u.letters();
    letters.insert(letters.end(), v.letters().begin(), v.letters().end());
    return Word(u.alphabet(), std::move(letters));
}

namespace {

// Smallest p such that w is (w[0..p))^(|w|/p), via the KMP failure function.
std::size_t primitive_period(const std::vector<int>& w) {
    const std::size_t n = w.size();
    std::vector<std::size_t> fail(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t j = fail[i - 1];
        while (j > 0 && w[i] != w[j]) j = fail[j - 1];
        if (w[i] == w[j]) ++j;
        fail[i] = j;
    }
    std::size_t p = n - fail[n - 1];
    return (n % p == 0) ? p : n;
}

}  // namespace

AddressSpec::AddressSpec(Word preperiod, Word period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty())
        throw std::invalid_argument("AddressSpec: period must be non-empty");
    if (preperiod_.alphabet() != period_.alphabet())
        throw std::invalid_argument("AddressSpec: alphabet mismatch");

    // Canonicalize: primitive period, then absorb trailing period copies
    // (including rotations) out of the preperiod.
    std::vector<int> per = period_.letters();
    std::size_t p = primitive_period(per);
    per.resize(p);
    std::vector<int> pre = preperiod_.letters();
    // Moving the last preperiod letter into the period rotation keeps the
    // denoted word unchanged whenever that letter matches the period's tail.
    while (!pre.empty() && pre.back() == per.back()) {
        std::rotate(per.begin(), per.end() - 1, per.end());
        pre.pop_back();
    }
    preperiod_ = Word(preperiod_.alphabet(), std::move(pre));
    period_ = Word(period_.alphabet(), std::move(per));
}

int AddressSpec::letter_at(std::size_t i) const {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
}

std::string AddressSpec::to_string() const {
    return preperiod_.to_string() + "|" + period_.to_string();
}

AddressSpec AddressSpec::parse(Alphabet alphabet, const std::string& text) {
    auto bar = text.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("address must have the form \"pre|per\"");
    return AddressSpec(Word::parse(alphabet, text.substr(0, bar)),
                       Word::parse(alphabet, text.substr(bar + 1)));
}

Word prefix(const AddressSpec& a, std::size_t m) {
    std::vector<int> letters(m);
    for (std::size_t i = 0; i < m; ++i) letters[i] = a.letter_at(i);
    return Word(a.alphabet(), std::move(letters));
}

AddressSpec periodicize(const Word& w) {
    if (w.empty())
        throw std::invalid_argument("periodicize: empty word has no periodic extension");
    return AddressSpec(Word(w.alphabet(), {}), w);
}

AddressSpec shift_insert(int letter, const AddressSpec& a) {
    if (!a.alphabet().contains(letter))
        throw std::invalid_argument("shift_insert: letter out of range");
    std::vector<int> pre = a.preperiod().letters();
    pre.insert(pre.begin(), letter);
    return AddressSpec(Word(a.alphabet(), std::move(pre)), a.period());
}

AddressSpec shift_drop(const AddressSpec& a) {
    if (!a.preperiod().empty()) {
        std::vector<int> pre(a.preperiod().letters().begin() + 1,
                             a.preperiod().letters().end());
        return AddressSpec(Word(a.alphabet(), std::move(pre)), a.period());
    }
    std::vector<int> per = a.period().letters();
    std::rotate(per.begin(), per.begin() + 1, per.end());
    return AddressSpec(a.preperiod(), Word(a.alphabet(), std::move(per)));
}

double code_distance(const AddressSpec& a, const AddressSpec& b) {
    if (a.alphabet() != b.alphabet())
        throw std::invalid_argument("code_distance: alphabet mismatch");
    if (a == b) return 0.0;
    // Distinct canonical forms must differ within the combined preperiods
    // plus one lcm of the periods.
    std::size_t bound = a.preperiod().size() + b.preperiod().size() +
                        std::lcm(a.period().size(), b.period().size());
    for (std::size_t i = 0; i < bound; ++i) {
        if (a.letter_at(i) != b.letter_at(i))
            return std::ldexp(1.0, -static_cast<int>(i + 1));
    }
    throw std::logic_error("code_distance: canonical forms differ but letters agree");
}

std::vector<Word> enumerate_words(Alphabet alphabet, std::size_t n, std::size_t cap) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (count > cap / alphabet.size)
            throw std::runtime_error("enumerate_words: |I|^n exceeds cap");
        count *= alphabet.size;
    }
    std::vector<Word> out;
    out.reserve(count);
    std::vector<int> cur(n, 0);
    for (;;) {
        out.emplace_back(alphabet, cur);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++cur[i] < static_cast<int>(alphabet.size)) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

}  // namespace ifslab
