#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ifslab/words.hpp"

using namespace ifslab;

namespace {

const Alphabet kBinary(2);

std::vector<AddressSpec> all_specs(std::size_t max_pre, std::size_t max_per) {
    std::vector<AddressSpec> out;
    for (std::size_t np = 0; np <= max_pre; ++np) {
        for (const Word& pre : enumerate_words(kBinary, np)) {
            for (std::size_t nq = 1; nq <= max_per; ++nq)
                for (const Word& per : enumerate_words(kBinary, nq))
                    out.emplace_back(pre, per);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("word parse and serialization round trip") {
    Word w = Word::parse(kBinary, "0.1.1");
    CHECK(w.letters() == std::vector<int>{0, 1, 1});
    CHECK(w.to_string() == "0.1.1");
    CHECK(Word::parse(kBinary, "").empty());
    CHECK_THROWS(Word::parse(kBinary, "0.2"));
    CHECK_THROWS(Word::parse(kBinary, "0..1"));
    CHECK_THROWS(Word::parse(kBinary, "x"));
}

TEST_CASE("concat is associative with the empty word as identity") {
    Word e = Word::parse(kBinary, "");
    Word u = Word::parse(kBinary, "0.1");
    Word v = Word::parse(kBinary, "1");
    Word w = Word::parse(kBinary, "1.0.0");
    CHECK(concat(u, e) == u);
    CHECK(concat(e, u) == u);
    CHECK(concat(concat(u, v), w) == concat(u, concat(v, w)));
}

TEST_CASE("address canonicalization") {
    SUBCASE("period is made primitive") {
        AddressSpec a(Word::parse(kBinary, ""), Word::parse(kBinary, "0.1.0.1"));
        CHECK(a.period().to_string() == "0.1");
    }
    SUBCASE("trailing period copies are absorbed out of the preperiod") {
        AddressSpec a(Word::parse(kBinary, "0"), Word::parse(kBinary, "0"));
        CHECK(a.to_string() == "|0");
        // 1(01)^inf and (10)^inf denote the same sequence
        AddressSpec b(Word::parse(kBinary, "1"), Word::parse(kBinary, "0.1"));
        AddressSpec c(Word::parse(kBinary, ""), Word::parse(kBinary, "1.0"));
        CHECK(b == c);
    }
    SUBCASE("canonicalization is idempotent") {
        for (const AddressSpec& a : all_specs(3, 3)) {
            AddressSpec again(a.preperiod(), a.period());
            CHECK(again == a);
        }
    }
    SUBCASE("canonical equality matches letterwise equality") {
        auto specs = all_specs(2, 2);
        for (const AddressSpec& a : specs) {
            for (const AddressSpec& b : specs) {
                bool letters_equal = true;
                // |pre|+|pre|+lcm(2,2) letters decide equality at these sizes
                for (std::size_t i = 0; i < 8 && letters_equal; ++i)
                    letters_equal = a.letter_at(i) == b.letter_at(i);
                CHECK((a == b) == letters_equal);
            }
        }
    }
}

TEST_CASE("address parse errors") {
    CHECK_THROWS(AddressSpec::parse(kBinary, "0.1"));   // no bar
    CHECK_THROWS(AddressSpec::parse(kBinary, "0|"));    // empty period
    CHECK_THROWS(AddressSpec::parse(kBinary, "|2"));    // letter out of range
    CHECK(AddressSpec::parse(kBinary, "|1.0").to_string() == "|1.0");
}

TEST_CASE("prefix reads the denoted infinite word") {
    AddressSpec a = AddressSpec::parse(kBinary, "0|1");
    CHECK(prefix(a, 4).to_string() == "0.1.1.1");
    CHECK(prefix(a, 0).empty());
    AddressSpec b = AddressSpec::parse(kBinary, "|0.1");
    CHECK(prefix(b, 5).to_string() == "0.1.0.1.0");
}

TEST_CASE("shift_insert and shift_drop are inverse") {
    for (const AddressSpec& a : all_specs(2, 3)) {
        for (int letter = 0; letter < 2; ++letter) {
            AddressSpec t = shift_insert(letter, a);
            CHECK(t.letter_at(0) == letter);
            CHECK(shift_drop(t) == a);
        }
    }
}

TEST_CASE("periodicize") {
    AddressSpec a = periodicize(Word::parse(kBinary, "0.1"));
    CHECK(a.preperiod().empty());
    CHECK(a.period().to_string() == "0.1");
    CHECK_THROWS(periodicize(Word::parse(kBinary, "")));
}

TEST_CASE("code distance examples") {
    AddressSpec z = AddressSpec::parse(kBinary, "|0");
    AddressSpec o = AddressSpec::parse(kBinary, "|1");
    CHECK(code_distance(z, o) == 0.5);
    CHECK(code_distance(z, z) == 0.0);
    // 000... vs 001000...: first difference at index 2 (0-based), so 2^-3
    AddressSpec p = AddressSpec::parse(kBinary, "0.0.1|0");
    CHECK(code_distance(z, p) == 0.125);
}

TEST_CASE("code distance is an ultrametric on small specs") {
    auto specs = all_specs(2, 2);
    for (const AddressSpec& a : specs) {
        for (const AddressSpec& b : specs) {
            double dab = code_distance(a, b);
            CHECK(dab == code_distance(b, a));
            CHECK((dab == 0.0) == (a == b));
            for (const AddressSpec& c : specs) {
                double strong = std::max(code_distance(a, c), code_distance(c, b));
                CHECK(dab <= strong);
            }
        }
    }
}

TEST_CASE("enumerate_words") {
    auto words = enumerate_words(Alphabet(3), 2);
    CHECK(words.size() == 9);
    CHECK(words.front().to_string() == "0.0");
    CHECK(words.back().to_string() == "2.2");
    std::set<std::string> distinct;
    for (const Word& w : words) distinct.insert(w.to_string());
    CHECK(distinct.size() == 9);
    CHECK(enumerate_words(kBinary, 0).size() == 1);
    CHECK_THROWS(enumerate_words(kBinary, 40, 1000000));
}
