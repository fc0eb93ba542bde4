#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "flagops/root_datum.hpp"

using namespace flagops;

namespace {

// subword criterion by exhaustion: some subsequence of I_w is a reduced word of v
bool bruhat_oracle(const WeylGroup& W, std::size_t v, std::size_t w) {
    const auto& word = W.word(w);
    std::size_t l = word.size();
    for (std::size_t mask = 0; mask < (1u << l); ++mask) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < l; ++i)
            if (mask & (1u << i)) sub.push_back(word[i]);
        if (static_cast<int>(sub.size()) != W.length(v)) continue;
        if (W.element_of_word(sub) == v) return true;
    }
    return false;
}

} // namespace

TEST_CASE("group orders and longest lengths") {
    struct Case { const char* type; std::size_t order; int longest; };
    for (Case c : {Case{"A1", 2, 1}, Case{"A2", 6, 3}, Case{"B2", 8, 4}, Case{"A3", 24, 6},
                   Case{"C2", 8, 4}, Case{"B3", 48, 9}, Case{"D4", 192, 12}}) {
        RootDatum d = RootDatum::parse(c.type, LatticeKind::Adjoint);
        WeylGroup W(d);
        CHECK(W.size() == c.order);
        CHECK(W.length(W.longest_element()) == c.longest);
        CHECK(d.num_positive() == static_cast<std::size_t>(c.longest));
    }
}

TEST_CASE("composite types") {
    RootDatum d = RootDatum::parse("A1xA1", LatticeKind::Adjoint);
    WeylGroup W(d);
    CHECK(W.size() == 4);
    CHECK(d.num_positive() == 2);
}

TEST_CASE("A1 enumeration") {
    RootDatum d = RootDatum::parse("A1", LatticeKind::Adjoint);
    WeylGroup W(d);
    REQUIRE(W.size() == 2);
    CHECK(W.word(0).empty());
    CHECK(W.word(1) == std::vector<int>{0});
    CHECK(W.word_name(1) == "s1");
}

TEST_CASE("bound is enforced") {
    RootDatum d = RootDatum::parse("B5", LatticeKind::Adjoint);
    CHECK_THROWS_AS(WeylGroup(d, 100), TooLarge);
}

TEST_CASE("canonical words are lexicographically least reduced words") {
    for (const char* type : {"A2", "B2"}) {
        RootDatum d = RootDatum::parse(type, LatticeKind::Adjoint);
        WeylGroup W(d);
        for (std::size_t w = 0; w < W.size(); ++w) {
            auto words = W.reduced_words(w);
            CHECK(!words.empty());
            auto least = *std::min_element(words.begin(), words.end());
            CHECK(W.word(w) == least);
            for (const auto& word : words) CHECK(W.element_of_word(word) == w);
        }
    }
}

TEST_CASE("linear order refines Bruhat order") {
    for (const char* type : {"A2", "B2", "A3"}) {
        RootDatum d = RootDatum::parse(type, LatticeKind::Adjoint);
        WeylGroup W(d);
        for (std::size_t v = 0; v < W.size(); ++v)
            for (std::size_t w = 0; w < W.size(); ++w) {
                if (W.bruhat_leq(v, w) && v != w) CHECK(v < w);
            }
    }
}

TEST_CASE("bruhat order basics and oracle comparison") {
    RootDatum d = RootDatum::parse("A2", LatticeKind::Adjoint);
    WeylGroup W(d);
    std::size_t s1 = W.element_of_word({0});
    std::size_t s2 = W.element_of_word({1});
    std::size_t s1s2 = W.element_of_word({0, 1});
    for (std::size_t w = 0; w < W.size(); ++w) CHECK(W.bruhat_leq(W.identity(), w));
    CHECK(W.bruhat_leq(s1, s1s2));
    CHECK_FALSE(W.bruhat_leq(s2, s1));

    // antisymmetry, exhaustively
    for (std::size_t v = 0; v < W.size(); ++v)
        for (std::size_t w = 0; w < W.size(); ++w)
            if (W.bruhat_leq(v, w) && W.bruhat_leq(w, v)) CHECK(v == w);

    for (const char* type : {"A2", "B2"}) {
        RootDatum dd = RootDatum::parse(type, LatticeKind::Adjoint);
        WeylGroup WW(dd);
        for (std::size_t v = 0; v < WW.size(); ++v)
            for (std::size_t w = 0; w < WW.size(); ++w)
                CHECK(WW.bruhat_leq(v, w) == bruhat_oracle(WW, v, w));
    }
}

TEST_CASE("inversion sets") {
    RootDatum d = RootDatum::parse("A2", LatticeKind::Adjoint);
    WeylGroup W(d);
    CHECK(W.inversion_set(W.identity()).empty());
    CHECK(W.inversion_set(W.longest_element()).size() == 3);

    std::size_t s1s2 = W.element_of_word({0, 1});
    auto inv = W.inversion_set(s1s2);
    std::set<Weight> roots;
    for (auto k : inv) roots.insert(d.positive_roots()[k]);
    CHECK(roots == std::set<Weight>{{1, 0}, {1, 1}});

    for (std::size_t w = 0; w < W.size(); ++w) {
        CHECK(static_cast<int>(W.inversion_set(w).size()) == W.length(w));
        CHECK(W.length(W.inverse(w)) == W.length(w));
    }
}

TEST_CASE("weight action") {
    RootDatum adj = RootDatum::parse("A2", LatticeKind::Adjoint);
    WeylGroup W(adj);
    for (int i = 0; i < adj.rank(); ++i) {
        auto cls = adj.classify_root(adj.simple_roots()[i]);
        REQUIRE(cls);
        std::size_t refl = W.reflection(cls->first);
        Weight neg = adj.simple_roots()[i];
        for (int& c : neg) c = -c;
        CHECK(W.act(refl, adj.simple_roots()[i]) == neg);
        CHECK(W.mult(refl, refl) == W.identity()); // involution
    }

    RootDatum sc = RootDatum::parse("A1", LatticeKind::SimplyConnected);
    CHECK(sc.simple_roots()[0] == Weight{2}); // alpha = 2*omega

    // action preserves the root system setwise
    for (const char* type : {"A2", "B2"}) {
        RootDatum d = RootDatum::parse(type, LatticeKind::Adjoint);
        WeylGroup Wd(d);
        for (std::size_t w = 0; w < Wd.size(); ++w)
            for (const auto& alpha : d.positive_roots())
                CHECK(d.classify_root(Wd.act(w, alpha)).has_value());
    }
}

TEST_CASE("coset minimal representatives") {
    RootDatum d = RootDatum::parse("A2", LatticeKind::Adjoint);
    WeylGroup W(d);
    auto reps = W.coset_min_reps({1}); // Theta = {alpha_2}
    REQUIRE(reps.size() == 3);
    CHECK(reps[0] == W.identity());
    CHECK(reps[1] == W.element_of_word({0}));
    CHECK(reps[2] == W.element_of_word({1, 0})); // s2.s1
    // each rep is the unique minimum of its coset
    std::set<std::size_t> seen;
    for (std::size_t w : reps) {
        std::size_t ws2 = W.mult_right(w, 1);
        CHECK(W.length(ws2) > W.length(w));
        seen.insert(w);
        seen.insert(ws2);
    }
    CHECK(seen.size() == W.size());
}

TEST_CASE("word names round trip") {
    RootDatum d = RootDatum::parse("B2", LatticeKind::Adjoint);
    WeylGroup W(d);
    for (std::size_t w = 0; w < W.size(); ++w) {
        auto back = W.element_by_name(W.word_name(w));
        REQUIRE(back.has_value());
        CHECK(*back == w);
    }
    CHECK_FALSE(W.element_by_name("s9").has_value());
}
