#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "flagops/formal_group_ring.hpp"
#include "test_support.hpp"

using namespace flagops;

namespace {

LawFactory additive_over(RingSpecPtr ring) {
    return [ring](int order) { return additive_law(ring, order); };
}

LawFactory multiplicative() {
    return [](int order) { return multiplicative_law(order); };
}

Weight random_weight(std::mt19937_64& rng, int rank) {
    std::uniform_int_distribution<int> c(-2, 2);
    Weight w(rank);
    for (int i = 0; i < rank; ++i) w[i] = c(rng);
    return w;
}

} // namespace

TEST_CASE("x of basis weights and linearity for the additive law") {
    auto ctx = make_sctx(RootDatum::parse("A2", LatticeKind::Adjoint),
                         additive_over(RingSpec::integers()), 5);
    Weight e1{1, 0};
    CHECK(ctx->x_of_weight(e1) == TruncatedSeries::variable(ctx->series_ctx(), 0));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Weight lam = random_weight(rng, 2);
        TruncatedSeries expect = TruncatedSeries::zero(ctx->series_ctx());
        for (int i = 0; i < 2; ++i)
            expect += TruncatedSeries::variable(ctx->series_ctx(), i).scaled(Rat(lam[i]));
        CHECK(equal_up_to(ctx->x_of_weight(lam), expect, 5));
    }
}

TEST_CASE("x_alpha for the multiplicative law on simply connected A1") {
    auto ctx = make_sctx(RootDatum::parse("A1", LatticeKind::SimplyConnected), multiplicative(), 5);
    auto x = TruncatedSeries::variable(ctx->series_ctx(), 0);
    auto beta = RingElement::generator(ctx->ring(), "beta");
    // alpha = 2*omega, so x_alpha = 2x - beta x^2
    CHECK(equal_up_to(ctx->x_of_weight({2}), x.scaled(Rat(2)) - x.pow(2).scaled(beta), 5));
}

TEST_CASE("x_{lambda+mu} = x_lambda +_F x_mu") {
    for (auto law : {additive_over(RingSpec::integers()), multiplicative()}) {
        auto ctx = make_sctx(RootDatum::parse("B2", LatticeKind::Adjoint), law, 5);
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 15; ++trial) {
            Weight a = random_weight(rng, 2), b = random_weight(rng, 2), s(2);
            for (int i = 0; i < 2; ++i) s[i] = a[i] + b[i];
            auto lhs = ctx->x_of_weight(s);
            auto rhs = ctx->law().sum(ctx->x_of_weight(a), ctx->x_of_weight(b));
            CHECK(equal_up_to(lhs, rhs, std::min(lhs.precision(), rhs.precision())));
        }
    }
}

TEST_CASE("weyl action is compatible with x and is a group action") {
    auto ctx = make_sctx(RootDatum::parse("A2", LatticeKind::Adjoint), multiplicative(), 5);
    const WeylGroup& W = ctx->weyl();
    std::mt19937_64 rng(17);
    for (std::size_t w = 0; w < W.size(); ++w)
        for (int trial = 0; trial < 5; ++trial) {
            Weight lam = random_weight(rng, 2);
            auto lhs = ctx->weyl_act(w, ctx->x_of_weight(lam));
            auto rhs = ctx->x_of_weight(W.act(w, lam));
            CHECK(equal_up_to(lhs, rhs, std::min(lhs.precision(), rhs.precision())));
        }

    // s_alpha is an involution on random series
    auto s1 = W.element_of_word({0});
    for (int trial = 0; trial < 20; ++trial) {
        auto p = testing::random_series(rng, ctx->series_ctx());
        auto twice = ctx->weyl_act(s1, ctx->weyl_act(s1, p));
        CHECK(equal_up_to(twice, p, std::min(twice.precision(), p.precision())));
    }

    // identity acts trivially
    auto p = testing::random_series(rng, ctx->series_ctx());
    CHECK(ctx->weyl_act(W.identity(), p) == p);
}

TEST_CASE("additive A1: reflection negates x_alpha") {
    auto ctx = make_sctx(RootDatum::parse("A1", LatticeKind::Adjoint),
                         additive_over(RingSpec::integers()), 5);
    auto xa = ctx->x_of_root(0, +1);
    CHECK(equal_up_to(ctx->weyl_act(1, xa), -xa, 5));
}

TEST_CASE("augmentation") {
    auto ctx = make_sctx(RootDatum::parse("A2", LatticeKind::Adjoint),
                         additive_over(RingSpec::integers()), 5);
    CHECK(ctx->augment(ctx->x_of_weight({1, -2})).is_zero());
    auto one_plus = TruncatedSeries::constant(ctx->series_ctx(), Rat(1)) +
                    TruncatedSeries::variable(ctx->series_ctx(), 0) *
                        TruncatedSeries::variable(ctx->series_ctx(), 1).scaled(Rat(3));
    CHECK(ctx->augment(one_plus) == RingElement::one(ctx->ring()));

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = testing::random_series(rng, ctx->series_ctx());
        auto q = testing::random_series(rng, ctx->series_ctx());
        CHECK(ctx->augment(p * q) == ctx->augment(p) * ctx->augment(q));
        for (std::size_t w = 0; w < ctx->weyl().size(); ++w)
            CHECK(ctx->augment(ctx->weyl_act(w, p)) == ctx->augment(p));
    }
}

TEST_CASE("delta operator") {
    auto ctx = make_sctx(RootDatum::parse("A1", LatticeKind::Adjoint),
                         additive_over(RingSpec::integers()), 5);
    auto c = TruncatedSeries::constant(ctx->series_ctx(), Rat(7));
    CHECK(ctx->delta_op(0, +1, c).is_zero());
    auto xa = ctx->x_of_root(0, +1);
    CHECK(equal_up_to(ctx->delta_op(0, +1, xa),
                      TruncatedSeries::constant(ctx->series_ctx(), Rat(-2)).truncated(4), 4));

    // delta(p * s(p)) is s-invariant; delta(p) = 0 iff p invariant
    auto a2 = make_sctx(RootDatum::parse("A2", LatticeKind::Adjoint),
                        additive_over(RingSpec::integers()), 5);
    const WeylGroup& W = a2->weyl();
    std::size_t s1 = W.element_of_word({0});
    auto alpha1 = a2->datum().classify_root(a2->datum().simple_roots()[0]);
    REQUIRE(alpha1);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 15; ++trial) {
        auto p = testing::random_series(rng, a2->series_ctx());
        auto sym = p * a2->weyl_act(s1, p);
        auto d = a2->delta_op(alpha1->first, +1, sym);
        auto moved = a2->weyl_act(s1, d);
        CHECK(equal_up_to(d, moved, std::min(d.precision(), moved.precision())));

        auto inv = p + a2->weyl_act(s1, p); // s1-invariant
        CHECK(a2->delta_op(alpha1->first, +1, inv).is_zero());
        if (!equal_up_to(p, a2->weyl_act(s1, p), p.precision())) {
            CHECK(!a2->delta_op(alpha1->first, +1, p).is_zero());
        }
    }
}

TEST_CASE("kappa classes") {
    auto add = make_sctx(RootDatum::parse("A2", LatticeKind::Adjoint),
                         additive_over(RingSpec::integers()), 5);
    for (std::size_t k = 0; k < add->datum().num_positive(); ++k)
        CHECK(add->kappa(k).is_zero());

    auto mult = make_sctx(RootDatum::parse("A2", LatticeKind::Adjoint), multiplicative(), 5);
    auto beta = RingElement::generator(mult->ring(), "beta");
    for (std::size_t k = 0; k < mult->datum().num_positive(); ++k)
        CHECK(equal_up_to(mult->kappa(k),
                          TruncatedSeries::constant(mult->series_ctx(), Rat(1)).scaled(beta), 5));
}

TEST_CASE("x_Pi") {
    auto a1 = make_sctx(RootDatum::parse("A1", LatticeKind::Adjoint),
                        additive_over(RingSpec::integers()), 5);
    auto x = TruncatedSeries::variable(a1->series_ctx(), 0);
    CHECK(equal_up_to(a1->x_Pi(), -x, 5));

    auto a2 = make_sctx(RootDatum::parse("A2", LatticeKind::Adjoint),
                        additive_over(RingSpec::integers()), 5);
    auto xpi = a2->x_Pi();
    CHECK(xpi.valuation() == 3);
    CHECK(xpi.homogeneous_of(3));
    TruncatedSeries prod = TruncatedSeries::constant(a2->series_ctx(), Rat(1));
    for (std::size_t k = 0; k < 3; ++k) prod = prod * (-a2->x_of_root(k, +1));
    CHECK(equal_up_to(xpi, prod, 5));
}

TEST_CASE("regularity check") {
    auto good = make_sctx(RootDatum::parse("A2", LatticeKind::Adjoint),
                          additive_over(RingSpec::prime_field(3)), 5);
    CHECK_NOTHROW(good->regularity_check());

    // A1 simply connected over F_2: x_alpha = 2 x_omega = 0
    auto bad = make_sctx(RootDatum::parse("A1", LatticeKind::SimplyConnected),
                         additive_over(RingSpec::prime_field(2)), 5);
    CHECK_THROWS_AS(bad->regularity_check(), RegularityFailure);
    try {
        bad->regularity_check();
    } catch (const RegularityFailure& e) {
        CHECK(e.root == bad->datum().root_name(0));
    }
}
