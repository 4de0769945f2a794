#include "doctest.h"

#include <cmath>

#include "mimosim/classifier.hpp"
#include "mimosim/rng.hpp"

using namespace mimosim;

namespace {

CxVector random_vec(std::size_t n, SeededRng& rng) {
    CxVector v(n);
    for (auto& z : v) z = rng.next_cn01();
    return v;
}

}  // namespace

TEST_CASE("similarity") {
    CxVector a{{1, 0}, {2, 0}, {0, 3}};
    CHECK(similarity(a, a) == doctest::Approx(1.0));

    CxVector e1{{1, 0}, {0, 0}};
    CxVector e2{{0, 0}, {1, 0}};
    CHECK(similarity(e1, e2) == doctest::Approx(0.0));

    CxVector b{{1, 0}, {1, 0}};
    CHECK(similarity(e1, b) == doctest::Approx(1.0 / std::sqrt(2.0)));

    CxVector zero{{0, 0}, {0, 0}};
    CHECK_THROWS_AS(similarity(e1, zero), ClassifierError);
}

TEST_CASE("constant channel promotes after class_n + 1 persistent slots") {
    ClassifierOptions opts{0.05, 30, DemoteMode::step};
    ClassifierState st;
    const CxVector v{{1, 2}, {3, -1}, {0.5, 0.5}};

    update_class(st, v, opts);
    CHECK(st.class_n == 1);
    update_class(st, v, opts);
    CHECK(st.class_n == 2);  // promoted after 2 slots at class 1
    CHECK(st.persist_count == 0);
}

TEST_CASE("i.i.d. channel collapses one class per slot") {
    ClassifierOptions opts{0.05, 30, DemoteMode::step};
    ClassifierState st;
    st.class_n = 5;
    SeededRng rng(314);
    update_class(st, random_vec(100, rng), opts);  // cold start seeds the history
    CHECK(st.class_n == 5);
    for (int i = 1; i <= 4; ++i) {
        update_class(st, random_vec(100, rng), opts);
        CHECK(st.class_n == 5 - i);
    }
    update_class(st, random_vec(100, rng), opts);
    CHECK(st.class_n == 1);  // floor
}

TEST_CASE("reset demotion mode") {
    ClassifierOptions opts{0.05, 30, DemoteMode::reset_to_1};
    ClassifierState st;
    st.class_n = 7;
    SeededRng rng(11);
    update_class(st, random_vec(64, rng), opts);
    update_class(st, random_vec(64, rng), opts);
    CHECK(st.class_n == 1);
}

TEST_CASE("class stays at the cap under a persistent channel") {
    ClassifierOptions opts{0.05, 4, DemoteMode::step};
    ClassifierState st;
    st.class_n = 4;
    const CxVector v{{1, 0}, {0, 1}};
    for (int i = 0; i < 40; ++i) {
        update_class(st, v, opts);
        CHECK(st.class_n == 4);
    }
}

TEST_CASE("static channel climbs in sum of (n+1) slots") {
    // promotion from class n costs n+1 persistent slots, so reaching the cap
    // from class 1 takes sum_{n=1}^{CQ-1} (n+1) slots
    for (int cq : {4, 8}) {
        ClassifierOptions opts{0.05, cq, DemoteMode::step};
        ClassifierState st;
        const CxVector v{{0.3, -1.2}, {2.0, 0.1}};
        int slots = 0;
        while (st.class_n < cq) {
            update_class(st, v, opts);
            ++slots;
            REQUIRE(slots < 10000);
        }
        int expected = 0;
        for (int n = 1; n < cq; ++n) expected += n + 1;
        CHECK(slots == expected);
    }
}

TEST_CASE("classification is scale invariant") {
    ClassifierOptions opts{0.05, 10, DemoteMode::step};
    SeededRng rng(5);
    std::vector<CxVector> inputs;
    for (int i = 0; i < 12; ++i) inputs.push_back(random_vec(32, rng));
    // a slowly persisting pattern: repeat each vector twice
    ClassifierState plain, scaled;
    const cxd c{-2.5, 1.25};
    for (const auto& v : inputs) {
        for (int rep = 0; rep < 2; ++rep) {
            CxVector w(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) w[i] = c * v[i];
            const bool p1 = update_class(plain, v, opts);
            const bool p2 = update_class(scaled, w, opts);
            CHECK(p1 == p2);
            CHECK(plain.class_n == scaled.class_n);
        }
    }
}

TEST_CASE("class bounds hold under arbitrary update sequences") {
    ClassifierOptions opts{0.2, 6, DemoteMode::step};
    ClassifierState st;
    SeededRng rng(77);
    CxVector held = random_vec(16, rng);
    for (int i = 0; i < 500; ++i) {
        const bool persist_phase = (rng.next_u64() % 3) != 0;
        const CxVector& v = persist_phase ? held : (held = random_vec(16, rng));
        update_class(st, v, opts);
        CHECK(st.class_n >= 1);
        CHECK(st.class_n <= 6);
        CHECK(st.history.size() <= 7);
    }
}
