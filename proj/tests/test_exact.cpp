#include <doctest.h>

#include <random>

#include "kbp/configlp.hpp"
#include "kbp/exact.hpp"
#include "kbp/greedy.hpp"
#include "kbp/rational.hpp"
#include "support.hpp"

using namespace kbp;
using kbp::test::make;

namespace {

Instance delta_instance()
{
    const double delta = 1e-3;
    std::vector<double> d;
    for (int i = 0; i < 4; ++i) d.push_back(0.5 + delta);
    for (int i = 0; i < 4; ++i) d.push_back(0.25 + 2 * delta);
    for (int i = 0; i < 4; ++i) d.push_back(0.25 + delta);
    for (int i = 0; i < 8; ++i) d.push_back(0.25 - 2 * delta);
    return make(d, 1);
}

Instance k6() { return make({4, 2, 5, 3, 2, 1}, 9); }

std::size_t opt(const Instance& inst, int k)
{
    ExactResult r = exact_kbp(inst, k);
    REQUIRE(r.optimal);
    CHECK(validate_packing(inst, r.packing).ok());
    return r.packing.size();
}

// The support reconstructs r_max on every agent.
void check_support(const Instance& inst, const RmaxResult& r)
{
    CHECK(r.support.size() <= inst.size());
    mpq_class total = 0;
    std::vector<mpq_class> cover(inst.size(), 0);
    for (const auto& w : r.support) {
        CHECK(w.weight > 0);
        total += w.weight;
        Size load;
        for (AgentId a : w.agents) {
            cover[a] += w.weight;
            load += inst.demand(a);
        }
        CHECK(load <= inst.capacity());
    }
    CHECK(total == 1);
    for (const auto& c : cover) CHECK(c == r.r_max);
}

}  // namespace

TEST_CASE("optimal bin counts")
{
    CHECK(opt(make({371, 659, 113, 47, 485, 3, 228, 419, 468, 581, 626}, 1000), 2) == 8);
    CHECK(opt(make({10, 20, 11}, 31), 2) == 3);
    Instance t = make({11, 12, 13}, 25);
    CHECK(opt(t, 1) == 2);
    CHECK(opt(t, 2) == 3);
    CHECK(opt(t, 3) == 5);
    Instance d = delta_instance();
    for (int k = 1; k <= 3; ++k) CHECK(opt(d, k) == static_cast<std::size_t>(6 * k));
}

TEST_CASE("volume certification")
{
    ExactResult r = exact_kbp(make({2, 1, 1}, 2), 2);
    CHECK(r.packing.size() == 4);
    CHECK(r.volume_certified);
    CHECK(r.optimal);
    ExactResult s = exact_kbp(make({6, 6, 6}, 10), 1);
    CHECK(s.packing.size() == 3);
    CHECK(s.optimal);
    CHECK_FALSE(s.volume_certified);
    CHECK(s.lower_bound <= 3);
    CHECK_THROWS_AS(exact_kbp(make({1}, 1), 0), std::invalid_argument);
}

TEST_CASE("exact matches brute force and the volume bound")
{
    std::mt19937_64 rng(51);
    for (int t = 0; t < 80; ++t) {
        Instance inst = kbp::test::random_instance(rng, 5, 3, 15);
        const int k = 1 + t % 3;
        ExactResult r = exact_kbp(inst, k);
        REQUIRE(r.optimal);
        CHECK(validate_packing(inst, r.packing).ok());
        CHECK(r.packing.size() == kbp::test::brute_force_opt(inst, k));
        CHECK(static_cast<std::int64_t>(r.packing.size()) >= volume_bound(inst, k));
        CHECK(r.volume_certified == (static_cast<std::int64_t>(r.packing.size()) == volume_bound(inst, k)));
    }
}

TEST_CASE("exact never exceeds first fit")
{
    std::mt19937_64 rng(53);
    for (int t = 0; t < 30; ++t) {
        Instance inst = kbp::test::random_instance(rng, 9, 5, 30);
        const int k = 1 + t % 4;
        ExactResult r = exact_kbp(inst, k);
        CHECK(r.packing.size() <= ffk(inst, k).size());
        CHECK(r.packing.size() <= ffdk(inst, k).size());
    }
}

TEST_CASE("rmax examples")
{
    struct Case {
        Instance inst;
        mpq_class expected;
    };
    for (const Case& c : {Case{make({2, 1, 1}, 3), mpq_class(2, 3)}, Case{make({11, 12, 13}, 25), mpq_class(2, 3)},
                          Case{k6(), mpq_class(9, 17)}, Case{make({1, 1, 1, 1, 1}, 4), mpq_class(4, 5)}}) {
        RmaxResult r = rmax(c.inst);
        CHECK(r.r_max == c.expected);
        check_support(c.inst, r);
    }
}

TEST_CASE("rmax is the reciprocal of the single-copy fractional optimum")
{
    std::mt19937_64 rng(57);
    for (int t = 0; t < 50; ++t) {
        Instance inst = kbp::test::random_instance(rng, 7, 3, 20);
        RmaxResult r = rmax(inst);
        check_support(inst, r);
        ConfigurationSystem sys = enumerate_configurations(inst);
        CHECK(r.r_max * solve_fractional(sys, 1).objective == 1);
        // No packing of D_k connects agents for a larger share of the time.
        const int k = 1 + t % 3;
        CHECK(make_rational(k, static_cast<long>(opt(inst, k))) <= r.r_max);
    }
}

TEST_CASE("minimal k examples")
{
    auto a = minimal_k(make({2, 1, 1}, 3), 10);
    REQUIRE(a);
    CHECK(a->k == 2);
    CHECK(a->bins == 3);

    auto b = minimal_k(make({1, 1, 1, 1, 1, 1}, 5), 10);
    REQUIRE(b);
    CHECK(b->k == 5);
    CHECK(b->bins == 6);

    auto c = minimal_k(k6(), 10);
    REQUIRE(c);
    CHECK(c->k == 9);
    CHECK(c->bins == 17);

    CHECK_FALSE(minimal_k(k6(), 8).has_value());
}

TEST_CASE("six agent lower bound instance needs nine copies")
{
    Instance d = k6();
    for (int k = 1; k < 9; ++k) {
        CHECK((17 * k) % 9 != 0);
        CHECK(mpq_class(static_cast<long>(opt(d, k))) > make_rational(17 * k, 9));
    }
}

TEST_CASE("minimal k against the determinant bound")
{
    std::mt19937_64 rng(59);
    for (int t = 0; t < 30; ++t) {
        Instance inst = kbp::test::random_instance(rng, 4, 3, 10);
        const int n = static_cast<int>(inst.size());
        const int bound = static_cast<int>(a_n(n).value);
        auto m = minimal_k(inst, bound);
        REQUIRE(m);
        CHECK(m->k <= bound);
        CHECK(make_rational(m->k, m->bins) == rmax(inst).r_max);
    }
    // n - 1 lower bound family
    for (int n = 3; n <= 6; ++n) {
        auto m = minimal_k(Instance(std::vector<Size>(n, Size::units(1)), Size::units(n - 1)), 10);
        REQUIRE(m);
        CHECK(m->k == n - 1);
    }
}

TEST_CASE("determinant table")
{
    CHECK(a_n(1).value == 1);
    CHECK(a_n(6).value == 9);
    CHECK(a_n(10).value == 320);
    CHECK(a_n(21).value == 195312500);
    CHECK_FALSE(a_n(21).bound_only);
    DeterminantBound h = a_n(22);
    CHECK(h.bound_only);
    CHECK(h.value == doctest::Approx(std::pow(2.0, -22) * std::pow(23.0, 11.5)));
    CHECK_THROWS(a_n(0));
}
