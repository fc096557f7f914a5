#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "csae/arrays.hpp"
#include "csae/rng.hpp"

using namespace csae;

namespace {

// Independent oracle: enumerate all ordered 2q-tuples directly.
std::set<long long> brute_coarray(const std::vector<int>& positions, int q) {
    std::vector<long long> sums{0};
    for (int round = 0; round < q; ++round) {
        std::vector<long long> next;
        next.reserve(sums.size() * positions.size());
        for (long long s : sums) {
            for (int p : positions) next.push_back(s + p);
        }
        sums = std::move(next);
    }
    std::set<long long> out;
    for (long long a : sums) {
        for (long long b : sums) out.insert(a - b);
    }
    return out;
}

int brute_ula_length(const std::set<long long>& coarr) {
    int run = 0;
    while (coarr.count(run)) ++run;
    return run;
}

void check_against_brute(const std::vector<int>& positions, int q) {
    const auto array = PhysicalArray::from_positions(positions, q);
    const auto virt = coarray(array, q);
    const auto expected = brute_coarray(array.positions, q);
    const std::vector<long long> expected_sorted(expected.begin(), expected.end());
    CHECK(virt.positions == expected_sorted);
    CHECK(virt.ula_length == brute_ula_length(expected));
}

}  // namespace

TEST_CASE("nested positions follow the construction") {
    // q=1, levels [2,2]: first set {1}, last set {2,4}
    CHECK(nested_positions(1, {2, 2}).positions == std::vector<int>{0, 1, 2, 4});

    // q=2, all-2 levels: the final set contributes stride and twice stride
    CHECK(nested_positions(2, {2, 2, 2, 2}).positions == std::vector<int>{0, 1, 2, 4, 8, 16});

    // q=4, eight twos: {0} plus all powers of two up to 256
    std::vector<int> expected{0};
    for (int j = 0; j <= 8; ++j) expected.push_back(1 << j);
    CHECK(nested_positions(4, std::vector<int>(8, 2)).positions == expected);

    // the split form with 2q+1 levels describes the same array
    CHECK(nested_positions(4, std::vector<int>(9, 2)).positions == expected);
    CHECK(nested_positions(2, std::vector<int>(5, 2)).positions ==
          std::vector<int>{0, 1, 2, 4, 8, 16});

    // the published 95% parameter list, read literally, runs to 512
    const auto t4 = nested_positions(4, {2, 2, 4, 2, 2, 2, 2, 2});
    CHECK(t4.positions == std::vector<int>{0, 1, 2, 4, 8, 12, 16, 32, 64, 128, 256, 512});
}

TEST_CASE("nested positions validate their configuration") {
    CHECK_THROWS_AS(nested_positions(0, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(nested_positions(2, {2, 2}), std::invalid_argument);       // needs 4 or 5
    CHECK_THROWS_AS(nested_positions(1, {2, 0}), std::invalid_argument);
}

TEST_CASE("coarray of {0,1} at q=1") {
    const auto virt = coarray(PhysicalArray::from_positions({0, 1}, 1), 1);
    CHECK(virt.positions == std::vector<long long>{-1, 0, 1});
    CHECK(virt.ula_length == 2);
}

TEST_CASE("coarray of the {0,1,2,4,8} array contains the published ULA") {
    const auto array = PhysicalArray::from_positions({1, 2, 4, 8}, 2);  // 0 joins automatically
    CHECK(array.positions == std::vector<int>{0, 1, 2, 4, 8});
    const auto virt = coarray(array, 2);
    for (long long v = -15; v <= 15; ++v) CHECK(virt.contains(v));
    CHECK(2 * virt.ula_length - 1 >= 31);
    // exact value from the tuple-enumeration oracle: the run extends to +-16
    CHECK(virt.ula_length == 17);
    check_against_brute({0, 1, 2, 4, 8}, 2);
}

TEST_CASE("coarray matches the brute-force oracle on assorted arrays") {
    check_against_brute({0, 1}, 1);
    check_against_brute({0, 1, 2, 4}, 1);
    check_against_brute({0, 1, 2, 4}, 2);
    check_against_brute({0, 3, 5}, 2);
    check_against_brute({0, 1, 4, 9, 11}, 2);
    check_against_brute({0, 2, 3}, 3);
    check_against_brute({0, 1, 2, 4, 8, 16}, 2);
}

TEST_CASE("co-array ULA bound holds for random nested arrays") {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int q = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
        std::vector<int> levels(2 * static_cast<std::size_t>(q));
        long long product = 1;
        for (auto& n : levels) {
            n = rng.uniform() < 0.5 ? 2 : 3;
            product *= n;
        }
        const auto array = nested_positions(q, levels);
        const auto virt = coarray(array, q);
        // symmetric ULA of size 2L-1 must reach the guaranteed 2 prod(N) - 1
        CHECK(2 * virt.ula_length - 1 >= 2 * product - 1);

        if (q <= 2 && array.positions.size() <= 9) {
            check_against_brute(array.positions, q);
        }
    }
}

TEST_CASE("co-array is symmetric and grows monotonically") {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> positions{0};
        const int extra = 2 + static_cast<int>(rng.uniform(0.0, 4.0));
        for (int i = 0; i < extra; ++i) {
            positions.push_back(1 + static_cast<int>(rng.uniform(0.0, 20.0)));
        }
        const int q = 1 + static_cast<int>(rng.uniform(0.0, 2.0));
        const auto base = PhysicalArray::from_positions(positions, q);
        const auto virt = coarray(base, q);
        for (long long v : virt.positions) CHECK(virt.contains(-v));

        auto grown = base.positions;
        grown.push_back(23);
        const auto bigger = coarray(PhysicalArray::from_positions(grown, q), q);
        for (long long v : virt.positions) CHECK(bigger.contains(v));
    }
}

TEST_CASE("positive ULA is the leading run") {
    const auto virt = coarray(PhysicalArray::from_positions({0, 1}, 1), 1);
    CHECK(positive_ula(virt) == std::vector<int>{0, 1});

    const auto fig2 = coarray(PhysicalArray::from_positions({0, 1, 2, 4, 8}, 2), 2);
    const auto ula = positive_ula(fig2);
    REQUIRE(ula.size() >= 16);
    for (int i = 0; i < 16; ++i) CHECK(ula[static_cast<std::size_t>(i)] == i);

    // eight twos at q=4: guaranteed positive half of length >= 256
    const auto big = coarray(nested_positions(4, std::vector<int>(8, 2)), 4);
    CHECK(big.ula_length >= 256);
}

TEST_CASE("degenerate virtual arrays are rejected") {
    const auto virt = coarray(PhysicalArray::from_positions({0}, 1), 1);
    CHECK(virt.ula_length == 1);
    CHECK_THROWS_AS(positive_ula(virt), std::invalid_argument);
}
