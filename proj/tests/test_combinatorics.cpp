#include "jetsec/combinatorics.hpp"
#include "oracles/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace jetsec;

TEST_CASE("compositions: examples and colex order") {
    CHECK(compositions(2, 2) == std::vector<Composition>{{2, 0}, {0, 1}});
    CHECK(compositions(3, 3) == std::vector<Composition>{{3, 0, 0}, {1, 1, 0}, {0, 0, 1}});
    CHECK(compositions(4, 4).size() == 5);
    CHECK_THROWS_AS(compositions(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(compositions(3, 0), std::invalid_argument);
    // colex: compare from the last part, ascending
    const auto list = compositions(4, 6);
    for (std::size_t i = 1; i < list.size(); ++i) {
        std::vector<unsigned> a(list[i - 1].parts.rbegin(), list[i - 1].parts.rend());
        std::vector<unsigned> b(list[i].parts.rbegin(), list[i].parts.rend());
        CHECK(a < b);
    }
}

TEST_CASE("compositions match the brute-force tuple set") {
    for (unsigned m = 1; m <= 7; ++m) {
        for (unsigned k = 1; k <= 12; ++k) {
            const auto list = compositions(m, k);
            std::set<std::vector<unsigned>> got;
            for (const auto& p : list) {
                CHECK(p.weighted_sum() == k);
                CHECK(p.length() == m);
                got.insert(p.parts);
            }
            CHECK(got.size() == list.size());
            const auto brute = oracle::tuples(m, k);
            CHECK(std::set<std::vector<unsigned>>(brute.begin(), brute.end()) == got);
            CHECK(list.size() == oracle::partitions(k, m));
        }
    }
}

TEST_CASE("multinomials") {
    CHECK(multinomial({2, 0}) == 1);
    CHECK(multinomial({1, 1}) == 2);
    CHECK(multinomial({2, 1}) == 3);
    CHECK(multinomial({3, 2, 1}) == 60);
    CHECK(multinomial({}) == 1);
}

TEST_CASE("C coefficients: examples") {
    CHECK(c_coefficient({4, 0, 0}, 3, 1) == 1);
    CHECK(c_coefficient({2, 1, 0}, 3, 1) == 2);
    CHECK(c_coefficient({1, 0, 1}, 2, 2) == 0);
    CHECK_THROWS_AS(c_coefficient({1, 1, 0}, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(c_coefficient({4, 0, 0}, 1, 3), std::invalid_argument);
    // trailing zeros do not matter
    CHECK(c_coefficient({2, 1, 0, 0, 0}, 3, 1) == c_coefficient({2, 1}, 3, 1));
}

TEST_CASE("C coefficients agree with the pairwise oracle") {
    for (unsigned k1 = 1; k1 <= 6; ++k1) {
        for (unsigned k2 = 1; k2 <= k1; ++k2) {
            for_each_composition(k1, k1 + k2, [&](const Composition& mu) {
                CHECK(c_coefficient(mu, k1, k2) == oracle::c_coefficient(mu.parts, k1, k2));
            });
        }
    }
}

TEST_CASE("multiset permutations") {
    CHECK(multiset_permutations({2, 1}) ==
          std::vector<MultisetPermutation>{{1, 1, 2}, {1, 2, 1}, {2, 1, 1}});
    CHECK(multiset_permutations({0, 2}) == std::vector<MultisetPermutation>{{2, 2}});
    CHECK(multiset_permutations({2, 0, 1}).size() == 3);
    CHECK_THROWS_AS(multiset_permutations({0, 0}), std::invalid_argument);
    for (unsigned k = 1; k <= 8; ++k) {
        for (const auto& r : compositions(k, k)) {
            const auto perms = multiset_permutations(r);
            CHECK(Integer(perms.size()) == multinomial(r));
            CHECK(std::is_sorted(perms.begin(), perms.end()));
            CHECK(std::adjacent_find(perms.begin(), perms.end()) == perms.end());
        }
    }
}

TEST_CASE("partial sums") {
    CHECK(partial_sums(MultisetPermutation{1, 2, 1}) == std::vector<unsigned long>{1, 3, 4});
    CHECK(partial_sums(MultisetPermutation{2, 1, 1}) == std::vector<unsigned long>{2, 3, 4});
    CHECK(partial_sums(MultisetPermutation{4}) == std::vector<unsigned long>{4});
    CHECK_THROWS_AS(partial_sums(MultisetPermutation{}), std::invalid_argument);
    for (const auto& r : compositions(5, 7)) {
        for (const auto& w : multiset_permutations(r)) {
            const auto s = partial_sums(w);
            CHECK(std::is_sorted(s.begin(), s.end()));
            CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
            CHECK(s.back() == r.weighted_sum());
        }
    }
}

TEST_CASE("filtered permutation sets") {
    CHECK(filtered_permutation_set({2, 1, 0}, 3) == std::vector<MultisetPermutation>{{1, 2, 1}, {2, 1, 1}});
    CHECK(filtered_permutation_set({2, 1, 0}, 2) == std::vector<MultisetPermutation>{{1, 1, 2}, {2, 1, 1}});
    CHECK(filtered_permutation_set({2, 1, 0}, 5).empty());
}

TEST_CASE("sigma: examples and domain checks") {
    CHECK(sigma_bijection({1, 2, 1}, 4, {2, 1, 0}) == MultisetPermutation{2, 1, 1});
    CHECK(sigma_bijection({2, 1, 1}, 4, {2, 1, 0}) == MultisetPermutation{1, 1, 2});
    CHECK_THROWS_AS(sigma_bijection({1, 1, 2}, 4, {2, 1, 0}), std::invalid_argument);  // misses 3
    CHECK_THROWS_AS(sigma_bijection({1, 2, 1}, 3, {2, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sigma_bijection({1, 1, 1}, 4, {2, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sigma_bijection({2, 2}, 4, {0, 2, 0}), std::invalid_argument);  // |mu| < n-1
}

TEST_CASE("sigma is a bijection from A onto A' and the sizes match C") {
    for (unsigned long n = 4; n <= 9; ++n) {
        for_each_composition(n - 1, 2 * n - 4, [&](const Composition& mu) {
            if (mu.weight() < n - 1) {
                return;
            }
            const auto a = filtered_permutation_set(mu, n - 1);
            const auto a_prime = filtered_permutation_set(mu, n - 2);
            std::set<MultisetPermutation> image;
            for (const auto& w : a) {
                image.insert(sigma_bijection(w, n, mu));
            }
            CHECK(image.size() == a.size());
            CHECK(image == std::set<MultisetPermutation>(a_prime.begin(), a_prime.end()));
            CHECK(Integer(a.size()) == c_coefficient(mu, n - 1, n - 3));
            CHECK(Integer(a_prime.size()) == c_coefficient(mu, n - 2, n - 2));
            CHECK(Integer(a.size()) == oracle::count_hitting(mu.parts, n - 1));
        });
    }
}
