#include <stdexcept>

#include "doctest.h"
#include "qone/parallel.hpp"

using namespace qone;

TEST_SUITE("parallel") {
    TEST_CASE("results are ordered by index") {
        for (int t : {1, 3, 8}) {
            set_thread_count(t);
            auto v = parallel_map(100, [](std::size_t i) { return int(i * i); });
            for (int i = 0; i < 100; ++i) CHECK(v[i] == i * i);
        }
        set_thread_count(1);
    }

    TEST_CASE("the lowest failing index wins") {
        set_thread_count(4);
        try {
            parallel_map(50, [](std::size_t i) -> int {
                if (i == 7 || i == 30) throw std::runtime_error("at " + std::to_string(i));
                return 0;
            });
            FAIL("expected an exception");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "at 7");
        }
        set_thread_count(1);
    }

    TEST_CASE("empty input") { CHECK(parallel_map(0, [](std::size_t) { return 1; }).empty()); }
}
