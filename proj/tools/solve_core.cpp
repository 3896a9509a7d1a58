// Development helper: solve the core orientation bits from the fixture
// corpus and print them as a C++initializer.
#include <cstdio>

#include "dimerglue/corpus.hpp"

using namespace dimerglue;

int main() {
    for (int k : {2, 4}) {
        std::vector<EmbeddedCut> insts;
        for (const auto& ci : glue_corpus())
            if (ci.ec.k() == k) insts.push_back(ci.ec);
        std::printf("k=%d: %zu instances\n", k, insts.size());
        for (bool shared : {true, false}) {
            auto bits = solve_core_orientation(insts, shared);
            if (!bits) {
                std::printf("k=%d shared=%d: NO SOLUTION\n", k, (int)shared);
                continue;
            }
            std::printf("k=%d shared=%d bits: {", k, (int)shared);
            for (size_t i = 0; i < bits->size(); i++)
                std::printf("%s%d", i ? "," : "", (int)(*bits)[i]);
            std::printf("}\n");
        }
    }
    return 0;
}
