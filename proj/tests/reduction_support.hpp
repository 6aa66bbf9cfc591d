#pragma once

// An order-parameterized substitution engine for the differential reduction,
// independent of the coordinate recursion in elliptica/differentials.hpp.
// It repeatedly rewrites one pending class [t^j u dt] at a time using the
// three-term relations, with the choice of which index to rewrite next
// controlled by a strategy. Confluence means every strategy and window
// produces the same coordinates.

#include <map>
#include <stdexcept>
#include <vector>

#include "elliptica/differentials.hpp"
#include "test_support.hpp"

enum class ElimOrder { max_first, min_first, shuffled };

inline elliptica::DifferentialClass elim_u_dt_class(long n, ElimOrder order, uint64_t seed = 0) {
    using namespace elliptica;
    const CoeffPoly b4 = CoeffPoly::symbol(Symbol::b).scale(Rational(4));

    std::map<long, CoeffPoly> pending;  // index j -> coefficient of [t^j u dt]
    pending[n] = CoeffPoly::one();
    DifferentialClass resolved;
    TestRng rng(seed ^ 0x9e3779b9u);

    auto pick = [&]() -> long {
        std::vector<long> open;
        for (const auto& [j, c] : pending) {
            if (j != -1 && j != -2) open.push_back(j);
        }
        if (open.empty()) return 0;
        switch (order) {
            case ElimOrder::max_first: return open.back();
            case ElimOrder::min_first: return open.front();
            case ElimOrder::shuffled: return open[rng.below(open.size())];
        }
        throw std::logic_error("unreachable");
    };

    auto add = [&pending](long j, const CoeffPoly& c) {
        auto it = pending.find(j);
        if (it == pending.end()) {
            if (!c.is_zero()) pending[j] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) pending.erase(it);
        }
    };

    for (int guard = 0; guard < 100000; ++guard) {
        bool done = true;
        for (const auto& [j, c] : pending) {
            if (j != -1 && j != -2) done = false;
        }
        if (done) break;
        const long j = pick();
        const CoeffPoly c = pending.at(j);
        pending.erase(j);
        if (j >= 0) {
            // (2j+5) a_j = 4b(j+1) a_{j-1} - (2j-1) a_{j-2}
            const Rational inv(1, 2 * j + 5);
            add(j - 1, (c * b4.scale(Rational(j + 1))).scale(inv));
            add(j - 2, c.scale(-Rational(2 * j - 1) * inv));
        } else {
            // j <= -3: (2j+3) a_j = 4b(j+3) a_{j+1} - (2j+9) a_{j+2}
            const Rational inv(1, 2 * j + 3);
            add(j + 1, (c * b4.scale(Rational(j + 3))).scale(inv));
            add(j + 2, c.scale(-Rational(2 * j + 9) * inv));
        }
    }
    for (const auto& [j, c] : pending) {
        if (j == -1) resolved += DifferentialClass::wplus(c);
        else if (j == -2) resolved += DifferentialClass::wminus(c);
        else throw std::logic_error("elimination did not terminate");
    }
    return resolved;
}
