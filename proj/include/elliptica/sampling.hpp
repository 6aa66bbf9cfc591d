#pragma once

#include <cstdint>
#include <vector>

#include "elliptica/fock.hpp"

namespace elliptica {

/// Deterministic 64-bit generator (splitmix64); results are identical across
/// platforms, so frozen expected values never drift.
class DetRng {
public:
    explicit DetRng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
    long range(long lo, long hi) { return lo + static_cast<long>(below(uint64_t(hi - lo + 1))); }

    /// Nonzero rational with numerator in {-3..3} and denominator 1.
    Rational coefficient() {
        long n = range(-3, 3);
        if (n == 0) n = 1;
        return Rational(n);
    }

private:
    uint64_t state_;
};

enum class SampleSectors { x_only, y_only, both };

/// Deterministic pseudo-random monomial states with small rational
/// coefficients; vacuum_0 and vacuum_1 are always prepended.
inline std::vector<FockState> sample_states(uint64_t seed, long count, int degree,
                                            long index_window, SampleSectors sectors) {
    if (count < 1) throw std::invalid_argument("sample_states: count must be >= 1");
    DetRng rng(seed);
    std::vector<FockState> out{FockState::vacuum(0), FockState::vacuum(1)};
    for (long i = 0; i < count; ++i) {
        Monomial m;
        const int d = 1 + static_cast<int>(rng.below(std::max(degree, 1)));
        for (int k = 0; k < d; ++k) {
            VarFamily fam;
            switch (sectors) {
                case SampleSectors::x_only:
                    fam = rng.below(2) ? VarFamily::x1 : VarFamily::x;
                    break;
                case SampleSectors::y_only:
                    fam = rng.below(2) ? VarFamily::y1 : VarFamily::y;
                    break;
                case SampleSectors::both:
                    fam = static_cast<VarFamily>(rng.below(4));
                    break;
            }
            const long idx =
                is_y_family(fam) ? rng.range(-index_window, -1) : rng.range(-index_window, index_window);
            m[make_var(fam, idx)] += 1;
        }
        out.push_back(
            FockState::term(m, static_cast<int>(rng.below(2)), CoeffPoly::constant(rng.coefficient())));
    }
    return out;
}

}  // namespace elliptica
