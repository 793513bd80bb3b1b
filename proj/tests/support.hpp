#pragma once

// Shared test plumbing: conversions between library families and the raw
// masks the oracles consume, plus a deterministic generator for solver test
// instances that stay inside brute-force range.

#include <cstdint>
#include <vector>

#include "kradon/kradon.hpp"

namespace support {

inline std::vector<std::uint64_t> masks_of(const kradon::SetFamily& f) {
    std::vector<std::uint64_t> out;
    for (kradon::ElementSet m : f.members()) out.push_back(m.bits);
    return out;
}

inline std::vector<std::vector<std::uint64_t>> masks_of(const std::vector<kradon::SetFamily>& fs) {
    std::vector<std::vector<std::uint64_t>> out;
    for (const kradon::SetFamily& f : fs) out.push_back(masks_of(f));
    return out;
}

struct RandomInstance {
    kradon::HereditaryFamily host;
    unsigned t = 1;
    std::vector<kradon::LevelSelector> selectors;
    kradon::CrossMode mode = kradon::CrossMode::sum;
};

// Deterministic instance with k in {2,3}, t in {1,2}, and every selected
// family of at most 12 members (total at most 30 so the general-k search
// stays inside its default guardrail).
inline RandomInstance make_instance(std::uint64_t seed, kradon::CrossMode mode) {
    using namespace kradon;
    SeededRng rng(seed);
    GroundSize ground{4 + static_cast<unsigned>(rng.below(3))};
    unsigned bases = 1 + static_cast<unsigned>(rng.below(3));
    HereditaryFamily host = random_hereditary(ground, bases, 2, ground.n, rng.next());
    unsigned t = 1 + static_cast<unsigned>(rng.below(2));
    unsigned k = 2 + static_cast<unsigned>(rng.below(2));

    auto family_size = [&](const LevelSelector& sel) {
        return host.expand_levels(sel).size();
    };
    auto draw_selector = [&]() {
        for (int attempt = 0; attempt < 8; ++attempt) {
            unsigned lo = t + static_cast<unsigned>(rng.below(ground.n - t + 1));
            std::vector<unsigned> sizes{lo};
            if (rng.below(2) == 1 && lo < ground.n)
                sizes.push_back(lo + 1 + static_cast<unsigned>(rng.below(ground.n - lo)));
            LevelSelector sel(std::move(sizes));
            if (family_size(sel) <= 12) return sel;
        }
        // The top level has at most one member, so this always fits.
        return LevelSelector({ground.n});
    };

    RandomInstance inst{host, t, {}, mode};
    for (unsigned i = 0; i < k; ++i) inst.selectors.push_back(draw_selector());
    if (k == 3) {
        std::size_t total = 0;
        for (const LevelSelector& sel : inst.selectors) total += family_size(sel);
        for (std::size_t i = 0; total > 30 && i < inst.selectors.size(); ++i) {
            total -= family_size(inst.selectors[i]);
            inst.selectors[i] = LevelSelector({ground.n});
            total += family_size(inst.selectors[i]);
        }
    }
    return inst;
}

}  // namespace support
