#include "boxdim/geometry.hpp"

#include <limits>
#include <string>

namespace boxdim {

std::pair<ConstructionInterval, ConstructionInterval> apply_generator(const ConstructionInterval& iv,
                                                                      GeneratorKind g) {
    const ExactRational piece = iv.length() * kept_fraction(g);
    return {ConstructionInterval{iv.left, iv.left + piece}, ConstructionInterval{iv.right - piece, iv.right}};
}

EnumerationCapExceeded::EnumerationCapExceeded(std::size_t requested, std::size_t cap)
    : std::length_error("stage " + std::to_string(requested) + " exceeds the enumeration cap of " +
                        std::to_string(cap) + " stages (2^" + std::to_string(cap) + " intervals)"),
      cap_(cap) {}

ConstructionInterval StageSet::interval(std::size_t i) const {
    const std::uint64_t n = lefts_.at(i);
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    const BigInt den(static_cast<unsigned long>(denominator_));
    ExactRational left(BigInt(static_cast<unsigned long>(n)), den);
    ExactRational right(BigInt(static_cast<unsigned long>(n + 1)), den);
    left.canonicalize();
    right.canonicalize();
    return {left, right};
}

StageSet stage_set(const GeneratorSchedule& s, std::size_t j, std::size_t cap) {
    if (j > cap) {
        throw EnumerationCapExceeded(j, cap);
    }
    StageSet set;
    set.stage_ = j;
    set.exponents_ = counts_up_to(s, BigInt(static_cast<unsigned long>(j)));
    set.lefts_.reserve(std::size_t{1} << j);
    set.lefts_.push_back(0);

    std::vector<std::uint64_t> next;
    for (std::size_t stage = 1; stage <= j; ++stage) {
        const std::uint64_t p = generator_base(generator_at(s, BigInt(static_cast<unsigned long>(stage))));
        if (set.denominator_ > std::numeric_limits<std::uint64_t>::max() / p) {
            throw std::overflow_error("stage " + std::to_string(stage) +
                                      " denominator exceeds 64 bits; lower the enumeration depth");
        }
        // [n, n+1]/D splits into [np, np+1]/(Dp) and [np+p-1, np+p]/(Dp).
        next.clear();
        next.reserve(set.lefts_.size() * 2);
        for (std::uint64_t n : set.lefts_) {
            next.push_back(n * p);
            next.push_back(n * p + p - 1);
        }
        set.lefts_.swap(next);
        set.denominator_ *= p;
    }
    return set;
}

BigInt length_denominator(const StageCounts& counts) {
    auto power = [](unsigned long base, const BigInt& e) {
        if (!e.fits_ulong_p()) {
            throw std::overflow_error("length exponent too large to materialize");
        }
        return pow_ui(base, e.get_ui());
    };
    return power(3, counts.f3) * power(5, counts.f5()) * power(7, counts.f7);
}

}  // namespace boxdim
