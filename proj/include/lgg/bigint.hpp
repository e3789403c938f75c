#ifndef LGG_BIGINT_HPP
#define LGG_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lgg {

// Arbitrary-precision non-negative integer, base 10^9 limbs.
// Supports exactly what exact path counting needs: add, small multiply,
// comparison, and decimal printing.
class BigUint {
public:
    BigUint() = default;
    BigUint(uint64_t v) { // NOLINT(google-explicit-constructor)
        while (v != 0) {
            limbs_.push_back(static_cast<uint32_t>(v % kBase));
            v /= kBase;
        }
    }

    bool is_zero() const { return limbs_.empty(); }

    BigUint& operator+=(const BigUint& o) {
        if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < limbs_.size(); ++i) {
            uint64_t sum = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
            limbs_[i] = static_cast<uint32_t>(sum % kBase);
            carry = sum / kBase;
        }
        if (carry != 0) limbs_.push_back(static_cast<uint32_t>(carry));
        return *this;
    }

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

    BigUint& mul_small(uint64_t m) {
        if (m == 0 || limbs_.empty()) { limbs_.clear(); return *this; }
        std::vector<uint32_t> digits; // base-10^9 digits of m
        while (m != 0) {
            digits.push_back(static_cast<uint32_t>(m % kBase));
            m /= kBase;
        }
        BigUint result;
        for (size_t d = 0; d < digits.size(); ++d) {
            BigUint part;
            part.limbs_.assign(d, 0); // shift by d limbs
            uint64_t carry = 0;
            for (uint32_t limb : limbs_) {
                uint64_t prod = static_cast<uint64_t>(limb) * digits[d] + carry;
                part.limbs_.push_back(static_cast<uint32_t>(prod % kBase));
                carry = prod / kBase;
            }
            while (carry != 0) {
                part.limbs_.push_back(static_cast<uint32_t>(carry % kBase));
                carry /= kBase;
            }
            while (!part.limbs_.empty() && part.limbs_.back() == 0) part.limbs_.pop_back();
            result += part;
        }
        return *this = result;
    }

    bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }
    bool operator!=(const BigUint& o) const { return !(*this == o); }
    bool operator<(const BigUint& o) const {
        if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size();
        for (size_t i = limbs_.size(); i-- > 0;)
            if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i];
        return false;
    }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::string out = std::to_string(limbs_.back());
        for (size_t i = limbs_.size() - 1; i-- > 0;) {
            std::string part = std::to_string(limbs_[i]);
            out += std::string(9 - part.size(), '0') + part;
        }
        return out;
    }

    // Saturating conversion for callers that only need small counts.
    uint64_t to_u64_saturating() const {
        uint64_t v = 0;
        for (size_t i = limbs_.size(); i-- > 0;) {
            if (v > (UINT64_MAX - limbs_[i]) / kBase) return UINT64_MAX;
            v = v * kBase + limbs_[i];
        }
        return v;
    }

private:
    static constexpr uint64_t kBase = 1000000000;
    std::vector<uint32_t> limbs_; // little-endian
};

} // namespace lgg

#endif
