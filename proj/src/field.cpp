#include "ffmoments/field.hpp"

#include <stdexcept>
#include <string>

namespace ffm {

bool is_prime_u32(std::uint32_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldCtx::FieldCtx(std::uint32_t q) : q_(q), log_q_(std::log(static_cast<double>(q))) {
    if (q < 3 || q > (1u << 20) || !is_prime_u32(q))
        throw std::invalid_argument("FieldCtx: q must be an odd prime in [3, 2^20], got " +
                                    std::to_string(q));
}

Residue FieldCtx::pow(Residue a, std::uint64_t e) const noexcept {
    std::uint64_t base = a % q_, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % q_;
        base = base * base % q_;
        e >>= 1;
    }
    return static_cast<Residue>(acc);
}

Residue FieldCtx::inv(Residue a) const {
    if (a % q_ == 0) throw std::domain_error("FieldCtx::inv: zero has no inverse");
    return pow(a, q_ - 2);
}

int FieldCtx::legendre(Residue a) const noexcept {
    a %= q_;
    if (a == 0) return 0;
    return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
}

}  // namespace ffm
