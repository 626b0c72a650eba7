#include "ffmoments/extfield.hpp"

#include <stdexcept>
#include <string>

#include "ffmoments/errors.hpp"

namespace ffm {

namespace {

constexpr std::uint32_t kZero = 0xffffffffu;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

ExtFieldCtx::ExtFieldCtx(const FieldCtx& base, int n, std::uint64_t table_bound)
    : base_(base), n_(n), size_(0), modulus_(first_irreducible(base, n < 1 ? 1 : n)) {
    if (n < 1) throw std::invalid_argument("ExtFieldCtx: n must be >= 1");
    const std::uint64_t size = checked_count(base.q(), n, 0xffffffffull);
    size_ = static_cast<std::uint32_t>(size);
    pow_q_.resize(static_cast<std::size_t>(n) + 1);
    pow_q_[0] = 1;
    for (int i = 1; i <= n; ++i) pow_q_[i] = pow_q_[i - 1] * base.q();
    // x^n = -(m_0 + ... + m_{n-1} x^{n-1}) mod M
    reduce_x_n_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) reduce_x_n_[i] = base.neg(modulus_.poly().coeff(i));

    if (size > table_bound) return;

    const std::uint64_t order = size - 1;
    const auto factors = prime_factors(order);
    ExtElem g = 0;
    for (ExtElem cand = 1; cand < size_; ++cand) {
        bool primitive = true;
        for (auto p : factors)
            if (pow(cand, order / p) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw NumericalFailure("ExtFieldCtx: no primitive element found");

    exp_.resize(order);
    log_.assign(size, kZero);
    ExtElem e = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
        exp_[i] = e;
        log_[e] = static_cast<std::uint32_t>(i);
        e = mul_generic(e, g);
    }
    if (e != 1) throw NumericalFailure("ExtFieldCtx: generator order mismatch");
    zech_.resize(order);
    for (std::uint64_t i = 0; i < order; ++i) {
        ExtElem s = add(exp_[i], 1);
        zech_[i] = s == 0 ? kZero : log_[s];
    }
}

ExtElem ExtFieldCtx::from_digits(const std::vector<Residue>& c) const {
    if (c.size() > static_cast<std::size_t>(n_))
        throw std::invalid_argument("ExtFieldCtx::from_digits: too many digits");
    ExtElem e = 0;
    for (std::size_t i = 0; i < c.size(); ++i) e += (c[i] % base_.q()) * pow_q_[i];
    return e;
}

std::vector<Residue> ExtFieldCtx::digits(ExtElem e) const {
    std::vector<Residue> c(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        c[i] = e % base_.q();
        e /= base_.q();
    }
    return c;
}

ExtElem ExtFieldCtx::add(ExtElem a, ExtElem b) const noexcept {
    const std::uint32_t q = base_.q();
    ExtElem r = 0;
    for (int i = 0; i < n_; ++i) {
        r += base_.add(a % q, b % q) * pow_q_[i];
        a /= q;
        b /= q;
    }
    return r;
}

ExtElem ExtFieldCtx::sub(ExtElem a, ExtElem b) const noexcept {
    const std::uint32_t q = base_.q();
    ExtElem r = 0;
    for (int i = 0; i < n_; ++i) {
        r += base_.sub(a % q, b % q) * pow_q_[i];
        a /= q;
        b /= q;
    }
    return r;
}

ExtElem ExtFieldCtx::mul_generic(ExtElem a, ExtElem b) const {
    auto da = digits(a), db = digits(b);
    std::vector<Residue> prod(static_cast<std::size_t>(2 * n_ - 1), 0);
    for (int i = 0; i < n_; ++i) {
        if (!da[i]) continue;
        for (int j = 0; j < n_; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(da[i], db[j]));
    }
    for (int i = 2 * n_ - 2; i >= n_; --i) {
        const Residue c = prod[i];
        if (!c) continue;
        for (int j = 0; j < n_; ++j)
            prod[i - n_ + j] = base_.add(prod[i - n_ + j], base_.mul(c, reduce_x_n_[j]));
    }
    prod.resize(static_cast<std::size_t>(n_));
    return from_digits(prod);
}

ExtElem ExtFieldCtx::mul(ExtElem a, ExtElem b) const {
    if (a == 0 || b == 0) return 0;
    if (!has_tables()) return mul_generic(a, b);
    std::uint64_t l = std::uint64_t{log_[a]} + log_[b];
    if (l >= size_ - 1) l -= size_ - 1;
    return exp_[l];
}

ExtElem ExtFieldCtx::pow(ExtElem a, std::uint64_t e) const {
    ExtElem acc = 1, base = a;
    while (e) {
        if (e & 1) acc = has_tables() ? mul(acc, base) : mul_generic(acc, base);
        base = has_tables() ? mul(base, base) : mul_generic(base, base);
        e >>= 1;
    }
    return acc;
}

ExtElem ExtFieldCtx::eval(const PolyFq& f, ExtElem pt) const {
    if (f.q() != base_.q()) throw std::invalid_argument("ExtFieldCtx::eval: field mismatch");
    ExtElem acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = add(mul(acc, pt), from_base(f.coeff(i)));
    return acc;
}

int ExtFieldCtx::quad_char(ExtElem e) const {
    if (e == 0) return 0;
    if (has_tables()) return (log_[e] & 1u) ? -1 : 1;
    return pow(e, (std::uint64_t{size_} - 1) / 2) == 1 ? 1 : -1;
}

std::int64_t ExtFieldCtx::char_sum(const PolyFq& f) const {
    if (f.q() != base_.q()) throw std::invalid_argument("ExtFieldCtx::char_sum: field mismatch");
    if (f.is_zero()) return 0;
    std::int64_t total = 0;
    if (!has_tables()) {
        for (std::uint64_t c = 0; c < size_; ++c) total += quad_char(eval(f, static_cast<ExtElem>(c)));
        return total;
    }
    const std::uint32_t order = size_ - 1;
    const int deg = f.degree();
    std::vector<std::uint32_t> lc(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i <= deg; ++i) lc[i] = f.coeff(i) ? log_[f.coeff(i)] : kZero;

    total += quad_char(from_base(f.coeff(0)));
    for (std::uint32_t x = 1; x < size_; ++x) {
        const std::uint32_t lx = log_[x];
        std::uint32_t acc = lc[deg];  // log of the running value, kZero for 0
        for (int i = deg - 1; i >= 0; --i) {
            if (acc != kZero) {
                acc += lx;
                if (acc >= order) acc -= order;
            }
            const std::uint32_t ld = lc[i];
            if (ld == kZero) continue;
            if (acc == kZero) {
                acc = ld;
                continue;
            }
            // g^acc + g^ld = g^ld (1 + g^(acc - ld))
            std::uint32_t diff = acc >= ld ? acc - ld : acc + order - ld;
            std::uint32_t z = zech_[diff];
            if (z == kZero) {
                acc = kZero;
            } else {
                acc = ld + z;
                if (acc >= order) acc -= order;
            }
        }
        if (acc != kZero) total += (acc & 1u) ? -1 : 1;
    }
    return total;
}

}  // namespace ffm
