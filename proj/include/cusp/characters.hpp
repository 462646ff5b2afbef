#pragma once

/**
 * @file characters.hpp
 * @brief Dirichlet characters mod q, character Gauss sums tau(chi) and
 *        quadratic Gauss sums G(a, b, q).
 *
 * (Z/qZ)^x is split by CRT into prime-power components. Odd p^k is cyclic on
 * a primitive root; 2^k (k >= 3) is <-1> x <5>. A character is an exponent
 * vector over these generators, and chi(n) is read from the per-component
 * discrete-log tables, so evaluation never searches for roots.
 */

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "arith.hpp"
#include "numeric.hpp"

namespace cusp {

namespace detail {

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % m);
        b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = a % m;
    if (a1 < 0) a1 += m;
    while (a1 != 0) {
        const std::int64_t t = g / a1;
        g -= t * a1;
        std::swap(g, a1);
        x -= t * x1;
        std::swap(x, x1);
    }
    if (g != 1) throw PreconditionError("mod_inverse: not invertible");
    return ((x % m) + m) % m;
}

inline std::int64_t primitive_root_mod_p(std::int64_t p) {
    if (p == 2) return 1;
    std::vector<std::int64_t> factors;
    std::int64_t m = p - 1;
    for (std::int64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) factors.push_back(m);
    for (std::int64_t g = 2;; ++g) {
        bool ok = true;
        for (std::int64_t f : factors)
            if (mod_pow(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

/// One generator of (Z/qZ)^x, with its discrete logs on the owning component.
struct Generator {
    std::int64_t residue;     ///< generator lifted to Z/qZ by CRT
    std::int64_t order;
    std::int64_t component;   ///< p^k this generator lives on
    std::vector<int> log;     ///< log[n mod p^k], -1 off the unit group
};

struct GroupData {
    std::int64_t q = 1;
    std::int64_t phi = 1;
    std::int64_t exponent = 1;  ///< lcm of generator orders
    std::vector<Generator> gens;
    std::vector<bool> unit;     ///< unit[n] for 0 <= n < q
};

inline std::int64_t crt_lift(std::int64_t q, std::int64_t pk, std::int64_t residue) {
    // x = residue (mod pk), x = 1 (mod q / pk)
    const std::int64_t rest = q / pk;
    if (rest == 1) return residue % pk;
    const std::int64_t inv = mod_inverse(rest % pk, pk);
    const std::int64_t t = static_cast<std::int64_t>(static_cast<__int128>((residue - 1) % pk + pk) * inv % pk);
    return (1 + rest * t) % q;
}

inline std::shared_ptr<const GroupData> make_group(std::int64_t q) {
    auto g = std::make_shared<GroupData>();
    g->q = q;
    g->unit.assign(static_cast<std::size_t>(q), false);
    for (std::int64_t n = 0; n < q; ++n) g->unit[n] = std::gcd(n, q) == 1;
    g->phi = std::count(g->unit.begin(), g->unit.end(), true);

    std::int64_t m = q;
    for (std::int64_t p = 2; p <= m; ++p) {
        if (p * p > m) p = m;
        if (m % p != 0) continue;
        std::int64_t pk = 1;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            pk *= p;
            ++k;
        }
        if (p == 2) {
            if (k == 1) continue;  // (Z/2)^x is trivial
            // n = (-1)^s 5^t mod 2^k
            Generator minus{crt_lift(q, pk, pk - 1), 2, pk, std::vector<int>(pk, -1)};
            const std::int64_t ord5 = k >= 3 ? pk / 4 : 1;
            Generator five{crt_lift(q, pk, 5 % pk), ord5, pk, std::vector<int>(pk, -1)};
            std::int64_t v = 1;
            for (std::int64_t t = 0; t < ord5; ++t) {
                minus.log[v] = 0;
                five.log[v] = static_cast<int>(t);
                minus.log[pk - v] = 1;
                five.log[pk - v] = static_cast<int>(t);
                v = v * 5 % pk;
            }
            g->gens.push_back(std::move(minus));
            if (k >= 3) g->gens.push_back(std::move(five));
        } else {
            std::int64_t root = primitive_root_mod_p(p);
            if (k >= 2 && mod_pow(root, p - 1, p * p) == 1) root += p;
            const std::int64_t order = pk / p * (p - 1);
            Generator gen{crt_lift(q, pk, root), order, pk, std::vector<int>(pk, -1)};
            std::int64_t v = 1;
            for (std::int64_t t = 0; t < order; ++t) {
                gen.log[v] = static_cast<int>(t);
                v = v * root % pk;
            }
            g->gens.push_back(std::move(gen));
        }
    }
    for (const auto& gen : g->gens) g->exponent = std::lcm(g->exponent, gen.order);
    return g;
}

}  // namespace detail

/// A Dirichlet character mod q, held as exponents on the group generators.
class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const detail::GroupData> group, std::vector<std::int64_t> exponents)
        : group_(std::move(group)), exponents_(std::move(exponents)) {
        const auto q = group_->q;
        values_.assign(static_cast<std::size_t>(q), complex{0.0, 0.0});
        for (std::int64_t n = 0; n < q; ++n)
            if (group_->unit[n]) values_[n] = unit_phase(phase_numerator(n), group_->exponent);
    }

    std::int64_t modulus() const noexcept { return group_->q; }
    const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }

    complex operator()(std::int64_t n) const {
        const auto q = group_->q;
        std::int64_t r = n % q;
        if (r < 0) r += q;
        return values_[r];
    }

    /// chi(n) straight from the generator exponents, bypassing the value table.
    complex evaluate_from_exponents(std::int64_t n) const {
        const auto q = group_->q;
        std::int64_t r = n % q;
        if (r < 0) r += q;
        if (!group_->unit[r]) return {0.0, 0.0};
        complex v{1.0, 0.0};
        for (std::size_t i = 0; i < group_->gens.size(); ++i) {
            const auto& gen = group_->gens[i];
            v *= unit_phase(exponents_[i] * gen.log[r % gen.component], gen.order);
        }
        return v;
    }

    DirichletCharacter conj() const {
        std::vector<std::int64_t> e(exponents_.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            const auto ord = group_->gens[i].order;
            e[i] = (ord - exponents_[i]) % ord;
        }
        return {group_, std::move(e)};
    }

    bool is_principal() const {
        return std::all_of(exponents_.begin(), exponents_.end(), [](auto e) { return e == 0; });
    }

    /// Order of chi in the character group.
    std::int64_t order() const {
        std::int64_t o = 1;
        for (std::size_t i = 0; i < exponents_.size(); ++i) {
            const auto ord = group_->gens[i].order;
            o = std::lcm(o, ord / std::gcd(ord, exponents_[i]));
        }
        return o;
    }

    /**
     * chi is primitive iff for no proper divisor d | q is chi trivial on
     * {n coprime to q : n = 1 mod d}. Checking d = q/p for each prime p | q
     * suffices, since every proper divisor divides one of those.
     */
    bool is_primitive() const {
        const auto q = group_->q;
        std::int64_t m = q;
        for (std::int64_t p = 2; p <= m; ++p) {
            if (p * p > m) p = m;
            if (m % p != 0) continue;
            while (m % p == 0) m /= p;
            const std::int64_t d = q / p;
            bool trivial = true;
            for (std::int64_t n = 1; n < q && trivial; n += d)
                if (group_->unit[n] && std::abs(values_[n] - complex{1.0, 0.0}) > 1e-9) trivial = false;
            if (trivial) return false;
        }
        return true;
    }

private:
    std::int64_t phase_numerator(std::int64_t r) const {
        std::int64_t num = 0;
        for (std::size_t i = 0; i < group_->gens.size(); ++i) {
            const auto& gen = group_->gens[i];
            num += exponents_[i] * gen.log[r % gen.component] * (group_->exponent / gen.order);
            num %= group_->exponent;
        }
        return num;
    }

    std::shared_ptr<const detail::GroupData> group_;
    std::vector<std::int64_t> exponents_;
    std::vector<complex> values_;
};

/// The full group of phi(q) characters mod q, enumerated in mixed radix over the generator orders.
class CharacterGroup {
public:
    explicit CharacterGroup(std::int64_t q) {
        if (q < 1) throw PreconditionError("CharacterGroup: modulus must be >= 1");
        data_ = detail::make_group(q);
        const std::size_t count = static_cast<std::size_t>(data_->phi);
        characters_.reserve(count);
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::vector<std::int64_t> e(data_->gens.size());
            std::size_t rest = idx;
            for (std::size_t i = 0; i < e.size(); ++i) {
                const auto ord = static_cast<std::size_t>(data_->gens[i].order);
                e[i] = static_cast<std::int64_t>(rest % ord);
                rest /= ord;
            }
            characters_.emplace_back(data_, std::move(e));
        }
    }

    std::int64_t modulus() const noexcept { return data_->q; }
    std::size_t size() const noexcept { return characters_.size(); }
    const DirichletCharacter& operator[](std::size_t i) const { return characters_.at(i); }
    const DirichletCharacter& principal() const { return characters_.front(); }
    auto begin() const { return characters_.begin(); }
    auto end() const { return characters_.end(); }

    struct GeneratorInfo {
        std::int64_t residue;
        std::int64_t order;
    };
    std::vector<GeneratorInfo> generators() const {
        std::vector<GeneratorInfo> out;
        for (const auto& g : data_->gens) out.push_back({g.residue, g.order});
        return out;
    }

private:
    std::shared_ptr<const detail::GroupData> data_;
    std::vector<DirichletCharacter> characters_;
};

inline CharacterGroup build_group(std::int64_t q) { return CharacterGroup(q); }

/// tau(chi) = sum_{b mod q} chi(b) e(b/q).
inline complex char_gauss_sum(const DirichletCharacter& chi) {
    const auto q = chi.modulus();
    CompensatedSum<complex> acc;
    for (std::int64_t b = 0; b < q; ++b) {
        const complex c = chi(b);
        if (c != complex{0.0, 0.0}) acc += c * unit_phase(b, q);
    }
    return acc.value();
}

/// G(a, b, q) = sum_{r=1}^{q} e((a r^2 + b r) / q).
inline complex quadratic_gauss_sum(std::int64_t a, std::int64_t b, std::int64_t q) {
    if (q < 1) throw PreconditionError("quadratic_gauss_sum: q must be >= 1");
    a %= q;
    b %= q;
    CompensatedSum<complex> acc;
    for (std::int64_t r = 1; r <= q; ++r) {
        const auto num = static_cast<std::int64_t>((static_cast<__int128>(a) * r % q * r + static_cast<__int128>(b) * r) % q);
        acc += unit_phase(num, q);
    }
    return acc.value();
}

/**
 * Max deviation over both identities
 *     e(a/q) = (1/phi(q)) sum_chi conj(chi)(a) tau(chi)
 *     chi(a) tau(conj chi) = sum_b conj(chi)(b) e(ab/q)     (every chi)
 * for a fixed a coprime to q.
 */
inline double verify_orthogonality_identity(const CharacterGroup& group, std::int64_t a) {
    const auto q = group.modulus();
    if (gcd(a, q) != 1) throw PreconditionError("verify_orthogonality_identity: a must be coprime to q");
    std::vector<complex> tau(group.size());
    for (std::size_t i = 0; i < group.size(); ++i) tau[i] = char_gauss_sum(group[i]);

    CompensatedSum<complex> expansion;
    for (std::size_t i = 0; i < group.size(); ++i) expansion += std::conj(group[i](a)) * tau[i];
    double worst = std::abs(unit_phase(a, q) - expansion.value() / static_cast<double>(group.size()));

    for (const auto& chi : group) {
        const auto bar = chi.conj();
        const complex lhs = chi(a) * char_gauss_sum(bar);
        CompensatedSum<complex> rhs;
        for (std::int64_t b = 0; b < q; ++b) rhs += bar(b) * unit_phase(static_cast<std::int64_t>(static_cast<__int128>(a) * b % q), q);
        worst = std::max(worst, std::abs(lhs - rhs.value()));
    }
    return worst;
}

inline double verify_orthogonality_identity(std::int64_t q, std::int64_t a) {
    if (q < 1) throw PreconditionError("verify_orthogonality_identity: q must be >= 1");
    if (gcd(a, q) != 1) throw PreconditionError("verify_orthogonality_identity: a must be coprime to q");
    return verify_orthogonality_identity(CharacterGroup(q), a);
}

/// |G(a,0,q)|^2 for gcd(a,q)=1 is q, 0 or 2q as q is odd, 2 mod 4, or 0 mod 4.
inline double expected_gauss_norm_sq(std::int64_t q) {
    if (q % 2 == 1) return static_cast<double>(q);
    if (q % 4 == 2) return 0.0;
    return 2.0 * static_cast<double>(q);
}

struct GaussBoundRow {
    std::int64_t q;
    std::int64_t a;
    double magnitude;   ///< |G(a,0,q)|
    double ratio;       ///< |G(a,0,q)| / sqrt(q)
    double norm_error;  ///< ||G|^2 - expected| / q
    bool ok;
};

inline std::vector<GaussBoundRow> gauss_bound_report(std::int64_t q_max, double tol = 1e-9) {
    if (q_max < 1) throw PreconditionError("gauss_bound_report: q_max must be >= 1");
    std::vector<GaussBoundRow> rows;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        const double expected = expected_gauss_norm_sq(q);
        for (std::int64_t a = 1; a <= q; ++a) {
            if (gcd(a, q) != 1) continue;
            const double mag = std::abs(quadratic_gauss_sum(a, 0, q));
            const double err = std::abs(mag * mag - expected) / static_cast<double>(q);
            rows.push_back({q, a, mag, mag / std::sqrt(static_cast<double>(q)), err, err <= tol});
        }
    }
    return rows;
}

}  // namespace cusp
