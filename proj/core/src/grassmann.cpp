#include "localize/grassmann.hpp"

#include <bit>

#include "localize/error.hpp"

namespace localize {

GrassmannAlgebra GrassmannAlgebra::paired(std::size_t d) {
    if (d == 0 || 2 * d > 32) throw Error(ErrorCode::InvalidArgument, "paired algebra needs 1 <= d <= 16");
    return GrassmannAlgebra(2 * d, true);
}

GrassmannAlgebra GrassmannAlgebra::plain(std::size_t n) {
    if (n == 0 || n > 32) throw Error(ErrorCode::InvalidArgument, "plain algebra needs 1 <= n <= 32");
    return GrassmannAlgebra(n, false);
}

int GrassmannAlgebra::top_sign() const noexcept {
    if (!paired_) return 1;
    // Reordering psi^1 psibar_1 ... psi^d psibar_d into psi^1..psi^d psibar_1..psibar_d
    // takes d(d-1)/2 transpositions.
    const std::size_t d = n_ / 2;
    return ((d * (d - 1) / 2) % 2 == 0) ? 1 : -1;
}

std::size_t GrassmannAlgebra::psi(std::size_t a) const {
    if (!paired_ || a >= n_ / 2) throw Error(ErrorCode::InvalidArgument, "psi index out of range");
    return a;
}

std::size_t GrassmannAlgebra::psibar(std::size_t a) const {
    if (!paired_ || a >= n_ / 2) throw Error(ErrorCode::InvalidArgument, "psibar index out of range");
    return n_ / 2 + a;
}

std::string GrassmannAlgebra::label(std::size_t g) const {
    if (!paired_) return "g" + std::to_string(g);
    const std::size_t d = n_ / 2;
    return g < d ? "psi^" + std::to_string(g + 1) : "psibar_" + std::to_string(g - d + 1);
}

int monomial_product_sign(std::uint32_t a, std::uint32_t b) noexcept {
    if ((a & b) != 0u) return 0;
    // Each generator j of b moves left past the generators of a with larger index.
    int swaps = 0;
    while (b != 0u) {
        const int j = std::countr_zero(b);
        b &= b - 1u;
        const std::uint32_t above = (j >= 31) ? 0u : (a >> (j + 1));
        swaps += std::popcount(above);
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

GrassmannElement GrassmannElement::scalar(GrassmannAlgebra algebra, Complex c) {
    GrassmannElement e(algebra);
    e.add_term(0u, c);
    return e;
}

GrassmannElement GrassmannElement::generator(GrassmannAlgebra algebra, std::size_t index, Complex c) {
    if (index >= algebra.generators()) throw Error(ErrorCode::InvalidArgument, "generator index out of range");
    GrassmannElement e(algebra);
    e.add_term(1u << index, c);
    return e;
}

GrassmannElement GrassmannElement::monomial(GrassmannAlgebra algebra, std::initializer_list<std::size_t> indices,
                                            Complex c) {
    GrassmannElement e = scalar(algebra, c);
    for (std::size_t i : indices) e = e * generator(algebra, i);
    return e;
}

Complex GrassmannElement::coefficient(std::uint32_t mask) const {
    const auto it = terms_.find(mask);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

bool GrassmannElement::is_zero(double tol) const {
    for (const auto& [mask, c] : terms_) {
        if (std::abs(c) > tol) return false;
    }
    return true;
}

void GrassmannElement::add_term(std::uint32_t mask, Complex c) {
    if (c == Complex(0.0)) return;
    auto [it, inserted] = terms_.try_emplace(mask, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0)) terms_.erase(it);
    }
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& other) {
    if (!(algebra_ == other.algebra_)) throw Error(ErrorCode::AlgebraMismatch, "adding elements of different algebras");
    for (const auto& [mask, c] : other.terms_) add_term(mask, c);
    return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& other) {
    if (!(algebra_ == other.algebra_)) throw Error(ErrorCode::AlgebraMismatch, "subtracting elements of different algebras");
    for (const auto& [mask, c] : other.terms_) add_term(mask, -c);
    return *this;
}

GrassmannElement& GrassmannElement::operator*=(Complex c) {
    if (c == Complex(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [mask, v] : terms_) v *= c;
    return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    if (!(a.algebra_ == b.algebra_)) throw Error(ErrorCode::AlgebraMismatch, "multiplying elements of different algebras");
    GrassmannElement out(a.algebra_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            const int sign = monomial_product_sign(ma, mb);
            if (sign == 0) continue;
            out.add_term(ma | mb, static_cast<double>(sign) * ca * cb);
        }
    }
    return out;
}

GrassmannElement grassmann_mul(const GrassmannElement& a, const GrassmannElement& b) { return a * b; }

GrassmannElement grassmann_exp(const GrassmannElement& a) {
    if (a.scalar_part() != Complex(0.0)) {
        throw Error(ErrorCode::NonNilpotent, "exponential argument has a scalar part");
    }
    GrassmannElement result = GrassmannElement::scalar(a.algebra(), 1.0);
    GrassmannElement power = result;
    for (std::size_t k = 1; k <= a.algebra().generators(); ++k) {
        power = power * a;
        power *= Complex(1.0 / static_cast<double>(k));
        if (power.is_zero()) break;
        result += power;
    }
    return result;
}

Complex berezin_integrate(const GrassmannElement& e) {
    const GrassmannAlgebra& alg = e.algebra();
    return static_cast<double>(alg.top_sign()) * e.coefficient(alg.top_mask());
}

}  // namespace localize
