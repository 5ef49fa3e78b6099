#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "localize/tensor.hpp"

namespace localize {

// Finite Grassmann algebra. Generators carry canonical indices 0..n-1 and monomials
// are stored as bitmasks in ascending generator order.
//
// A paired algebra of dimension d has 2d generators: psi^1..psi^d (indices 0..d-1)
// followed by psibar_1..psibar_d (indices d..2d-1). Berezin integration is normalized by
//   int psi^1 psibar_1 psi^2 psibar_2 ... psi^d psibar_d = 1.
// A plain algebra of n generators is normalized by int g_0 g_1 ... g_{n-1} = 1.
class GrassmannAlgebra {
public:
    static GrassmannAlgebra paired(std::size_t d);
    static GrassmannAlgebra plain(std::size_t n);

    std::size_t generators() const noexcept { return n_; }
    std::size_t pairs() const noexcept { return paired_ ? n_ / 2 : 0; }
    bool is_paired() const noexcept { return paired_; }
    std::uint32_t top_mask() const noexcept { return n_ == 32 ? ~0u : ((1u << n_) - 1u); }
    // Berezin integral of the ascending-order top monomial.
    int top_sign() const noexcept;

    std::size_t psi(std::size_t a) const;     // paired only
    std::size_t psibar(std::size_t a) const;  // paired only
    std::string label(std::size_t generator) const;

    bool operator==(const GrassmannAlgebra&) const = default;

private:
    GrassmannAlgebra(std::size_t n, bool paired) : n_(n), paired_(paired) {}
    std::size_t n_;
    bool paired_;
};

class GrassmannElement {
public:
    using Terms = std::map<std::uint32_t, Complex>;

    explicit GrassmannElement(GrassmannAlgebra algebra) : algebra_(algebra) {}

    static GrassmannElement scalar(GrassmannAlgebra algebra, Complex c);
    static GrassmannElement generator(GrassmannAlgebra algebra, std::size_t index, Complex c = 1.0);
    // Monomial g_{i1} g_{i2} ... in the given (not necessarily ascending) order.
    static GrassmannElement monomial(GrassmannAlgebra algebra, std::initializer_list<std::size_t> indices,
                                     Complex c = 1.0);

    const GrassmannAlgebra& algebra() const noexcept { return algebra_; }
    const Terms& terms() const noexcept { return terms_; }
    Complex coefficient(std::uint32_t mask) const;
    Complex scalar_part() const { return coefficient(0u); }
    bool is_zero(double tol = 0.0) const;

    GrassmannElement& operator+=(const GrassmannElement& other);
    GrassmannElement& operator-=(const GrassmannElement& other);
    GrassmannElement& operator*=(Complex c);

    friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
    friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
    friend GrassmannElement operator*(Complex c, GrassmannElement a) { return a *= c; }
    friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);

    // Adds c to the coefficient of mask (no sign bookkeeping).
    void add_term(std::uint32_t mask, Complex c);

private:
    GrassmannAlgebra algebra_;
    Terms terms_;
};

// Sign of the product of two ascending monomials; 0 when they share a generator.
int monomial_product_sign(std::uint32_t a, std::uint32_t b) noexcept;

GrassmannElement grassmann_mul(const GrassmannElement& a, const GrassmannElement& b);
// sum a^k/k!, stopping at the first vanishing power. NonNilpotent if a has a scalar part.
GrassmannElement grassmann_exp(const GrassmannElement& a);
// Coefficient of the top monomial under the algebra's integration convention.
Complex berezin_integrate(const GrassmannElement& e);

}  // namespace localize
