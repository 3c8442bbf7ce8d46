/**
 * @file rep_ring.hpp
 * @brief Exact characters of Z/2 and Z/4 and the trace side of tom Dieck's degree formula.
 *
 * C_k denotes the line on which the generator g acts by zeta^k, zeta = exp(2 pi i / N).
 * C_{N/2} is the real sign representation complexified. All values lie in Z[i]
 * or, after division, in Q(i); nothing is evaluated in floating point.
 */

#pragma once

#include "formgate/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace formgate::rep_ring {

class GaussianRational
{
public:
    GaussianRational() = default;
    GaussianRational(Rational re, Rational im = 0);  // NOLINT(google-explicit-constructor)
    GaussianRational(long v) : GaussianRational(Rational(v)) {}  // NOLINT(google-explicit-constructor)

    [[nodiscard]] const Rational& re() const noexcept { return m_re; }
    [[nodiscard]] const Rational& im() const noexcept { return m_im; }

    [[nodiscard]] GaussianRational conj() const;
    [[nodiscard]] Rational norm() const;  ///< re^2 + im^2
    [[nodiscard]] bool is_zero() const;
    /// Real with denominator 1.
    [[nodiscard]] bool is_integer() const;
    /// Both parts have denominator 1.
    [[nodiscard]] bool is_gaussian_integer() const;
    /// "3", "1/2", "-i", "1+2i", "1/2-3/4i".
    [[nodiscard]] std::string to_string() const;

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b);
    friend GaussianRational operator-(const GaussianRational& a);
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
    /// Throws Error(InvalidArgument) on division by zero.
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
    friend bool operator==(const GaussianRational& a, const GaussianRational& b);

private:
    Rational m_re;
    Rational m_im;
};

/// a^e for any integer e; e < 0 requires a != 0.
[[nodiscard]] GaussianRational pow(const GaussianRational& a, std::int64_t e);

/// zeta^e for the primitive N-th root of unity, N in {2, 4}.
[[nodiscard]] GaussianRational root_of_unity(int modulus, std::int64_t e);

class VirtualCharacter
{
public:
    /// Zero character of R(Z/N). Throws Error(InvalidArgument) unless N in {2, 4}.
    explicit VirtualCharacter(int modulus);
    /// Multiplicities indexed by k = 0..N-1.
    VirtualCharacter(int modulus, std::vector<Integer> multiplicities);

    /// C_k, k taken mod N.
    [[nodiscard]] static VirtualCharacter irreducible(int modulus, std::int64_t k, const Integer& multiplicity = 1);

    [[nodiscard]] int modulus() const noexcept { return m_modulus; }
    [[nodiscard]] const std::vector<Integer>& multiplicities() const noexcept { return m_mult; }
    [[nodiscard]] Integer dimension() const;

    friend VirtualCharacter operator+(const VirtualCharacter& a, const VirtualCharacter& b);
    friend VirtualCharacter operator-(const VirtualCharacter& a, const VirtualCharacter& b);
    /// Tensor product: C_a (x) C_b = C_{a+b}.
    friend VirtualCharacter operator*(const VirtualCharacter& a, const VirtualCharacter& b);
    friend bool operator==(const VirtualCharacter&, const VirtualCharacter&) = default;

private:
    int m_modulus;
    std::vector<Integer> m_mult;
};

/// tr(g^j | v) = sum_k mult_k zeta^{jk}. Requires 0 <= j < N.
[[nodiscard]] GaussianRational trace_at(const VirtualCharacter& v, std::int64_t j);

/// `multiplicity` copies of C_index.
struct Line
{
    std::int64_t index = 0;
    std::int64_t multiplicity = 1;
};

/// prod_plus (1 - zeta^{jk}) / prod_minus (1 - zeta^{jk}).
/// Throws Error(FixedVectorPresent) when some listed line is fixed by g^j,
/// Error(InvalidArgument) for a negative multiplicity or j outside [0, N).
[[nodiscard]] GaussianRational lambda_minus1_trace(int modulus, const std::vector<Line>& plus,
                                                   const std::vector<Line>& minus, std::int64_t j);

/// d_g * lambda_minus1_trace(...).
[[nodiscard]] GaussianRational tom_dieck_trace(const Integer& d_g, int modulus, const std::vector<Line>& plus,
                                               const std::vector<Line>& minus, std::int64_t j);

struct TenEighthsBound
{
    GaussianRational trace;
    bool integral = false;
    bool inequality_holds = false;  ///< b >= k
};

/// Z/4 trace with W-perp = C_2^b and V-perp = (C_1 + C_3)^k at the generator: 2^{b-k}.
/// Throws Error(InvalidArgument) for negative b or k.
[[nodiscard]] TenEighthsBound ten_eighths_bound(std::int64_t b, std::int64_t k);

/// Z/2 trace of (C_0 - C_1)^{2k} at the generator: 2^{2k}.
[[nodiscard]] GaussianRational definite_case_trace(std::int64_t k);

}  // namespace formgate::rep_ring
