#include "formgate/rep_ring.hpp"

#include "formgate/error.hpp"

#include <utility>

namespace formgate::rep_ring {

namespace {

void check_modulus(int modulus)
{
    if (modulus != 2 && modulus != 4) {
        throw Error(ErrorCode::InvalidArgument, "modulus must be 2 or 4, got " + std::to_string(modulus));
    }
}

std::int64_t reduce(std::int64_t k, int modulus)
{
    const std::int64_t r = k % modulus;
    return r < 0 ? r + modulus : r;
}

void require_same_modulus(const VirtualCharacter& a, const VirtualCharacter& b)
{
    if (a.modulus() != b.modulus()) {
        throw Error(ErrorCode::InvalidArgument, "characters of different groups");
    }
}

GaussianRational line_product(int modulus, const std::vector<Line>& lines, std::int64_t j)
{
    GaussianRational product = 1;
    for (const Line& line : lines) {
        if (line.multiplicity < 0) {
            throw Error(ErrorCode::InvalidArgument, "negative multiplicity for C_" + std::to_string(line.index));
        }
        if (line.multiplicity == 0) {
            continue;
        }
        const GaussianRational factor = GaussianRational(1) - root_of_unity(modulus, j * line.index);
        if (factor.is_zero()) {
            throw Error(ErrorCode::FixedVectorPresent,
                        "g^" + std::to_string(j) + " fixes C_" + std::to_string(line.index));
        }
        product = product * pow(factor, line.multiplicity);
    }
    return product;
}

}  // namespace

GaussianRational::GaussianRational(Rational re, Rational im) : m_re(std::move(re)), m_im(std::move(im))
{
    m_re.canonicalize();
    m_im.canonicalize();
}

GaussianRational GaussianRational::conj() const
{
    return {m_re, -m_im};
}

Rational GaussianRational::norm() const
{
    return m_re * m_re + m_im * m_im;
}

bool GaussianRational::is_zero() const
{
    return m_re == 0 && m_im == 0;
}

bool GaussianRational::is_integer() const
{
    return m_im == 0 && m_re.get_den() == 1;
}

bool GaussianRational::is_gaussian_integer() const
{
    return m_re.get_den() == 1 && m_im.get_den() == 1;
}

std::string GaussianRational::to_string() const
{
    if (m_im == 0) {
        return to_decimal(m_re);
    }
    auto imaginary = [](const Rational& v) {
        if (v == 1) {
            return std::string("i");
        }
        if (v == -1) {
            return std::string("-i");
        }
        return to_decimal(v) + "i";
    };
    if (m_re == 0) {
        return imaginary(m_im);
    }
    const std::string im = imaginary(m_im);
    return to_decimal(m_re) + (m_im > 0 ? "+" : "") + im;
}

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b)
{
    return {a.m_re + b.m_re, a.m_im + b.m_im};
}

GaussianRational operator-(const GaussianRational& a, const GaussianRational& b)
{
    return {a.m_re - b.m_re, a.m_im - b.m_im};
}

GaussianRational operator-(const GaussianRational& a)
{
    return {-a.m_re, -a.m_im};
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b)
{
    return {a.m_re * b.m_re - a.m_im * b.m_im, a.m_re * b.m_im + a.m_im * b.m_re};
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b)
{
    if (b.is_zero()) {
        throw Error(ErrorCode::InvalidArgument, "division by zero");
    }
    const Rational n = b.norm();
    const GaussianRational t = a * b.conj();
    return {t.m_re / n, t.m_im / n};
}

bool operator==(const GaussianRational& a, const GaussianRational& b)
{
    return a.m_re == b.m_re && a.m_im == b.m_im;
}

GaussianRational pow(const GaussianRational& a, std::int64_t e)
{
    if (e < 0) {
        return GaussianRational(1) / pow(a, -e);
    }
    GaussianRational result = 1;
    GaussianRational base = a;
    while (e > 0) {
        if (e & 1) {
            result = result * base;
        }
        base = base * base;
        e >>= 1;
    }
    return result;
}

GaussianRational root_of_unity(int modulus, std::int64_t e)
{
    check_modulus(modulus);
    // Express zeta_N^e as i^q with q = e * 4/N mod 4.
    switch (reduce(reduce(e, modulus) * (4 / modulus), 4)) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

VirtualCharacter::VirtualCharacter(int modulus) : m_modulus(modulus)
{
    check_modulus(modulus);
    m_mult.assign(static_cast<std::size_t>(modulus), Integer(0));
}

VirtualCharacter::VirtualCharacter(int modulus, std::vector<Integer> multiplicities)
    : m_modulus(modulus), m_mult(std::move(multiplicities))
{
    check_modulus(modulus);
    if (m_mult.size() != static_cast<std::size_t>(modulus)) {
        throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(modulus) + " multiplicities");
    }
}

VirtualCharacter VirtualCharacter::irreducible(int modulus, std::int64_t k, const Integer& multiplicity)
{
    VirtualCharacter v(modulus);
    v.m_mult[static_cast<std::size_t>(reduce(k, modulus))] = multiplicity;
    return v;
}

Integer VirtualCharacter::dimension() const
{
    Integer d = 0;
    for (const auto& m : m_mult) {
        d += m;
    }
    return d;
}

VirtualCharacter operator+(const VirtualCharacter& a, const VirtualCharacter& b)
{
    require_same_modulus(a, b);
    VirtualCharacter r = a;
    for (std::size_t k = 0; k < r.m_mult.size(); ++k) {
        r.m_mult[k] += b.m_mult[k];
    }
    return r;
}

VirtualCharacter operator-(const VirtualCharacter& a, const VirtualCharacter& b)
{
    require_same_modulus(a, b);
    VirtualCharacter r = a;
    for (std::size_t k = 0; k < r.m_mult.size(); ++k) {
        r.m_mult[k] -= b.m_mult[k];
    }
    return r;
}

VirtualCharacter operator*(const VirtualCharacter& a, const VirtualCharacter& b)
{
    require_same_modulus(a, b);
    const std::size_t n = a.m_mult.size();
    VirtualCharacter r(a.m_modulus);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            r.m_mult[(x + y) % n] += a.m_mult[x] * b.m_mult[y];
        }
    }
    return r;
}

GaussianRational trace_at(const VirtualCharacter& v, std::int64_t j)
{
    if (j < 0 || j >= v.modulus()) {
        throw Error(ErrorCode::InvalidArgument, "j must lie in [0, " + std::to_string(v.modulus()) + ")");
    }
    GaussianRational sum = 0;
    for (std::size_t k = 0; k < v.multiplicities().size(); ++k) {
        sum = sum + GaussianRational(Rational(v.multiplicities()[k])) *
                        root_of_unity(v.modulus(), j * static_cast<std::int64_t>(k));
    }
    return sum;
}

GaussianRational lambda_minus1_trace(int modulus, const std::vector<Line>& plus, const std::vector<Line>& minus,
                                     std::int64_t j)
{
    check_modulus(modulus);
    if (j < 0 || j >= modulus) {
        throw Error(ErrorCode::InvalidArgument, "j must lie in [0, " + std::to_string(modulus) + ")");
    }
    return line_product(modulus, plus, j) / line_product(modulus, minus, j);
}

GaussianRational tom_dieck_trace(const Integer& d_g, int modulus, const std::vector<Line>& plus,
                                 const std::vector<Line>& minus, std::int64_t j)
{
    return GaussianRational(Rational(d_g)) * lambda_minus1_trace(modulus, plus, minus, j);
}

TenEighthsBound ten_eighths_bound(std::int64_t b, std::int64_t k)
{
    if (b < 0 || k < 0) {
        throw Error(ErrorCode::InvalidArgument, "b and k must be non-negative");
    }
    TenEighthsBound r;
    r.trace = tom_dieck_trace(1, 4, {{2, b}}, {{1, k}, {3, k}}, 1);
    r.integral = r.trace.is_integer();
    r.inequality_holds = r.integral;
    return r;
}

GaussianRational definite_case_trace(std::int64_t k)
{
    const std::vector<Line> lines = {{1, 2 * (k < 0 ? -k : k)}};
    return k >= 0 ? tom_dieck_trace(1, 2, lines, {}, 1) : tom_dieck_trace(1, 2, {}, lines, 1);
}

}  // namespace formgate::rep_ring
