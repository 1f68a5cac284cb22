#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace twistsha {

// Truncated formal power series in q with exact rational coefficients.
//
// A series of precision P carries the coefficients of q^0 .. q^P inclusive;
// nothing is known about higher terms, and asking for them is an error
// rather than an implicit zero. Values are immutable after construction, so
// they can be shared freely across threads. No floating point anywhere.
class QSeries {
public:
    /// Zero series of the given precision.
    explicit QSeries(std::size_t prec) : coeffs_(prec + 1) {}

    /// Takes coefficients of q^0..q^n; precision is n = coeffs.size()-1.
    explicit QSeries(std::vector<mpq_class> coeffs);

    static QSeries zero(std::size_t prec) { return QSeries(prec); }
    static QSeries one(std::size_t prec);
    static QSeries monomial(std::size_t degree, std::size_t prec,
                            const mpq_class& value = 1);

    std::size_t prec() const { return coeffs_.size() - 1; }

    /// Exact coefficient of q^i. Throws PrecisionError for i > prec().
    const mpq_class& coeff(std::size_t i) const;

    const std::vector<mpq_class>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    /// True when every coefficient has denominator 1.
    bool is_integral() const;

private:
    std::vector<mpq_class> coeffs_;
};

/// ca*a + cb*b through the shared precision min(prec a, prec b).
QSeries lincomb(const QSeries& a, const mpq_class& ca,
                const QSeries& b, const mpq_class& cb);

/// Cauchy product truncated at min(prec a, prec b). Schoolbook; zero
/// coefficients are skipped, so sparse operands multiply cheaply.
QSeries mul(const QSeries& a, const QSeries& b);

/// The operator D = q d/dq: coefficient i becomes i*a_i. Precision unchanged.
QSeries q_derivative(const QSeries& a);

/// Substitution q -> q^m (m >= 1). Result precision is m*prec + (m-1),
/// the largest exponent fully determined by the input.
QSeries dilate(const QSeries& a, std::size_t m);

inline QSeries operator+(const QSeries& a, const QSeries& b) {
    return lincomb(a, 1, b, 1);
}
inline QSeries operator-(const QSeries& a, const QSeries& b) {
    return lincomb(a, 1, b, -1);
}
inline QSeries operator*(const QSeries& a, const QSeries& b) {
    return mul(a, b);
}

bool operator==(const QSeries& a, const QSeries& b);

}  // namespace twistsha
