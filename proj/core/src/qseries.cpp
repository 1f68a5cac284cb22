#include "twistsha/qseries.hpp"

#include <algorithm>
#include <sstream>

#include "twistsha/errors.hpp"

namespace twistsha {

QSeries::QSeries(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw InputError("QSeries needs at least the q^0 coefficient");
}

QSeries QSeries::one(std::size_t prec) {
    QSeries r(prec);
    r.coeffs_[0] = 1;
    return r;
}

QSeries QSeries::monomial(std::size_t degree, std::size_t prec, const mpq_class& value) {
    if (degree > prec)
        throw InputError("monomial degree exceeds requested precision");
    QSeries r(prec);
    r.coeffs_[degree] = value;
    return r;
}

const mpq_class& QSeries::coeff(std::size_t i) const {
    if (i >= coeffs_.size()) {
        std::ostringstream os;
        os << "coefficient of q^" << i << " requested, series known only through q^"
           << prec();
        throw PrecisionError(os.str());
    }
    return coeffs_[i];
}

bool QSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const mpq_class& c) { return sgn(c) == 0; });
}

bool QSeries::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const mpq_class& c) { return c.get_den() == 1; });
}

QSeries lincomb(const QSeries& a, const mpq_class& ca,
                const QSeries& b, const mpq_class& cb) {
    const std::size_t n = std::min(a.prec(), b.prec());
    std::vector<mpq_class> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        c[i] = ca * a.coeffs()[i] + cb * b.coeffs()[i];
    return QSeries(std::move(c));
}

QSeries mul(const QSeries& a, const QSeries& b) {
    const std::size_t n = std::min(a.prec(), b.prec());
    std::vector<mpq_class> c(n + 1);

    std::vector<std::size_t> nzb;
    for (std::size_t j = 0; j <= n; ++j)
        if (sgn(b.coeffs()[j]) != 0) nzb.push_back(j);

    for (std::size_t i = 0; i <= n; ++i) {
        const mpq_class& ai = a.coeffs()[i];
        if (sgn(ai) == 0) continue;
        for (std::size_t j : nzb) {
            if (i + j > n) break;
            c[i + j] += ai * b.coeffs()[j];
        }
    }
    return QSeries(std::move(c));
}

QSeries q_derivative(const QSeries& a) {
    std::vector<mpq_class> c(a.prec() + 1);
    for (std::size_t i = 1; i <= a.prec(); ++i) {
        if (sgn(a.coeffs()[i]) == 0) continue;
        c[i] = a.coeffs()[i] * static_cast<unsigned long>(i);
    }
    return QSeries(std::move(c));
}

QSeries dilate(const QSeries& a, std::size_t m) {
    if (m < 1) throw InputError("dilate requires m >= 1");
    // Exponents m*i for i <= prec are determined; everything between
    // m*prec and m*prec + (m-1) is zero, and q^(m*(prec+1)) is the first
    // exponent the input says nothing about.
    const std::size_t out = m * a.prec() + (m - 1);
    std::vector<mpq_class> c(out + 1);
    for (std::size_t i = 0; i <= a.prec(); ++i)
        c[m * i] = a.coeffs()[i];
    return QSeries(std::move(c));
}

bool operator==(const QSeries& a, const QSeries& b) {
    return a.prec() == b.prec() && a.coeffs() == b.coeffs();
}

}  // namespace twistsha
