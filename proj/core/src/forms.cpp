#include "twistsha/forms.hpp"

#include <sstream>

#include "twistsha/errors.hpp"

namespace twistsha {

int weight_times_two(FormId id) {
    switch (id) {
        case FormId::Delta: return 24;
        case FormId::G4: return 8;
        case FormId::Theta: return 1;
        case FormId::X0_11: return 4;
        case FormId::KohnenLift: return 13;
    }
    throw InternalError("unhandled form tag");
}

std::string form_tag(FormId id) {
    switch (id) {
        case FormId::Delta: return "delta";
        case FormId::G4: return "g4";
        case FormId::Theta: return "theta";
        case FormId::X0_11: return "x0-11";
        case FormId::KohnenLift: return "kohnen-lift";
    }
    throw InternalError("unhandled form tag");
}

std::string weight_string(FormId id) {
    const int w2 = weight_times_two(id);
    if (w2 % 2 == 0) return std::to_string(w2 / 2);
    return std::to_string(w2) + "/2";
}

std::optional<FormId> parse_form_tag(std::string_view tag) {
    std::string t(tag);
    for (char& c : t)
        if (c == '_') c = '-';
    if (t == "delta") return FormId::Delta;
    if (t == "g4") return FormId::G4;
    if (t == "theta") return FormId::Theta;
    if (t == "x0-11") return FormId::X0_11;
    if (t == "kohnen-lift") return FormId::KohnenLift;
    return std::nullopt;
}

mpz_class sigma3(std::uint64_t n) {
    if (n == 0) throw InputError("sigma3 is defined for n >= 1");
    mpz_class acc = 0;
    for (std::uint64_t d = 1; d <= n / d; ++d) {
        if (n % d != 0) continue;
        const mpz_class lo(static_cast<unsigned long>(d));
        acc += lo * lo * lo;
        const std::uint64_t e = n / d;
        if (e != d) {
            const mpz_class hi(static_cast<unsigned long>(e));
            acc += hi * hi * hi;
        }
    }
    return acc;
}

QSeries g4_series(std::size_t prec) {
    std::vector<mpq_class> c(prec + 1);
    c[0] = mpq_class(1, 240);
    for (std::size_t n = 1; n <= prec; ++n)
        c[n] = mpq_class(sigma3(n));
    return QSeries(std::move(c));
}

QSeries theta_series(std::size_t prec) {
    std::vector<mpq_class> c(prec + 1);
    c[0] = 1;
    for (std::size_t j = 1; j * j <= prec; ++j)
        c[j * j] = 2;
    return QSeries(std::move(c));
}

namespace {

// prod_{n>=1} (1 - q^{scale*n}) through q^prec, via the pentagonal-number
// expansion: sum_j (-1)^j q^{scale * j(3j-1)/2} over all j in Z.
QSeries eta_product(std::size_t prec, std::size_t scale = 1) {
    std::vector<mpq_class> c(prec + 1);
    c[0] = 1;
    for (std::size_t j = 1;; ++j) {
        const std::size_t g1 = scale * (j * (3 * j - 1) / 2);
        const std::size_t g2 = scale * (j * (3 * j + 1) / 2);
        if (g1 > prec) break;
        const int sign = (j % 2 == 0) ? 1 : -1;
        c[g1] += sign;
        if (g2 <= prec) c[g2] += sign;
    }
    return QSeries(std::move(c));
}

// Multiplies by q (all coefficients shift up one slot; precision grows by
// one, since the shifted series is determined one exponent further).
QSeries shift_up(const QSeries& a) {
    std::vector<mpq_class> c(a.prec() + 2);
    for (std::size_t i = 0; i <= a.prec(); ++i)
        c[i + 1] = a.coeffs()[i];
    return QSeries(std::move(c));
}

void require_integral(const QSeries& s, const char* what) {
    if (!s.is_integral()) {
        std::ostringstream os;
        os << what << ": expansion has a non-integral coefficient";
        throw InternalError(os.str());
    }
}

}  // namespace

QSeries delta_series(std::size_t prec) {
    if (prec < 1) throw InputError("delta_series requires prec >= 1");
    const std::size_t m = prec - 1;
    const QSeries eta = eta_product(m);
    QSeries r = QSeries::one(m);
    for (int i = 0; i < 24; ++i) r = mul(r, eta);
    QSeries d = shift_up(r);
    require_integral(d, "delta");
    return d;
}

QSeries x0_11_series(std::size_t prec) {
    if (prec < 1) throw InputError("x0_11_series requires prec >= 1");
    const std::size_t m = prec - 1;
    const QSeries e1 = eta_product(m);
    const QSeries e11 = eta_product(m, 11);
    QSeries r = mul(mul(e1, e1), mul(e11, e11));
    QSeries f = shift_up(r);
    require_integral(f, "x0-11");
    return f;
}

QSeries kohnen_lift(std::size_t prec) {
    if (prec < 1) throw InputError("kohnen_lift requires prec >= 1");
    // dilate(., 4) of a series of precision m is determined through 4m+3,
    // so m = prec/4 suffices to cover q^prec.
    const std::size_t m = prec / 4;
    const QSeries g4 = g4_series(m);
    const QSeries th = theta_series(prec);
    const QSeries a = mul(dilate(g4, 4), q_derivative(th));
    const QSeries b = mul(dilate(q_derivative(g4), 4), th);
    QSeries g = lincomb(a, 120, b, -60);
    require_integral(g, "kohnen-lift");
    if (sgn(g.coeff(0)) != 0)
        throw InternalError("kohnen-lift: nonzero constant term in a cusp form");
    return g;
}

QSeries form_series(FormId id, std::size_t prec) {
    switch (id) {
        case FormId::Delta: return delta_series(prec);
        case FormId::G4: return g4_series(prec);
        case FormId::Theta: return theta_series(prec);
        case FormId::X0_11: return x0_11_series(prec);
        case FormId::KohnenLift: return kohnen_lift(prec);
    }
    throw InternalError("unhandled form tag");
}

PlusCoefficient::PlusCoefficient(std::uint64_t n, mpz_class v)
    : index(n), value(std::move(v)) {
    if (n == 0) throw InputError("plus-space coefficients are indexed from 1");
    if ((n % 4 == 2 || n % 4 == 3) && value != 0) {
        std::ostringstream os;
        os << "plus-space support violated: c_" << n << " = " << value
           << " but " << n << " = " << n % 4 << " (mod 4)";
        throw InternalError(os.str());
    }
}

PlusCoefficient plus_coeff(const QSeries& kohnen, std::uint64_t n) {
    if (n == 0) throw InputError("plus_coeff requires n >= 1");
    const mpq_class& c = kohnen.coeff(n);
    if (c.get_den() != 1)
        throw InternalError("plus_coeff: non-integral coefficient");
    return PlusCoefficient(n, mpz_class(mpq_numref(c.get_mpq_t())));
}

PlusCoefficient plus_coeff(std::uint64_t n) {
    if (n == 0) throw InputError("plus_coeff requires n >= 1");
    return plus_coeff(kohnen_lift(n), n);
}

}  // namespace twistsha
