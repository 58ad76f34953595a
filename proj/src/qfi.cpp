#include "qfi/qfi.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfi/parse.hpp"

namespace qfi {

void ExponentialRate::radical(Rational& c, long& m) const {
    squarefree_decompose(mu, c, m);
    if (sign < 0) c = -c;
}

std::complex<double> ExponentialRate::value() const {
    const double mu_value = mu.get_d();
    if (mu_value >= 0) return {sign * std::sqrt(mu_value), 0.0};
    return {0.0, sign * std::sqrt(-mu_value)};
}

std::string ExponentialRate::str() const {
    Rational c;
    long m;
    radical(c, m);
    if (m == 1) return c.get_str();
    std::string root;
    if (m < 0)
        root = (m == -1) ? "i" : "i*sqrt(" + std::to_string(-m) + ")";
    else
        root = "sqrt(" + std::to_string(m) + ")";
    if (c == 1) return root;
    if (c == -1) return "-" + root;
    return c.get_str() + "*" + root;
}

TimeBasis TimeBasis::poly(int power) {
    if (power < 0 || power > 3) throw std::invalid_argument("time powers range over 0..3");
    TimeBasis b;
    b.kind = Kind::Poly;
    b.power = power;
    return b;
}

TimeBasis TimeBasis::exponential(const Rational& mu, int sign) {
    if (rat_sgn_zero(mu)) throw std::invalid_argument("exponential rate must be nonzero");
    TimeBasis b;
    b.kind = Kind::Exp;
    b.rate = ExponentialRate{mu, sign >= 0 ? 1 : -1};
    return b;
}

std::complex<double> TimeBasis::value(double t) const {
    if (kind == Kind::Poly) return {std::pow(t, power), 0.0};
    return std::exp(rate.value() * t);
}

bool operator==(const TimeBasis& a, const TimeBasis& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == TimeBasis::Kind::Poly) return a.power == b.power;
    return a.rate.mu == b.rate.mu && a.rate.sign == b.rate.sign;
}

bool operator<(const TimeBasis& a, const TimeBasis& b) {
    if (a.kind != b.kind) return a.kind == TimeBasis::Kind::Poly;
    if (a.kind == TimeBasis::Kind::Poly) return a.power < b.power;
    if (a.rate.mu != b.rate.mu) return a.rate.mu < b.rate.mu;
    return a.rate.sign > b.rate.sign;
}

QfiTerm::QfiTerm(int dim, TimeBasis basis)
    : time(basis), k2(dim), k1(dim, RingElem(dim)), k0(dim) {}

bool QfiTerm::is_zero() const {
    if (!k2.is_zero() || !k0.is_zero()) return false;
    for (const RingElem& e : k1)
        if (!e.is_zero()) return false;
    return true;
}

bool Qfi::is_zero() const {
    for (const QfiTerm& t : terms)
        if (!t.is_zero()) return false;
    return true;
}

void Qfi::normalize() {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const QfiTerm& a, const QfiTerm& b) { return a.time < b.time; });
    std::vector<QfiTerm> merged;
    for (QfiTerm& term : terms) {
        if (!merged.empty() && merged.back().time == term.time) {
            merged.back().k2 += term.k2;
            for (int a = 0; a < dim; ++a) merged.back().k1[a] += term.k1[a];
            merged.back().k0 += term.k0;
        } else {
            merged.push_back(std::move(term));
        }
    }
    std::erase_if(merged, [](const QfiTerm& t) { return t.is_zero(); });
    terms = std::move(merged);
}

bool operator==(const Qfi& a, const Qfi& b) {
    if (a.dim != b.dim) return false;
    Qfi na = a, nb = b;
    na.normalize();
    nb.normalize();
    if (na.terms.size() != nb.terms.size()) return false;
    for (size_t i = 0; i < na.terms.size(); ++i) {
        const QfiTerm &ta = na.terms[i], &tb = nb.terms[i];
        if (!(ta.time == tb.time) || !(ta.k2 == tb.k2) || ta.k1 != tb.k1 || !(ta.k0 == tb.k0))
            return false;
    }
    return true;
}

Qfi qfi_scale(const Qfi& a, const Rational& s) {
    Qfi out = a;
    for (QfiTerm& term : out.terms) {
        term.k2 *= s;
        for (RingElem& e : term.k1) e *= s;
        term.k0 *= s;
    }
    out.normalize();
    return out;
}

Qfi qfi_add(const Qfi& a, const Qfi& b) {
    if (a.dim != b.dim) throw DimensionError("adding integrals of different dimension");
    Qfi out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    out.normalize();
    return out;
}

std::complex<double> evaluate(const Qfi& I, double t, std::span<const double> q,
                              std::span<const double> v) {
    if (static_cast<int>(q.size()) != I.dim || static_cast<int>(v.size()) != I.dim)
        throw DimensionError("phase point of wrong dimension");
    std::complex<double> total = 0.0;
    for (const QfiTerm& term : I.terms) {
        double quad = 0;
        for (int i = 0; i < I.dim; ++i)
            for (int j = i; j < I.dim; ++j) {
                const RingElem& c = term.k2.at(i, j);
                if (c.is_zero()) continue;
                quad += (i == j ? 1.0 : 2.0) * c.eval(q) * v[i] * v[j];
            }
        double linear = 0;
        for (int a = 0; a < I.dim; ++a)
            if (!term.k1[a].is_zero()) linear += term.k1[a].eval(q) * v[a];
        std::complex<double> block = quad + term.k0.eval(q);
        if (term.time.kind == TimeBasis::Kind::Exp)
            block += term.time.rate.value() * linear;
        else
            block += linear;
        total += term.time.value(t) * block;
    }
    return total;
}

NoetherGenerator::Term::Term(int dim, TimeBasis basis)
    : time(basis), eta_velocity(dim), eta_base(dim, RingElem(dim)), gauge(dim) {}

NoetherGenerator noether_generator(const Qfi& I) {
    NoetherGenerator gen;
    gen.dim = I.dim;
    for (const QfiTerm& term : I.terms) {
        NoetherGenerator::Term g(I.dim, term.time);
        g.eta_velocity = term.k2;
        g.eta_velocity *= Rational(-1);
        for (int a = 0; a < I.dim; ++a) g.eta_base[a] = -term.k1[a];
        g.gauge = term.k0;
        gen.terms.push_back(std::move(g));
    }
    return gen;
}

Qfi qfi_from_generator(const NoetherGenerator& gen) {
    Qfi out(gen.dim);
    for (const NoetherGenerator::Term& g : gen.terms) {
        QfiTerm term(gen.dim, g.time);
        term.k2 = g.eta_velocity;
        term.k2 *= Rational(-1);
        for (int a = 0; a < gen.dim; ++a) term.k1[a] = -g.eta_base[a];
        term.k0 = g.gauge;
        out.terms.push_back(std::move(term));
    }
    return out;
}

namespace {

const char* velocity_names[3] = {"vx", "vy", "vz"};

struct FlatTerm {
    TimeBasis time;
    std::array<int, 3> vel{0, 0, 0};
    Monomial mono;
    Rational coeff;
    bool lambda_factor = false;
};

// Descending by coordinate part, then velocity part; keeps "x*vy - y*vx"
// and "1/2*vx^2 + ... - r^-1" in the conventional reading order.
bool flat_less(const FlatTerm& a, const FlatTerm& b) {
    if (!(a.time == b.time)) return a.time < b.time;
    if (a.mono.q != b.mono.q) return a.mono.q > b.mono.q;
    if (a.mono.r != b.mono.r) return a.mono.r > b.mono.r;
    if (a.vel != b.vel) return a.vel > b.vel;
    return a.lambda_factor < b.lambda_factor;
}

void collect_poly_terms(const TimeBasis& time, const RingElem& coeff, std::array<int, 3> vel,
                        bool lambda_factor, const Rational& scale, std::vector<FlatTerm>& out) {
    for (const auto& [mono, c] : coeff.terms())
        out.push_back(FlatTerm{time, vel, mono, c * scale, lambda_factor});
}

std::string render_flat(const std::vector<FlatTerm>& terms, int dim) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const FlatTerm& t : terms) {
        std::string lambda_str;
        bool lambda_negative = false;
        if (t.lambda_factor) {
            lambda_str = t.time.rate.str();
            if (!lambda_str.empty() && lambda_str[0] == '-') {
                lambda_negative = true;
                lambda_str.erase(lambda_str.begin());
            }
        }
        const bool negative = (sgn(t.coeff) < 0) != lambda_negative;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        const Rational magnitude = abs(t.coeff);
        if (magnitude != 1) factors.push_back(magnitude.get_str());
        if (t.lambda_factor && lambda_str != "1") factors.push_back(lambda_str);
        if (t.time.kind == TimeBasis::Kind::Poly) {
            if (t.time.power == 1) factors.push_back("t");
            if (t.time.power > 1) factors.push_back("t^" + std::to_string(t.time.power));
        } else {
            std::string lam = t.time.rate.str();
            factors.push_back("exp(" + lam + "*t)");
        }
        static const char* coords[3] = {"x", "y", "z"};
        for (int a = 0; a < 3; ++a) {
            if (t.mono.q[a] == 0) continue;
            std::string f = coords[a];
            if (t.mono.q[a] != 1) f += "^" + std::to_string(t.mono.q[a]);
            factors.push_back(f);
        }
        if (t.mono.r != 0) {
            std::string f = "r";
            if (t.mono.r != 1) f += "^" + std::to_string(t.mono.r);
            factors.push_back(f);
        }
        for (int a = 0; a < dim; ++a) {
            if (t.vel[a] == 0) continue;
            std::string f = velocity_names[a];
            if (t.vel[a] != 1) f += "^" + std::to_string(t.vel[a]);
            factors.push_back(f);
        }
        if (factors.empty()) factors.push_back(magnitude.get_str());
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) os << '*';
            os << factors[i];
        }
    }
    return os.str();
}

}  // namespace

std::string canonical_display(const Qfi& I) {
    Qfi n = I;
    n.normalize();
    std::vector<FlatTerm> flat;
    for (const QfiTerm& term : n.terms) {
        for (int i = 0; i < n.dim; ++i)
            for (int j = i; j < n.dim; ++j) {
                std::array<int, 3> vel{0, 0, 0};
                vel[i] += 1;
                vel[j] += 1;
                collect_poly_terms(term.time, term.k2.at(i, j), vel, false,
                                   i == j ? Rational(1) : Rational(2), flat);
            }
        const bool lambda = term.time.kind == TimeBasis::Kind::Exp;
        for (int a = 0; a < n.dim; ++a) {
            std::array<int, 3> vel{0, 0, 0};
            vel[a] = 1;
            collect_poly_terms(term.time, term.k1[a], vel, lambda, Rational(1), flat);
        }
        collect_poly_terms(term.time, term.k0, {0, 0, 0}, false, Rational(1), flat);
    }
    std::sort(flat.begin(), flat.end(), flat_less);
    return render_flat(flat, n.dim);
}

std::string display(const NoetherGenerator& gen) {
    // eta_a = sum_blocks time(t) (eta_velocity_ab v^b + eta_base_a); on
    // exponential blocks the base part carries the lambda cofactor, the
    // velocity part does not.
    std::ostringstream os;
    os << "eta = (";
    for (int a = 0; a < gen.dim; ++a) {
        if (a) os << ", ";
        std::vector<FlatTerm> flat;
        for (const NoetherGenerator::Term& g : gen.terms) {
            for (int b = 0; b < gen.dim; ++b) {
                std::array<int, 3> vel{0, 0, 0};
                vel[b] = 1;
                collect_poly_terms(g.time, g.eta_velocity.at(a, b), vel, false, Rational(1), flat);
            }
            collect_poly_terms(g.time, g.eta_base[a], {0, 0, 0},
                               g.time.kind == TimeBasis::Kind::Exp, Rational(1), flat);
        }
        std::sort(flat.begin(), flat.end(), flat_less);
        os << render_flat(flat, gen.dim);
    }
    os << "), f = ";
    std::vector<FlatTerm> flat;
    for (const NoetherGenerator::Term& g : gen.terms)
        collect_poly_terms(g.time, g.gauge, {0, 0, 0}, false, Rational(1), flat);
    std::sort(flat.begin(), flat.end(), flat_less);
    os << render_flat(flat, gen.dim);
    return os.str();
}

std::string qfi_to_json(const Qfi& I) {
    nlohmann::json out;
    out["dim"] = I.dim;
    out["terms"] = nlohmann::json::array();
    for (const QfiTerm& term : I.terms) {
        nlohmann::json jt;
        if (term.time.kind == TimeBasis::Kind::Poly) {
            jt["time"] = {{"poly", term.time.power}};
        } else {
            jt["time"] = {{"exp_lambda2", term.time.rate.mu.get_str()},
                          {"sign", term.time.rate.sign}};
        }
        nlohmann::json k2 = nlohmann::json::array();
        for (int i = 0; i < I.dim; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < I.dim; ++j) row.push_back(term.k2.at(i, j).str());
            k2.push_back(row);
        }
        jt["k2"] = k2;
        nlohmann::json k1 = nlohmann::json::array();
        for (int a = 0; a < I.dim; ++a) k1.push_back(term.k1[a].str());
        jt["k1"] = k1;
        jt["k0"] = term.k0.str();
        out["terms"].push_back(jt);
    }
    return out.dump();
}

Qfi qfi_from_json_text(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int dim = j.at("dim").get<int>();
    if (dim != 2 && dim != 3) throw DimensionError("supported dimensions are 2 and 3");
    Qfi out(dim);
    for (const auto& jt : j.at("terms")) {
        TimeBasis time = TimeBasis::poly(0);
        const auto& jtime = jt.at("time");
        if (jtime.contains("poly")) {
            time = TimeBasis::poly(jtime.at("poly").get<int>());
        } else {
            Rational mu = rational_from_string(jtime.at("exp_lambda2").get<std::string>());
            time = TimeBasis::exponential(mu, jtime.at("sign").get<int>());
        }
        QfiTerm term(dim, time);
        const auto& k2 = jt.at("k2");
        for (int i = 0; i < dim; ++i)
            for (int j2 = i; j2 < dim; ++j2)
                term.k2.at(i, j2) = parse_ring_elem(k2.at(i).at(j2).get<std::string>(), dim);
        for (int a = 0; a < dim; ++a)
            term.k1[a] = parse_ring_elem(jt.at("k1").at(a).get<std::string>(), dim);
        term.k0 = parse_ring_elem(jt.at("k0").get<std::string>(), dim);
        out.terms.push_back(std::move(term));
    }
    out.normalize();
    return out;
}

}  // namespace qfi
