#include "fsas/regime.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fsas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// max{2, d/(alpha-1)}, read as +inf when alpha <= 1.
double q_floor(int d, double alpha) {
    if (alpha <= 1.0) return kInf;
    return std::max(2.0, d / (alpha - 1.0));
}

// 2d/(d-alpha), read as +inf when alpha >= d.
double q_cap_2d(int d, double alpha) {
    if (alpha >= d) return kInf;
    return 2.0 * d / (d - alpha);
}
}  // namespace

void RegimeQuery::validate() const {
    if (d < 1) throw std::invalid_argument("RegimeQuery: d must be >= 1");
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("RegimeQuery: alpha must be in (0, 2]");
    if (!(q >= 2.0) || std::isinf(q))
        throw std::invalid_argument("RegimeQuery: q must be a finite value >= 2");
    if (!(q0 >= 2.0)) throw std::invalid_argument("RegimeQuery: q0 must be >= 2");
    if (q > q0) throw std::invalid_argument("RegimeQuery: q must not exceed q0");
    if (!(p >= 2.0)) throw std::invalid_argument("RegimeQuery: p must be >= 2");
    if (std::isinf(q0) && delta != 0.0)
        throw std::invalid_argument("RegimeQuery: q0 = infinity is allowed only with delta = 0");
    ModeCategory cat{mode};
    if (!cat.admits(delta))
        throw std::invalid_argument(std::string("RegimeQuery: delta below the floor of ") +
                                    mode_name(mode));
}

double alpha0(int d) {
    if (d < 1) throw std::invalid_argument("alpha0: d must be >= 1");
    return 1.0 + (d - 1) / 3.0;
}

ExponentRecord admissible_exponents(const RegimeQuery& qr) {
    qr.validate();
    const double d = qr.d;
    ExponentRecord rec;
    rec.beta_max = 0.5 * qr.alpha - 0.5 * d + d / qr.q;
    rec.beta_nonpositive = rec.beta_max <= 0.0;
    const double delta1_raw = qr.alpha - 1.0 - d / qr.q;
    if (delta1_raw >= 0.0) rec.delta1_max = std::min(qr.delta, delta1_raw);
    const double q_star = qr.q / (qr.q - 1.0);
    rec.delta_prime_min = std::max(qr.alpha, 1.0 + d / q_star);
    rec.eta_min = std::max(1.0 + d / qr.q, 0.5 * qr.alpha - 0.5 * d + d / q_star);
    rec.delta_dprime_min = qr.alpha + 1.0 + d / qr.q - qr.delta;
    return rec;
}

RegimeCertificate regime_classify(const RegimeQuery& qr) {
    qr.validate();
    RegimeCertificate cert;
    cert.query = qr;

    const int d = qr.d;
    const double a = qr.alpha;
    const double q = qr.q;
    const double q0 = qr.q0;
    const ExponentRecord exps = admissible_exponents(qr);

    // --- global mild solution (free divergence & subcritical) -------------
    {
        std::vector<std::string> why;
        if (qr.mode != ModeTag::Ca) why.push_back("global_mild: mode is not C_a");
        if (d > 3) why.push_back("global_mild: d outside {1,2,3}");
        if (d <= 3 && !(a > alpha0(d))) why.push_back("global_mild: alpha <= alpha0(d)");
        if (d <= 3 && a > alpha0(d) && !(q0 >= q_floor(d, a)))
            why.push_back("global_mild: q0 < max{2, d/(alpha-1)}");

        if (why.empty()) {
            std::string clause;
            if (d == 1) {
                if (std::max(2.0, 1.0 / (a - 1.0)) <= q && q <= q0)
                    clause = "Theorem 3.1 clause (1)";
            } else {
                const double q_c = 3.0 * d / (d - 1.0);
                if (d / (a - 1.0) < q && q <= q_c && q_c <= q0)
                    clause = "Theorem 3.1 clause (2)";
                else if (q_c <= q && q <= std::min(q0, q_cap_2d(d, a)) && d - 2.0 * d / q < a)
                    clause = "Theorem 3.1 case 1";
                else if (d / (a - 1.0) < q && q <= q0 && q0 <= q_c && 1.0 + d / q < a)
                    clause = "Theorem 3.1 case 2";
            }
            if (!clause.empty()) {
                cert.global_mild = {true, clause};
            } else {
                why.push_back("global_mild: q outside clauses (1)/(2) and cases 1/2");
            }
        }
        for (auto& w : why) cert.notes.push_back(std::move(w));
    }

    // --- local mild solution (general mode & subcritical) -----------------
    {
        std::vector<std::string> why;
        if (!(a > 1.0 + d / q)) why.push_back("local_mild: alpha <= 1+d/q");
        if (!(q_floor(d, a) <= q)) why.push_back("local_mild: q < max{2, d/(alpha-1)}");
        if (!(q0 >= q_floor(d, a))) why.push_back("local_mild: q0 < max{2, d/(alpha-1)}");
        if (why.empty())
            cert.local_mild = {true, "Theorem 3.2"};
        else
            for (auto& w : why) cert.notes.push_back(std::move(w));
    }

    // --- martingale solution (general regime & free divergence) -----------
    {
        if (qr.mode == ModeTag::Ca) {
            cert.martingale = {true, "Theorem 3.3"};
            const bool band = d * (1.0 - 2.0 / q) <= a;
            const bool small_d = d <= a && q <= q0;
            const bool large_d = d > a && q <= std::min(q0, q_cap_2d(d, a));
            cert.martingale_extended = band && (small_d || large_d);
        } else {
            cert.notes.push_back("martingale: mode is not C_a");
        }
    }

    // Exponent bounds are attached only where a granting clause defines them.
    if (cert.global_mild.granted || cert.martingale.granted) {
        cert.beta_max = exps.beta_max;
        cert.beta_nonpositive = exps.beta_nonpositive;
        cert.delta_prime_min = exps.delta_prime_min;
    }
    if (cert.global_mild.granted || cert.local_mild.granted)
        cert.delta1_max = exps.delta1_max;
    if (cert.local_mild.granted) cert.delta_dprime_min = exps.delta_dprime_min;
    if (cert.martingale.granted) cert.eta_min = exps.eta_min;

    return cert;
}

std::string RegimeCertificate::text() const {
    std::ostringstream os;
    os << "regime query: d=" << query.d << " alpha=" << query.alpha
       << " mode=" << mode_name(query.mode) << " q=" << query.q << " q0=" << query.q0
       << " p=" << query.p << " delta=" << query.delta << "\n";
    auto line = [&](const char* name, const Verdict& v) {
        os << "  " << name << ": " << (v.granted ? "granted" : "denied");
        if (v.granted) os << " [" << v.clause << "]";
        os << "\n";
    };
    line("global_mild", global_mild);
    line("local_mild", local_mild);
    line("martingale", martingale);
    if (martingale.granted)
        os << "  extended-q regularity: " << (martingale_extended ? "yes" : "no") << "\n";
    if (beta_max) {
        os << "  beta_max = " << *beta_max;
        if (beta_nonpositive) os << "  (not positive: no positive-order regularity gain)";
        os << "\n";
    }
    if (delta1_max) os << "  delta1_max = " << *delta1_max << "\n";
    if (delta_prime_min) os << "  delta_prime_min = " << *delta_prime_min << "\n";
    if (eta_min) os << "  eta_min = " << *eta_min << "\n";
    if (delta_dprime_min) os << "  delta_dprime_min = " << *delta_dprime_min << "\n";
    for (const auto& n : notes) os << "  note: " << n << "\n";
    return os.str();
}

}  // namespace fsas
