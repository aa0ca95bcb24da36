#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsas/velocity.hpp"

namespace fsas {

// Inputs of the well-posedness decision procedure. q0 and the norms may be
// infinite; q0 = infinity requires delta = 0, and delta must respect the
// mode's floor (> 1/2 for C_c).
struct RegimeQuery {
    int d = 2;
    double alpha = 1.5;
    ModeTag mode = ModeTag::Ca;
    double q = 2.0;
    double q0 = 2.0;
    double p = 2.0;
    double delta = 0.0;

    void validate() const;
};

// alpha_0(d) = 1 + (d - 1)/3, the global well-posedness threshold.
double alpha0(int d);

// Exponent bounds printed by the theorems, evaluated at the query:
//   beta_max        = alpha/2 - d/2 + d/q
//   delta1_max      = min(delta, alpha - 1 - d/q)   (absent when negative)
//   delta_prime_min = max(alpha, 1 + d/q*),  q* = q/(q-1)
//   eta_min         = max(1 + d/q, alpha/2 - d/2 + d/q*)
//   delta_dprime_min= alpha + 1 + d/q - delta
struct ExponentRecord {
    double beta_max = 0.0;
    bool beta_nonpositive = false;
    std::optional<double> delta1_max;
    double delta_prime_min = 0.0;
    double eta_min = 0.0;
    double delta_dprime_min = 0.0;
};

ExponentRecord admissible_exponents(const RegimeQuery& qr);

struct Verdict {
    bool granted = false;
    std::string clause;  // the single clause that grants the verdict
};

struct RegimeCertificate {
    RegimeQuery query;
    Verdict global_mild;
    Verdict local_mild;
    Verdict martingale;
    bool martingale_extended = false;  // extended-q regularity recorded

    // Bounds attached only when a granting clause defines them.
    std::optional<double> beta_max;
    bool beta_nonpositive = false;
    std::optional<double> delta1_max;
    std::optional<double> delta_prime_min;
    std::optional<double> eta_min;
    std::optional<double> delta_dprime_min;

    std::vector<std::string> notes;  // unmet conditions

    std::string text() const;
};

// Decision procedure for {global mild, local mild, martingale}; total on
// every valid query, with unmet conditions listed in notes.
RegimeCertificate regime_classify(const RegimeQuery& qr);

}  // namespace fsas
