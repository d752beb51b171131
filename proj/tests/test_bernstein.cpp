// Tests for the Bernstein-function catalog: grammar parsing, closed-form
// evaluators against frozen high-precision references (mpmath, 30 digits),
// internal consistency between densities/tails/partners, Sonine identities,
// and the integrability-condition probes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bgm/bernstein.hpp"
#include "bgm/quadrature.hpp"

using namespace bgm;

namespace {

void check_rel(double value, double reference, double tol) {
  CHECK(value == doctest::Approx(reference).epsilon(tol).scale(0.0));
}

}  // namespace

TEST_CASE("grammar round-trips to canonical names") {
  CHECK(make_family("stable:alpha=0.5")->name() == "stable:alpha=0.5");
  CHECK(make_family(" stable : alpha = 0.5 ")->name() == "stable:alpha=0.5");
  CHECK(make_family("tempered1:lambda=1.0,alpha=0.5")->name() ==
        "tempered1:alpha=0.5,lambda=1");
  CHECK(make_family("ml:alpha=0.3,beta=0.7")->name() == "ml:alpha=0.3,beta=0.7");
  CHECK(make_family("gamma")->name() == "gamma");
  CHECK(make_family("exponential")->name() == "exponential");
  CHECK(make_family("composite:alpha=0.4,beta=0.8")->name() ==
        "composite:alpha=0.4,beta=0.8");
  CHECK(make_family("distorder:alphas=0.3|0.6,weights=0.5|0.5")->name() ==
        "distorder:alphas=0.3|0.6,weights=0.5|0.5");
  // Weights default to equal and are normalized.
  CHECK(make_family("distorder:alphas=0.3|0.6")->name() ==
        "distorder:alphas=0.3|0.6,weights=0.5|0.5");
  CHECK(make_family("distorder:alphas=0.3|0.6,weights=2|2")->name() ==
        "distorder:alphas=0.3|0.6,weights=0.5|0.5");
}

TEST_CASE("grammar rejects malformed or out-of-range input") {
  CHECK_THROWS_AS((void)make_family("weibull:k=1"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("stable"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("stable:alpha=2.0"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("stable:alpha=0"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("stable:alpha=0.5,beta=1"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("stable:alpha=0.5,alpha=0.6"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("stable:alpha=abc"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("ml:alpha=0.7,beta=0.3"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("gamma:alpha=1"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("tempered1:alpha=0.5,lambda=-1"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("composite:alpha=0.8,beta=0.4"), std::invalid_argument);
  // Mixed orders across 1 and the boundary order itself are rejected.
  CHECK_THROWS_AS((void)make_family("distorder:alphas=0.3|1.5"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("distorder:alphas=0.3|1"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("distorder:alphas=0.3|0.6,weights=0.5"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_family("distorder:alphas=0.3|0.6,weights=0.5|-0.5"), std::invalid_argument);
  CHECK_THROWS_AS((void)flavor_from_string("fourier"), std::invalid_argument);
}

TEST_CASE("phi closed forms") {
  check_rel(make_family("stable:alpha=0.5")->phi(4.0), std::pow(4.0, 0.25), 1e-15);
  check_rel(make_family("stable:alpha=1.5")->phi(9.0), std::sqrt(3.0), 1e-15);
  CHECK(make_family("stable:alpha=1")->phi(7.3) == 1.0);
  check_rel(make_family("tempered1:alpha=0.5,lambda=1")->phi(3.0),
            3.0 * std::pow(4.0, -0.75), 1e-15);
  check_rel(make_family("tempered2:alpha=0.3,lambda=1")->phi(2.0),
            std::pow(3.0, 0.3) - 1.0, 1e-14);
  // expm1/log1p path keeps precision for tiny arguments: phi ~ alpha*x/lambda.
  check_rel(make_family("tempered2:alpha=0.3,lambda=1")->phi(1e-18), 0.3e-18, 1e-9);
  check_rel(make_family("ml:alpha=0.3,beta=0.7")->phi(1.0), 0.5, 1e-15);
  check_rel(make_family("gamma")->phi(std::numbers::e - 1.0), 1.0, 1e-14);
  check_rel(make_family("exponential")->phi(3.0), 0.75, 1e-15);
  // Mixture: phi = 0.5 x^{0.35} + 0.5 x^{0.2} (derivative side).
  check_rel(make_family("distorder:alphas=0.3|0.6")->phi(2.0),
            0.5 * std::pow(2.0, 0.35) + 0.5 * std::pow(2.0, 0.2), 1e-15);
  check_rel(make_family("distorder:alphas=1.3|1.7")->phi(2.0),
            1.0 / (0.5 * std::pow(2.0, -0.15) + 0.5 * std::pow(2.0, -0.35)), 1e-15);
}

TEST_CASE("composite phi equals the reciprocal Laplace transform of kappa") {
  auto fam = make_family("composite:alpha=0.4,beta=0.8");
  check_rel(fam->phi(0.5), 1.0 / 2.03625953357133005, 1e-12);
  check_rel(fam->phi(1.0), 1.0 / 1.43590526364275384, 1e-12);
  check_rel(fam->phi(5.0), 1.0 / 5.66904153126769561e-01, 1e-12);
}

TEST_CASE("ratio-curve example kernels") {
  auto ex54 = make_example54(0.5);
  CHECK(ex54->name() == "example54:delta=0.5");
  // ktilde(1) = lgamma_low(0.5,1) + E1(1), both frozen references.
  check_rel(ex54->phi(1.0), 1.0 / (1.49364826562485398 + 2.19383934395520508e-01),
            1e-12);
  check_rel(ex54->kappa(0.25), 2.0, 1e-15);
  check_rel(ex54->kappa(4.0), 0.25, 1e-15);
  check_rel(ex54->chi(0.25), 1.0, 1e-15);             // 2 * 0.25^{0.5}
  check_rel(ex54->chi(4.0), 2.0 + std::log(4.0), 1e-15);
  check_rel(ex54->chi_increment(2.0, 3.0), std::log(2.5), 1e-14);
  CHECK_THROWS_AS((void)ex54->phi_mod2(1.0), UnsupportedEvaluator);
  CHECK_THROWS_AS((void)make_example54(1.5), std::invalid_argument);

  auto ex55 = make_example55();
  const double e = std::numbers::e;
  check_rel(ex55->kappa(e * e), 1.0 / (2.0 * e), 1e-14);
  check_rel(ex55->chi(e), 2.0 * std::sqrt(e), 1e-15);
  // chi(e^{2.4}) - chi(e) = Ei(1.2) - Ei(0.5), frozen references.
  check_rel(ex55->chi(std::exp(2.4)) - ex55->chi(e),
            2.44209228519265142 - 4.54219904863173540e-01, 1e-13);
  CHECK(ex55->flavor_supported(Flavor::integral));
  CHECK_FALSE(ex55->flavor_supported(Flavor::derivative));
  // Tail remainder decreases in U and scales like t^2/log U.
  double r1 = ex55->chi_inc_sq_tail_remainder(1e8, 1.0);
  double r2 = ex55->chi_inc_sq_tail_remainder(1e12, 1.0);
  CHECK(r1 > r2);
  check_rel(r1, 1.0 / std::log(1e8), 1e-6);
}

TEST_CASE("Levy tails and densities against frozen references") {
  // stable: nu(s) = s^{-1/4}/Gamma(3/4).
  check_rel(make_family("stable:alpha=0.5")->nu(0.5), 9.70451204566076697e-01, 1e-13);
  CHECK(make_family("stable:alpha=1")->nu(0.123) == 1.0);
  CHECK(make_family("stable:alpha=1")->nu_bar(0.123) == 0.0);
  // gamma: nu = E1, nu_bar = e^{-s}/s.
  check_rel(make_family("gamma")->nu(1.0), 2.19383934395520508e-01, 1e-13);
  check_rel(make_family("gamma")->nu_bar(2.0), std::exp(-2.0) / 2.0, 1e-15);
  // ml: nu(s) = s^{beta-1} E_{alpha,beta}(-s^alpha) at s = 1.
  check_rel(make_family("ml:alpha=0.3,beta=0.7")->nu(1.0), 3.13788775536875342e-01, 1e-11);
  // ml density via E_{alpha,beta-1}: pick s with s^alpha = 0.7.
  {
    double s0 = std::pow(0.7, 1.0 / 0.3);
    check_rel(make_family("ml:alpha=0.3,beta=0.7")->nu_bar(s0),
              std::pow(s0, -1.3) * 1.77268901229105103e-01, 1e-10);
  }
  // tempered2: nu(s) = alpha lambda^alpha uGamma(-alpha, lambda s)/Gamma(1-alpha).
  check_rel(make_family("tempered2:alpha=0.3,lambda=1")->nu(0.5),
            0.3 * 5.74523998439523398e-01 / std::tgamma(0.7), 1e-12);
  // tempered1 closed forms.
  check_rel(make_family("tempered1:alpha=0.5,lambda=1")->nu(2.0),
            std::exp(-2.0) * std::pow(2.0, -0.25) / std::tgamma(0.75), 1e-14);
  check_rel(make_family("tempered1:alpha=0.5,lambda=1")->nu_bar(2.0),
            std::exp(-2.0) * (std::pow(2.0, -0.25) + 0.25 * std::pow(2.0, -1.25)) /
                std::tgamma(0.75),
            1e-14);
}

TEST_CASE("nu is the integral of nu_bar") {
  // Exponentially decaying densities: the half-line integral converges fast.
  for (const char* spec : {"tempered1:alpha=0.5,lambda=1",
                           "tempered2:alpha=0.3,lambda=1", "gamma", "exponential"}) {
    auto fam = make_family(spec);
    for (double s : {0.7, 2.5}) {
      double tail = quad::integrate_to_inf([&](double u) { return fam->nu_bar(u); }, s);
      check_rel(fam->nu(s), tail, 1e-9);
    }
  }
  // Power-law densities: check the same identity in difference form on a
  // finite window (plain quadrature cannot certify a slow algebraic tail).
  for (const char* spec : {"stable:alpha=0.5", "ml:alpha=0.3,beta=0.7",
                           "distorder:alphas=0.3|0.6"}) {
    auto fam = make_family(spec);
    for (double s : {0.7, 2.5}) {
      double block = quad::integrate([&](double u) { return fam->nu_bar(u); }, s, 40.0);
      check_rel(fam->nu(s) - fam->nu(40.0), block, 1e-9);
    }
  }
}

TEST_CASE("chi is the integral of kappa") {
  // Families with closed-form kappa (gamma's kappa is too singular at 0 for
  // this bare check and is covered by the Sonine identity instead).
  struct Case {
    FamilyPtr fam;
    double split;  // interior kink (0 if none)
  };
  for (const auto& c : {Case{make_family("stable:alpha=1.5"), 0.0},
                        Case{make_family("ml:alpha=0.3,beta=0.9"), 0.0},
                        Case{make_family("distorder:alphas=1.3|1.7"), 0.0},
                        Case{make_family("composite:alpha=0.4,beta=0.8"), 1.0},
                        Case{make_example54(0.5), 1.0},
                        Case{make_example55(), std::numbers::e}}) {
    for (double x : {0.6, 3.7}) {
      double direct;
      auto kap = [&](double z) { return c.fam->kappa(z); };
      if (c.split > 0.0 && x > c.split)
        direct = quad::integrate_power0(kap, c.split, 8) +
                 quad::integrate(kap, c.split, x);
      else
        direct = quad::integrate_power0(kap, x, 8);
      check_rel(c.fam->chi(x), direct, 1e-10);
    }
  }
}

TEST_CASE("closed-form kappa/chi values") {
  auto st = make_family("stable:alpha=1.5");
  check_rel(st->kappa(2.0), std::pow(2.0, -0.75) / std::tgamma(0.25), 1e-14);
  check_rel(st->chi(2.0), std::pow(2.0, 0.25) / std::tgamma(1.25), 1e-14);
  auto ml = make_family("ml:alpha=0.3,beta=0.9");
  check_rel(ml->kappa(2.0),
            std::pow(2.0, -0.6) / std::tgamma(0.4) + std::pow(2.0, -0.9) / std::tgamma(0.1),
            1e-14);
  // gamma family kappa/chi (numerical, cancellation-free integrand).
  auto g = make_family("gamma");
  check_rel(g->kappa(0.5), 1.10910302636304459, 1e-11);
  check_rel(g->kappa(1.0), 1.03292094757525743, 1e-11);
  check_rel(g->kappa(5.0), 1.00009430371901753, 1e-11);
  check_rel(g->chi(0.5), 9.50498943442737332e-01, 1e-11);
  check_rel(g->chi(1.0), 1.48120380451528977, 1e-11);
  check_rel(g->chi(5.0), 5.49992254951244597, 1e-11);
}

TEST_CASE("increments match quadrature of the underlying density") {
  // nu_increment(w,t) = -int_w^{w+t} nu_bar.
  for (const char* spec : {"stable:alpha=0.5", "distorder:alphas=0.3|0.6",
                           "tempered1:alpha=0.5,lambda=1", "gamma", "exponential"}) {
    auto fam = make_family(spec);
    double direct = -quad::integrate([&](double u) { return fam->nu_bar(u); }, 3.0, 4.0);
    check_rel(fam->nu_increment(3.0, 1.0), direct, 1e-11);
  }
  // chi_increment(w,t) = int_w^{w+t} kappa. The reference quadrature is split
  // at interior kinks of kappa so each piece is analytic.
  struct Case {
    FamilyPtr fam;
    double split;  // interior kink (0 if none)
  };
  for (const auto& c : {Case{make_family("stable:alpha=1.5"), 0.0},
                        Case{make_family("ml:alpha=0.3,beta=0.9"), 0.0},
                        Case{make_family("composite:alpha=0.4,beta=0.8"), 1.0},
                        Case{make_example54(0.5), 1.0},
                        Case{make_example55(), std::numbers::e}}) {
    auto kap_int = [&](double a, double b) {
      auto k = [&](double z) { return c.fam->kappa(z); };
      if (c.split > a && c.split < b)
        return quad::integrate(k, a, c.split) + quad::integrate(k, c.split, b);
      return quad::integrate(k, a, b);
    };
    check_rel(c.fam->chi_increment(2.5, 1.0), kap_int(2.5, 3.5), 1e-11);
    check_rel(c.fam->chi_increment(0.5, 3.5), kap_int(0.5, 4.0), 1e-9);
  }
}

TEST_CASE("increments stay accurate far into the tail") {
  // First-order expansion g(w+t)-g(w) ~ g'(w) t with relative correction
  // O(t/w): at w = 1e12 the naive difference has no correct digits left.
  auto st = make_family("stable:alpha=0.5");
  double w = 1e12, t = 1.0;
  double lead = -0.25 * std::pow(w, -1.25) / std::tgamma(0.75) * t;
  check_rel(st->nu_increment(w, t), lead, 1e-11);
  auto ml = make_family("ml:alpha=0.3,beta=0.9");
  double leadc = ml->kappa(w) * t;
  check_rel(ml->chi_increment(w, t), leadc, 1e-11);
  auto e55 = make_example55();
  check_rel(e55->chi_increment(1e7, 1.0), e55->kappa(1e7 + 0.5), 1e-7);
}

TEST_CASE("Fourier symbol squared modulus") {
  check_rel(make_family("stable:alpha=0.5")->phi_mod2(2.0), 1.41421356237309515, 1e-14);
  check_rel(make_family("gamma")->phi_mod2(1.0), 7.36963528547635249e-01, 1e-13);
  check_rel(make_family("exponential")->phi_mod2(1.0), 0.5, 1e-15);
  check_rel(make_family("tempered1:alpha=0.5,lambda=1")->phi_mod2(1.5),
            9.29544097251686630e-01, 1e-13);
  check_rel(make_family("tempered2:alpha=0.3,lambda=1")->phi_mod2(1.5),
            1.40391311677183772e-01, 1e-13);
  check_rel(make_family("ml:alpha=0.3,beta=0.7")->phi_mod2(1.5),
            3.79368501693797988e-01, 1e-13);
  check_rel(make_family("distorder:alphas=0.3|0.6")->phi_mod2(1.5),
            1.23371756160777890, 1e-13);
  // Integral flavor: the kernel symbol is 1/|phi(ix)|^2.
  auto dint = make_family("distorder:alphas=1.3|1.7");
  check_rel(dint->fourier_symbol_sq(1.5, Flavor::integral),
            7.97858559478711871e-01, 1e-13);
  check_rel(dint->fourier_symbol_sq(1.5, Flavor::integral) * dint->phi_mod2(1.5),
            1.0, 1e-13);
  auto comp = make_family("composite:alpha=0.4,beta=0.8");
  check_rel(comp->fourier_symbol_sq(0.5, Flavor::integral), 5.18776259976399601, 1e-11);
  check_rel(comp->fourier_symbol_sq(4.0, Flavor::integral), 3.96723966516708715e-01, 1e-11);
  // Derivative flavor of catalog derivative families = phi_mod2 itself.
  auto st = make_family("stable:alpha=0.5");
  CHECK(st->fourier_symbol_sq(2.0, Flavor::derivative) == st->phi_mod2(2.0));
}

TEST_CASE("composite symbol: asymptotic branches join the quadrature branch") {
  // Straddle each switch point by 1e-9 so the function itself is constant to
  // machine precision across the pair and any gap is pure branch mismatch.
  auto comp = make_family("composite:alpha=0.4,beta=0.8");
  auto sym = [&](double x) { return comp->fourier_symbol_sq(x, Flavor::integral); };
  check_rel(sym(0.05 - 1e-9), sym(0.05 + 1e-9), 1e-7);
  check_rel(sym(60.0 - 1e-9), sym(60.0 + 1e-9), 5e-5);
}

TEST_CASE("Sonine identity: direct convolution") {
  for (const char* spec : {"stable:alpha=0.5", "stable:alpha=1.5",
                           "ml:alpha=0.3,beta=0.7", "ml:alpha=0.3,beta=0.9"}) {
    auto fam = make_family(spec);
    for (double t : {0.1, 1.0, 10.0}) {
      CHECK(sonine_residual(*fam, t) < 1e-8);
    }
  }
  CHECK_THROWS_AS((void)sonine_residual(*make_family("gamma"), 1.0), UnsupportedEvaluator);
  CHECK_THROWS_AS((void)sonine_residual(*make_family("exponential"), 1.0),
                  UnsupportedEvaluator);
  CHECK_THROWS_AS((void)sonine_residual(*make_family("composite:alpha=0.4,beta=0.8"), 1.0),
                  UnsupportedEvaluator);
}

TEST_CASE("Sonine identity: integrated form") {
  for (const char* spec : {"stable:alpha=0.5", "ml:alpha=0.3,beta=0.7"}) {
    auto fam = make_family(spec);
    for (double t : {0.1, 1.0, 10.0}) {
      CHECK(integrated_sonine_residual(*fam, t) < 1e-8 * std::max(1.0, t));
    }
  }
  // gamma's kappa ~ 1/(x log^2 x) is directly integrable only in this form.
  auto g = make_family("gamma");
  for (double t : {0.1, 1.0, 10.0}) {
    CHECK(integrated_sonine_residual(*g, t) < 1e-7 * std::max(1.0, t));
  }
  CHECK_THROWS_AS((void)integrated_sonine_residual(*make_example54(0.5), 1.0),
                  UnsupportedEvaluator);
}

TEST_CASE("canonical catalog entries are valid and flavor-consistent") {
  const auto& cat = canonical_catalog();
  CHECK(cat.size() == 11);
  for (const auto& entry : cat) {
    auto fam = make_family(entry.spec);
    CHECK(fam->name() == entry.spec);
    CHECK(fam->flavor_supported(entry.flavor));
    auto s = fam->strategies();
    if (entry.flavor == Flavor::derivative) {
      CHECK(s.nu != Strategy::unavailable);
      CHECK(s.nu_bar != Strategy::unavailable);
    } else {
      CHECK(s.kappa != Strategy::unavailable);
      CHECK(s.chi != Strategy::unavailable);
    }
  }
}

TEST_CASE("flavor support matrix") {
  CHECK(make_family("stable:alpha=0.5")->flavor_supported(Flavor::derivative));
  CHECK_FALSE(make_family("stable:alpha=0.5")->flavor_supported(Flavor::integral));
  CHECK_FALSE(make_family("stable:alpha=1.5")->flavor_supported(Flavor::derivative));
  CHECK(make_family("stable:alpha=1.5")->flavor_supported(Flavor::integral));
  CHECK(make_family("stable:alpha=1")->flavor_supported(Flavor::derivative));
  CHECK_FALSE(make_family("stable:alpha=1")->flavor_supported(Flavor::integral));
  CHECK_FALSE(make_family("tempered1:alpha=0.5,lambda=1")->flavor_supported(Flavor::integral));
  CHECK(make_family("tempered2:alpha=0.3,lambda=1")->flavor_supported(Flavor::derivative));
  CHECK_FALSE(make_family("tempered2:alpha=0.7,lambda=1")->flavor_supported(Flavor::derivative));
  // beta > 1/2 admits the derivative flavor; beta - alpha > 1/2 the integral
  // one; ml:alpha=0.3,beta=0.9 satisfies both.
  CHECK(make_family("ml:alpha=0.3,beta=0.9")->flavor_supported(Flavor::derivative));
  CHECK(make_family("ml:alpha=0.3,beta=0.9")->flavor_supported(Flavor::integral));
  CHECK_FALSE(make_family("ml:alpha=0.3,beta=0.7")->flavor_supported(Flavor::integral));
  CHECK_FALSE(make_family("gamma")->flavor_supported(Flavor::integral));
  CHECK_FALSE(make_family("exponential")->flavor_supported(Flavor::integral));
  CHECK(make_family("composite:alpha=0.4,beta=0.8")->flavor_supported(Flavor::integral));
  CHECK_FALSE(make_family("composite:alpha=0.4,beta=0.8")->flavor_supported(Flavor::derivative));
  CHECK_FALSE(make_family("composite:alpha=0.7,beta=0.8")->flavor_supported(Flavor::integral));
  CHECK(make_family("distorder:alphas=0.3|0.6")->flavor_supported(Flavor::derivative));
  CHECK_FALSE(make_family("distorder:alphas=0.3|0.6")->flavor_supported(Flavor::integral));
  CHECK(make_family("distorder:alphas=1.3|1.7")->flavor_supported(Flavor::integral));
}

TEST_CASE("condition probes: catalog truth table") {
  for (const auto& entry : canonical_catalog()) {
    auto fam = make_family(entry.spec);
    auto rep = check_conditions(*fam, entry.flavor);
    INFO("family " << entry.spec);
    if (entry.flavor == Flavor::derivative) {
      CHECK(rep.a1.verdict == Verdict::pass);
      CHECK(rep.a2.verdict == Verdict::pass);
    } else {
      CHECK(rep.b1.verdict == Verdict::pass);
      CHECK(rep.b2.verdict == Verdict::pass);
      CHECK(rep.cond_k.verdict == Verdict::pass);
      CHECK(rep.cond_c.verdict == Verdict::pass);
    }
  }
}

TEST_CASE("condition probes: honest failures and boundary cases") {
  // exponential: phi is bounded, (C) fails; the derivative flavor rests on
  // (A1)-(A2) which hold.
  auto rep = check_conditions(*make_family("exponential"), Flavor::derivative);
  CHECK(rep.cond_c.verdict == Verdict::fail);
  CHECK(rep.a1.verdict == Verdict::pass);
  CHECK(rep.a2.verdict == Verdict::pass);

  // gamma: kappa tends to a positive constant, so (B1) fails at infinity.
  rep = check_conditions(*make_family("gamma"), Flavor::derivative);
  CHECK(rep.b1.verdict == Verdict::fail);
  CHECK(rep.a1.verdict == Verdict::pass);
  CHECK(rep.a2.verdict == Verdict::pass);

  // Brownian boundary: constant nu, flagged as the degenerate indicator case.
  rep = check_conditions(*make_family("stable:alpha=1"), Flavor::derivative);
  CHECK(rep.a1.verdict == Verdict::pass);
  CHECK(rep.a2.verdict == Verdict::pass);
  CHECK(rep.notes.find("indicator") != std::string::npos);

  // tempered2 with alpha >= 1/2: nu ~ s^{-alpha} is not square integrable
  // near zero.
  auto t2 = make_family("tempered2:alpha=0.7,lambda=1");
  rep = check_conditions(*t2, Flavor::derivative);
  CHECK(rep.a2.verdict == Verdict::fail);

  // composite with alpha >= 2/3: probe downgraded by the analytic override.
  auto comp = make_family("composite:alpha=0.7,beta=0.8");
  rep = check_conditions(*comp, Flavor::integral);
  CHECK(rep.b2.verdict == Verdict::fail);

  // A combination the underlying theory rejects must never read as
  // validated, even when the slope fits alone look clean.
  rep = check_conditions(*make_family("stable:alpha=1.5"), Flavor::derivative);
  CHECK(rep.a1.verdict != Verdict::pass);
  CHECK(rep.a2.verdict != Verdict::pass);
  CHECK(rep.notes.find("downgraded") != std::string::npos);

  // kappa-defined families carry no Levy-side evaluators.
  rep = check_conditions(*make_family("composite:alpha=0.4,beta=0.8"), Flavor::integral);
  CHECK(rep.a1.verdict == Verdict::indeterminate);
  CHECK(rep.a2.verdict == Verdict::indeterminate);
}

TEST_CASE("string conversions") {
  CHECK(to_string(Flavor::derivative) == "derivative");
  CHECK(to_string(Flavor::integral) == "integral");
  CHECK(flavor_from_string("derivative") == Flavor::derivative);
  CHECK(flavor_from_string("integral") == Flavor::integral);
  CHECK(std::string(to_string(Verdict::pass)) == "pass");
  CHECK(std::string(to_string(Verdict::fail)) == "fail");
  CHECK(std::string(to_string(Verdict::indeterminate)) == "indeterminate");
  CHECK(std::string(to_string(Strategy::closed_form)) == "closed-form");
  CHECK(std::string(to_string(Strategy::quadrature)) == "quadrature");
}

TEST_CASE("unsupported evaluators throw") {
  auto exp = make_family("exponential");
  CHECK_THROWS_AS((void)exp->kappa(1.0), UnsupportedEvaluator);
  CHECK_THROWS_AS((void)exp->chi(1.0), UnsupportedEvaluator);
  auto comp = make_family("composite:alpha=0.4,beta=0.8");
  CHECK_THROWS_AS((void)comp->nu(1.0), UnsupportedEvaluator);
  CHECK_THROWS_AS((void)comp->nu_bar(1.0), UnsupportedEvaluator);
  auto st1 = make_family("stable:alpha=1");
  CHECK_THROWS_AS((void)st1->kappa(1.0), UnsupportedEvaluator);
  CHECK_FALSE(st1->has_kappa());
}
