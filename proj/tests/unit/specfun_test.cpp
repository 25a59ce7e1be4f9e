// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <string>

#include <gtest/gtest.h>

#include "stablespec/specfun/specfun.hpp"

using namespace stablespec;
using specfun::AlphaParams;

namespace {

struct OracleRow {
  const char* fn;
  double alpha;
  double x;
  int k;  // derivative order, or n for P and V
  double value;
};

// tests/oracles/specfun_oracle.py, 90-digit mpmath.
const OracleRow kRows[] = {
    {"calJ", 1.1, 0.5, 0, 0.65655322918779981473},
    {"calJ", 1.1, 0.5, 1, -0.67654073334137741521},
    {"calJ", 1.1, 0.5, 2, 0.47721849648766830847},
    {"calJ", 1.1, 1, 0, 0.3766010097264464575},
    {"calJ", 1.1, 1, 1, -0.4498464508885558063},
    {"calJ", 1.1, 1, 2, 0.40465742232778345789},
    {"calJ", 1.1, 2.9, 0, -0.00090816731262206709492},
    {"calJ", 1.1, 2.9, 1, -0.052699746305533517453},
    {"calJ", 1.1, 2.9, 2, 0.074654470780766695154},
    {"calJ", 1.1, 3.1, 0, -0.010057875760068338193},
    {"calJ", 1.1, 3.1, 1, -0.039288521043258689068},
    {"calJ", 1.1, 3.1, 2, 0.059912197619047147828},
    {"calJ", 1.1, 8, 0, -0.013945687619300973642},
    {"calJ", 1.1, 8, 1, 0.0029394908465603145131},
    {"calJ", 1.1, 8, 2, -0.0010706922165995960335},
    {"calJ", 1.1, 15, 0, -0.0056084134197599397676},
    {"calJ", 1.1, 15, 1, 0.00047367788961521491631},
    {"calJ", 1.1, 15, 2, -0.000078529077953207241014},
    {"calJ", 1.1, 36, 0, -0.0019688245644924258702},
    {"calJ", 1.1, 36, 1, 0.000062986775908729415841},
    {"calJ", 1.1, 36, 2, -3.8600446560094530569e-6},
    {"calJ", 1.1, 44, 0, -0.0015643654049420846696},
    {"calJ", 1.1, 44, 1, 0.000040554300126465004522},
    {"calJ", 1.1, 44, 2, -2.0120228573667058008e-6},
    {"calJ", 1.5, 0.5, 0, 0.83528411586006610039},
    {"calJ", 1.5, 0.5, 1, -0.75351138211829564257},
    {"calJ", 1.5, 0.5, 2, -0.38609775123876087649},
    {"calJ", 1.5, 1, 0, 0.43935910651117163919},
    {"calJ", 1.5, 1, 1, -0.78264383384890969553},
    {"calJ", 1.5, 1, 2, 0.19196185868515772189},
    {"calJ", 1.5, 2.9, 0, -0.3321176939080469493},
    {"calJ", 1.5, 2.9, 1, -0.015812632504283383311},
    {"calJ", 1.5, 2.9, 2, 0.30357506312784027527},
    {"calJ", 1.5, 3.1, 0, -0.32956955414105018145},
    {"calJ", 1.5, 3.1, 1, 0.039482119260638393715},
    {"calJ", 1.5, 3.1, 2, 0.24925794622861348432},
    {"calJ", 1.5, 8, 0, 0.0080968833296345274965},
    {"calJ", 1.5, 8, 1, -0.022451375292071786267},
    {"calJ", 1.5, 8, 2, 0.0025573021239106666073},
    {"calJ", 1.5, 15, 0, -0.0046142873900226147473},
    {"calJ", 1.5, 15, 1, -0.00013130865555456519999},
    {"calJ", 1.5, 15, 2, -0.00016878698357293601801},
    {"calJ", 1.5, 36, 0, -0.0014462645700370808563},
    {"calJ", 1.5, 36, 1, 0.000060221933761141381394},
    {"calJ", 1.5, 36, 2, -4.1938647846544274286e-6},
    {"calJ", 1.5, 44, 0, -0.0010704930994170150749},
    {"calJ", 1.5, 44, 1, 0.000036482560089565622474},
    {"calJ", 1.5, 44, 2, -2.0717966399674519364e-6},
    {"calJ", 1.9, 0.5, 0, 0.96617639614513847895},
    {"calJ", 1.9, 0.5, 1, -0.59403852612828387889},
    {"calJ", 1.9, 0.5, 2, -0.9427645504222266125},
    {"calJ", 1.9, 1, 0, 0.57074655363635860587},
    {"calJ", 1.9, 1, 1, -0.94671559602094642812},
    {"calJ", 1.9, 1, 2, -0.45220109503057185619},
    {"calJ", 1.9, 2.9, 0, -0.91221965777007888052},
    {"calJ", 1.9, 2.9, 1, -0.15344782366138806139},
    {"calJ", 1.9, 2.9, 2, 0.9279902578050888153},
    {"calJ", 1.9, 3.1, 0, -0.92440434706537664426},
    {"calJ", 1.9, 3.1, 1, 0.031020673375049601404},
    {"calJ", 1.9, 3.1, 2, 0.91061470789068259538},
    {"calJ", 1.9, 8, 0, -0.074334646067624919992},
    {"calJ", 1.9, 8, 1, -0.59997078545079786778},
    {"calJ", 1.9, 8, 2, 0.17159192915859090589},
    {"calJ", 1.9, 15, 0, -0.24992996001839325991},
    {"calJ", 1.9, 15, 1, -0.21513339946633129454},
    {"calJ", 1.9, 15, 2, 0.28486882643423961601},
    {"calJ", 1.9, 36, 0, -0.015205071742910313296},
    {"calJ", 1.9, 36, 1, 0.059830395813536481722},
    {"calJ", 1.9, 36, 2, 0.00520754944245942927},
    {"calJ", 1.9, 44, 0, 0.030990185102566624616},
    {"calJ", 1.9, 44, 1, 0.0015670827815475239457},
    {"calJ", 1.9, 44, 2, -0.031328503587136951381},
    {"J", 1.5, 0.5, 0, 0.57989005615413624954},
    {"J", 1.5, 2, 0, -0.77253252826326115615},
    {"J", 1.5, 10, 0, -0.010593177516108341639},
    {"g", 1.5, 0.5, 0, 0.44377028111856264175},
    {"g", 1.5, 1, 0, -0.036679890812451398797},
    {"g", 1.5, 2, 0, -0.097813078971128887518},
    {"g", 1.5, 4, 0, 0.00055498902144871686706},
    {"J", 1.1, 0.5, 0, 0.56614325293653376357},
    {"J", 1.1, 2, 0, -0.32996683345535939965},
    {"J", 1.1, 10, 0, 0.3648944498912631598},
    {"g", 1.1, 0.5, 0, 0.53420323789676492381},
    {"g", 1.1, 1, 0, 0.15303578836062897951},
    {"g", 1.1, 2, 0, -0.26882934621655817571},
    {"g", 1.1, 4, 0, -0.25391778449497893859},
    {"J", 1.9, 0.5, 0, 0.60183108687256357741},
    {"J", 1.9, 2, 0, -0.82047387810134300386},
    {"J", 1.9, 10, 0, 0.48889679693728497709},
    {"g", 1.9, 0.5, 0, 0.37805199819584081798},
    {"g", 1.9, 1, 0, -0.0024228876265744986648},
    {"g", 1.9, 2, 0, -0.0047195742213636730756},
    {"g", 1.9, 4, 0, -0.00090016806504448838979},
    {"P", 1.5, 1.7, 5, -0.13506000626882102407},
    {"P", 1.5, 2.3, 40, -0.0031572891484776453205},
    {"P", 1.5, 1.0, 200, -0.0015540709210354848761},
    {"V", 1.5, 0, 0, 0.33697872543739285202},
    {"V", 1.5, 0.5, 3, 0.27894176801723252621},
    {"V", 1.5, 1.0, 10, -0.67288577418582180871},
};

// tests/oracles/calj_complex_oracle.py: calJ^{(k)}(r e^{i(pi/2 - pi/alpha)}).
struct ComplexRow {
  double alpha, r;
  int k;
  double re, im;
};
const ComplexRow kComplex[] = {
    {1.5, 1, 0, 0.531985663448061486, 0.41951793706175315},
    {1.5, 1, 1, -0.913206366538912916, -0.0689105716062468613},
    {1.5, 1, 2, 0.249830777252368669, -0.432534922507621467},
    {1.5, 5, 0, 0.181236145711424043, -0.731797283053035328},
    {1.5, 5, 1, 0.510570477987187943, 0.552088113526191656},
    {1.5, 5, 2, -0.709204646467211398, 0.165404207693006526},
    {1.5, 20, 0, 0.29888935133478062, 0.671732939376884616},
    {1.5, 20, 1, -0.734486454311544955, -0.075858207574825207},
    {1.5, 20, 2, 0.43319990228756036, -0.598120004976773106},
    {1.5, 50, 0, 0.711990903672866041, -0.194385615493055567},
    {1.5, 50, 1, -0.188499402029005645, 0.714049472051689689},
    {1.5, 50, 2, -0.524109325166228615, -0.520264433020173477},
    {1.1, 1, 0, 0.543981273293246857, 0.757555887347615643},
    {1.1, 1, 1, -0.723621703468579616, -0.644600469756127314},
    {1.1, 1, 2, 0.822543633239441756, 0.39832446721763909},
    {1.1, 5, 0, 0.270092967666287753, -0.918761279306440621},
    {1.1, 5, 1, -0.00495480324580325815, 0.94151301561738593},
    {1.1, 5, 2, -0.263853666356669809, -0.903377737342325016},
    {1.1, 20, 0, 0.384201804947465457, 0.856524816891577885},
    {1.1, 20, 1, -0.611418305878289572, -0.716914974577386007},
    {1.1, 20, 2, 0.788471111544862845, 0.515743704092461219},
    {1.1, 50, 0, 0.908974043997517583, -0.248502033097658675},
    {1.1, 50, 1, -0.802698505519050685, 0.493328496356812433},
    {1.1, 50, 2, 0.631174806305520923, -0.699472523421915864},
    {1.9, 1, 0, 0.575532054882220725, 0.0781508244999897486},
    {1.9, 1, 1, -0.948788504277839347, 0.0376615185326237962},
    {1.9, 1, 2, -0.45653376640800628, -0.0878030846234408095},
    {1.9, 5, 0, 0.221198528767839292, -0.315017302820809384},
    {1.9, 5, 1, 0.802699339886060935, 0.137357082755267922},
    {1.9, 5, 2, -0.357815419303231295, 0.291777862598507572},
    {1.9, 20, 0, 0.255789343155946688, 0.524470565794342011},
    {1.9, 20, 1, -0.577667025193832366, 0.183865417770123117},
    {1.9, 20, 2, -0.16072685639803804, -0.554890781998534041},
    {1.9, 50, 0, 0.572374116278070862, -0.155501989741537953},
    {1.9, 50, 1, 0.107947953169387517, 0.583137922915431797},
    {1.9, 50, 2, -0.59026436661644252, 0.0591819834339068855},
};

double evaluate(const OracleRow& r) {
  const AlphaParams p(r.alpha);
  const std::string fn = r.fn;
  if (fn == "calJ") return specfun::calJ(r.x, p, r.k);
  if (fn == "J") return specfun::besselJ_alpha(r.x, p);
  if (fn == "g") return specfun::g_alpha(r.x, p);
  if (fn == "P") return specfun::poly_P(r.k, r.x, p);
  return specfun::func_V(r.k, r.x, p);
}

}  // namespace

TEST(SpecfunOracle, RealValues) {
  for (const auto& r : kRows) {
    const double v = evaluate(r);
    EXPECT_NEAR(v, r.value, 1e-11 * std::max(1.0, std::abs(r.value)))
        << r.fn << " alpha=" << r.alpha << " x=" << r.x << " k=" << r.k;
  }
}

TEST(SpecfunOracle, ComplexCalJOnRotatedRay) {
  for (const auto& r : kComplex) {
    const AlphaParams p(r.alpha);
    const auto z = std::polar(r.r, 0.5 * M_PI - p.pi_alpha);
    const auto v = specfun::calJ(z, p, r.k);
    EXPECT_NEAR(v.real(), r.re, 1e-10) << "alpha=" << r.alpha << " r=" << r.r << " k=" << r.k;
    EXPECT_NEAR(v.imag(), r.im, 1e-10) << "alpha=" << r.alpha << " r=" << r.r << " k=" << r.k;
  }
}

TEST(Specfun, HatJAtZero) {
  const AlphaParams p(1.5);
  EXPECT_NEAR(specfun::hatJ(0.0, p), std::tgamma(2.0 / 3.0) * std::sin(2.0 * M_PI / 3.0) / M_PI, 1e-15);
}

TEST(Specfun, HatJDerivativeByDifferences) {
  const AlphaParams p(1.3);
  const double h = 1e-5;
  for (double x : {0.3, 2.0, 7.0}) {
    const double fd = (specfun::hatJ(x + h, p) - specfun::hatJ(x - h, p)) / (2 * h);
    EXPECT_NEAR(specfun::hatJ(x, p, 1), fd, 1e-8 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Specfun, CalJAtZero) {
  for (double a : {1.2, 1.5, 1.8}) {
    const AlphaParams p(a);
    EXPECT_NEAR(specfun::calJ(0.0, p), 1.0 / std::tgamma(1.0 + 1.0 / a), 1e-15);
  }
}

TEST(Specfun, RegimesAgreeAtSwitchPoints) {
  for (double a : {1.1, 1.5, 1.9}) {
    const AlphaParams p(a);
    for (int k = 0; k <= 2; ++k) {
      EXPECT_NEAR(specfun::calJ_series(3.0, p, k), specfun::calJ_laplace(3.0, p, k), 1e-11) << a << " " << k;
      EXPECT_NEAR(specfun::calJ_laplace(40.0, p, k), specfun::calJ_asymptotic(40.0, p, k), 1e-11) << a << " " << k;
    }
  }
}

TEST(Specfun, ComplexAgreesWithRealOnAxis) {
  const AlphaParams p(1.5);
  for (double x : {0.5, 2.0, 10.0, 60.0})
    for (int k = 0; k <= 2; ++k) {
      const auto v = specfun::calJ(std::complex<double>(x, 0.0), p, k);
      EXPECT_NEAR(v.real(), specfun::calJ(x, p, k), 1e-11);
      EXPECT_NEAR(v.imag(), 0.0, 1e-11);
    }
}

TEST(Specfun, SeriesMatchesIntegralForV) {
  const AlphaParams p(1.5);
  for (int n : {0, 2, 5})
    for (double y : {0.0, 0.5, 1.0}) EXPECT_NEAR(specfun::func_V(n, y, p), specfun::func_V_series(n, y, p), 1e-10);
}

TEST(Specfun, GSeriesMatchesDefault) {
  const AlphaParams p(1.5);
  for (double x : {0.1, 0.5, 1.0}) EXPECT_NEAR(specfun::g_alpha(x, p), specfun::g_alpha_series(x, p), 1e-12);
}

TEST(Specfun, BesselSeriesMatchesDefault) {
  const AlphaParams p(1.7);
  for (double x : {0.1, 1.0, 4.0}) EXPECT_NEAR(specfun::besselJ_alpha(x, p), specfun::besselJ_alpha_series(x, p), 1e-12);
}

TEST(Specfun, AsymptoticCoefficients) {
  const AlphaParams p(1.5);
  const auto c = specfun::AsymptoticCoeffs::make(p, 0, 3);
  ASSERT_EQ(c.coeffs.size(), 4u);
  for (int n = 0; n <= 3; ++n)
    EXPECT_NEAR(c.coeffs[n], std::pow(-1.0, n) * std::tgamma(1.5 * n + 1.5) * std::sin(M_PI * 1.5 * (n + 1)),
                1e-12 * std::tgamma(1.5 * n + 1.5));
}

TEST(Specfun, StretchedExp) {
  EXPECT_DOUBLE_EQ(specfun::stretched_exp(2.0, 0.5, 1.5), std::exp(-0.5 * std::pow(2.0, 1.5)));
}
