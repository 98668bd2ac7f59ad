#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "terabridge/bessel.hpp"
#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"
#include "terabridge/material_db.hpp"
#include "terabridge/materials.hpp"

#ifdef TERABRIDGE_HAVE_BOOST
#include <boost/multiprecision/cpp_bin_float.hpp>
#endif

using namespace terabridge;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "terabridge_test_materials";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("bose_einstein golden values") {
  CHECK(rel(bose_einstein(angular(8e9), 0.01), 2.1170042876512077e-17) < 1e-12);
  CHECK(rel(bose_einstein(angular(600e9), 1.0), 3.1209822823844256e-13) < 1e-12);
  CHECK(rel(bose_einstein(angular(8e9), 1.0), 2.1364940146878636) < 1e-12);
}

TEST_CASE("bose_einstein limits") {
  CHECK(bose_einstein(angular(8e9), 0.0) == 0.0);
  const double kT_over_hbar = PhysicalConstants::k_B / PhysicalConstants::hbar;
  CHECK(bose_einstein(800.0 * kT_over_hbar, 1.0) == 0.0);
  const double y = 1e-8;
  CHECK(rel(bose_einstein(y * kT_over_hbar, 1.0), 1.0 / y - 0.5 + y / 12.0) < 1e-14);
  CHECK_THROWS_AS(bose_einstein(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(bose_einstein(1.0, -1.0), DomainError);
}

TEST_CASE("bose_einstein is decreasing in frequency and increasing in temperature") {
  double prev = INFINITY;
  for (double f = 1e9; f < 1e13; f *= 1.7) {
    const double n = bose_einstein(angular(f), 0.5);
    CHECK(n <= prev);
    prev = n;
  }
  prev = 0.0;
  for (double T = 0.01; T < 10.0; T *= 1.5) {
    const double n = bose_einstein(angular(100e9), T);
    CHECK(n >= prev);
    prev = n;
  }
}

#ifdef TERABRIDGE_HAVE_BOOST
TEST_CASE("bose_einstein against 50-digit arithmetic across the series switch") {
  using big = boost::multiprecision::cpp_bin_float_50;
  const double T = 1.0;
  for (double y : {5e-7, 9.99e-7, 1.01e-6, 2e-6, 1e-3, 0.3, 5.0, 50.0}) {
    const double omega = y * PhysicalConstants::k_B * T / PhysicalConstants::hbar;
    big ym = big(PhysicalConstants::hbar) * big(omega) / (big(PhysicalConstants::k_B) * big(T));
    const double want = static_cast<double>(big(1) / boost::multiprecision::expm1(ym));
    CHECK(rel(bose_einstein(omega, T), want) < 1e-12);
  }
}
#endif

TEST_CASE("K0 golden values") {
  struct Row {
    double x, k0, k0e;
  };
  const Row rows[] = {
      {1e-6, 13.931442073626419, 13.931456005075459},
      {0.01, 4.721244730161095, 4.7686940285444619},
      {0.5, 0.92441907122766586, 1.5241093857739095},
      {1.9, 0.12884597927604748, 0.86145061675175577},
      {2.1, 0.10078374088996695, 0.82301715253166207},
      {10.0, 1.7780062316167652e-5, 0.39163193443659867},
      {50.0, 3.4101677497894955e-23, 0.17680715585742934},
      {300.0, 3.7236948548891433e-132, 0.072330031739607302},
  };
  for (const Row& r : rows) {
    CAPTURE(r.x);
    CHECK(rel(special::bessel_k0(r.x), r.k0) < 1e-13);
    CHECK(rel(special::bessel_k0_scaled(r.x), r.k0e) < 1e-13);
  }
  CHECK_THROWS_AS(special::bessel_k0(0.0), DomainError);
}

TEST_CASE("K0 agrees with the standard library") {
  for (double x = 1e-4; x < 600.0; x *= 1.23) {
    CAPTURE(x);
    const double want = std::cyl_bessel_k(0.0, x);
    if (want > 1e-300) CHECK(rel(special::bessel_k0(x), want) < 1e-12);
  }
}

TEST_CASE("I0 series") {
  CHECK(special::bessel_i0(0.0) == 1.0);
  for (double x : {0.1, 1.0, 3.0, 10.0}) CHECK(rel(special::bessel_i0(x), std::cyl_bessel_i(0.0, x)) < 1e-13);
}

TEST_CASE("NbN conductivity golden values") {
  const auto reg = MaterialRegistry::builtin();
  const auto& nbn = reg.superconductor(kNiobiumNitride);
  auto s = sc_conductivity(nbn, angular(8e9), 1.0);
  CHECK(rel(s.sigma1, 1.2815291340267559e-4) < 1e-11);
  CHECK(rel(s.sigma2, 109032094.99541997) < 1e-12);
  CHECK(rel(s.sigma1 / s.sigma2, 1.1753687151297865e-12) < 1e-11);

  SuperconductorParams bcs = nbn;
  bcs.gap0 = bcs_gap(bcs.Tc);
  s = sc_conductivity(bcs, angular(8e9), 1.0);
  CHECK(rel(s.sigma1, 4.7728467212038864e-3) < 1e-11);
  CHECK(rel(s.sigma2, 93608042.511491236) < 1e-12);
  CHECK(rel(s.sigma1 / s.sigma2, 5.0987571079888527e-11) < 1e-11);
}

TEST_CASE("conductivity domain") {
  const auto reg = MaterialRegistry::builtin();
  const auto& nbn = reg.superconductor(kNiobiumNitride);
  CHECK_THROWS_AS(sc_conductivity(nbn, angular(8e9), 13.0), NormalStateError);
  CHECK_THROWS_AS(sc_conductivity(nbn, 2.0 * nbn.gap0 / PhysicalConstants::hbar, 1.0),
                  PairBreakingError);
  CHECK_THROWS_AS(sc_conductivity(nbn, angular(8e9), 0.0), DomainError);
  CHECK(sc_conductivity(nbn, angular(8e9), 0.01).sigma1 == kSigma1Floor);
}

TEST_CASE("sigma1/sigma2 grows with temperature") {
  const auto reg = MaterialRegistry::builtin();
  const auto& nbn = reg.superconductor(kNiobiumNitride);
  double prev = 0.0;
  for (double T = 0.5; T < 11.0; T += 0.5) {
    const auto s = sc_conductivity(nbn, angular(600e9), T);
    CHECK(s.sigma1 / s.sigma2 >= prev);
    prev = s.sigma1 / s.sigma2;
  }
}

TEST_CASE("sigma table interpolation") {
  std::vector<double> Ts = {1.0, 2.0, 4.0}, ws = {1e10, 1e11};
  std::vector<double> s1 = {1, 10, 2, 20, 4, 40}, s2 = {100, 10, 100, 10, 50, 5};
  auto tab = SigmaTable::from_grid(Ts, ws, s1, s2);
  auto c = tab.at(1e11, 2.0);
  CHECK(c.sigma1 == 20.0);
  CHECK(c.sigma2 == 10.0);
  c = tab.at(std::sqrt(1e10 * 1e11), 1.0);
  CHECK(c.sigma1 == Approx(std::sqrt(10.0)).epsilon(1e-12));
  c = tab.at(1e10, std::sqrt(2.0 * 4.0));
  CHECK(c.sigma1 == Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK_THROWS_AS(tab.at(1e12, 2.0), RangeError);
  CHECK_THROWS_AS(tab.at(1e10, 0.5), RangeError);
}

TEST_CASE("sigma table from CSV and through a superconductor") {
  const auto path = scratch("sigma.csv");
  write_file(path,
             "T_K,omega_rad_s,sigma1_S_m,sigma2_S_m\n"
             "0.5,1e10,1e-3,1e8\n0.5,1e12,1e-2,1e6\n"
             "5,1e10,1e2,5e7\n5,1e12,1e3,5e5\n");
  auto tab = std::make_shared<const SigmaTable>(SigmaTable::from_csv(path));
  CHECK(tab->temperature_count() == 2);
  CHECK(tab->omega_count() == 2);
  SuperconductorParams sc = MaterialRegistry::builtin().superconductor(kNiobiumNitride);
  sc.table = tab;
  CHECK(sc_conductivity(sc, 1e12, 5.0).sigma1 == 1e3);

  write_file(path, "T_K,omega_rad_s,sigma1_S_m,sigma2_S_m\n0.5,1e10,1e-3,1e8\n5,1e13,1e3,5e5\n");
  CHECK_THROWS(SigmaTable::from_csv(path));
}

TEST_CASE("temperature laws") {
  TemperatureLaw p = PowerLaw{4.0, 3.0};
  CHECK(evaluate(p, 0.01) == Approx(4e-6).epsilon(1e-14));
  TemperatureLaw poly = PolynomialLaw{{{0.0283, 1.0}, {0.0012, 3.0}}};
  CHECK(evaluate(poly, 2.0) == Approx(0.0283 * 2 + 0.0012 * 8).epsilon(1e-14));
  TemperatureLaw a = AnchorLaw{{{0.01, 1e-4}, {1.0, 0.01}}};
  CHECK(evaluate(a, 0.01) == 1e-4);
  CHECK(evaluate(a, 1.0) == 0.01);
  CHECK(evaluate(a, 0.1) == Approx(1e-3).epsilon(1e-12));
  CHECK(evaluate(a, 10.0) == Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(evaluate(p, 0.0), DomainError);
  CHECK(std::string(law_kind(a)) == "anchors");
}

TEST_CASE("built-in registry") {
  const auto reg = MaterialRegistry::builtin();
  CHECK(reg.names() == std::vector<std::string>{"LiNbO3", "SiO2", "NbN"});
  const auto& ln = reg.at(kLithiumNiobate);
  CHECK(ln.optical->d33 == 27e-12);
  CHECK(ln.optical->chi2 == 54e-12);
  CHECK(thermal_conductivity(*ln.thermal, 0.01) == Approx(4e-6).epsilon(1e-14));
  CHECK(ln.provenance == Provenance::builtin);
  CHECK(validate_registry(reg).empty());
  CHECK_THROWS_AS(reg.optical(kSilica), ConfigError);
  CHECK(reg.find("Unobtainium") == nullptr);
}

TEST_CASE("material file overrides") {
  const auto dir = scratch("");
  write_file(dir / "gth.csv", "T_K,g\n0.01,1e-5\n1,1e-1\n");
  nlohmann::json doc = nlohmann::json::parse(R"({
    "materials": {
      "LiNbO3": {"optical": {"alpha_optical": 10}},
      "Sapphire": {"density": 3980,
                   "thermal_conductivity": {"kind": "table_file", "path": "gth.csv"},
                   "heat_capacity": {"kind": "power_law", "coeff": 1e-5, "exponent": 3}}
    }})");
  auto reg = load_material_db(doc, dir);
  CHECK(reg.size() == 4);
  CHECK(reg.at("LiNbO3").provenance == Provenance::file);
  CHECK(reg.optical("LiNbO3").alpha_optical == 10.0);
  CHECK(reg.optical("LiNbO3").d33 == 27e-12);
  CHECK(thermal_conductivity(reg.thermal("Sapphire"), 1.0) == 0.1);

  doc["materials"]["Sapphire"]["heat_capacity"]["kind"] = "cubic_spline";
  try {
    load_material_db(doc, dir);
    FAIL("expected LoadError");
  } catch (const LoadError& e) {
    CHECK(e.field() == "Sapphire");
  }
  doc["materials"]["Sapphire"]["heat_capacity"]["kind"] = "power_law";
  doc["materials"]["Sapphire"]["thermal_conductivity"]["path"] = "missing.csv";
  CHECK_THROWS_AS(load_material_db(doc, dir), LoadError);
  doc["materials"]["Sapphire"]["thermal_conductivity"] = {{"kind", "power_law"}, {"coeff", 1}, {"exponent", 1}};
  doc["materials"]["Sapphire"]["density"] = -1;
  CHECK_THROWS_AS(load_material_db(doc, dir), LoadError);
}

TEST_CASE("superconductor gap ratio override") {
  nlohmann::json doc = {{"materials", {{"NbN", {{"superconductor", {{"gap_ratio", 1.76}}}}}}}};
  auto reg = load_material_db(doc);
  CHECK(reg.superconductor("NbN").gap0 == Approx(bcs_gap(13.0)).epsilon(1e-14));
}

TEST_CASE("material JSON serialization reloads") {
  const auto reg = MaterialRegistry::builtin();
  nlohmann::json doc;
  for (const auto& n : reg.names()) doc["materials"][n] = to_json(reg.at(n));
  auto again = load_material_db(doc);
  for (const auto& n : reg.names()) {
    for (double T : {0.02, 0.3, 4.0}) {
      CHECK(thermal_conductivity(again.thermal(n), T) == Approx(thermal_conductivity(reg.thermal(n), T)).epsilon(1e-14));
      CHECK(heat_capacity(again.thermal(n), T) == Approx(heat_capacity(reg.thermal(n), T)).epsilon(1e-14));
    }
  }
  CHECK(again.optical("LiNbO3").d33 == reg.optical("LiNbO3").d33);
  CHECK(again.superconductor("NbN").gap0 == Approx(reg.superconductor("NbN").gap0).epsilon(1e-15));
}
