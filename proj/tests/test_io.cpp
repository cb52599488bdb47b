#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "errors.hpp"
#include "io.hpp"

namespace cointoss {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(TrajectoryCsv, Format) {
  InitialConditions ic;
  ic.dir = MomentumDirection(0.0, 0.5);
  ic.phi0 = 0.3;
  ic.theta0 = 0.5;
  const Trajectory tr = integrate(InertiaTensor::half_dollar(), ic, 1e-3, 1e-4);
  std::ostringstream out;
  write_trajectory_csv(out, tr);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), tr.samples.size() + 1);
  EXPECT_EQ(l[0], "t,phi,theta,psi,lx,ly,lz,nz,heads");
  double t, phi, theta, psi, lx, ly, lz, nz;
  int heads;
  char c;
  std::istringstream row(l[5]);
  row >> t >> c >> phi >> c >> theta >> c >> psi >> c >> lx >> c >> ly >> c >> lz >> c >> nz >> c >> heads;
  const TossState& s = tr.samples[4];
  EXPECT_EQ(t, s.t);
  EXPECT_EQ(phi, s.phi);
  EXPECT_EQ(theta, s.theta);
  EXPECT_EQ(psi, s.psi);
  EXPECT_EQ(lz, s.l_body.z());
  EXPECT_NEAR(nz, normal_vertical_component(0.5, s.theta, s.psi), 1e-16);
  EXPECT_EQ(heads, nz > 0 ? 1 : 0);
}

TEST(FairRegionCsv, ShapeAndEnds) {
  std::ostringstream out;
  write_fair_region_csv(out, InertiaTensor::half_dollar(), 8, 5);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 41u);
  EXPECT_EQ(l[0], "phi0,theta0,fair");
  EXPECT_EQ(l[1].substr(0, 4), "0,0,");
  int fair_rows = 0;
  for (std::size_t i = 1; i < l.size(); ++i) fair_rows += l[i].back() == '1';
  EXPECT_GT(fair_rows, 0);
  EXPECT_THROW(write_fair_region_csv(out, InertiaTensor::half_dollar(), 8, 1), InvalidInput);
}

TEST(FairRegionCsv, UniformCoinOnlyOnEquator) {
  std::ostringstream out;
  write_fair_region_csv(out, InertiaTensor(7.0, 7.0, 13.24), 4, 5);
  const auto l = lines(out.str());
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::istringstream row(l[i]);
    double phi0, theta0;
    int fair;
    char c;
    row >> phi0 >> c >> theta0 >> c >> fair;
    EXPECT_EQ(fair == 1, std::abs(theta0 - kPi / 2) < 1e-12) << l[i];
  }
}

TEST(Theta0Reader, ParsesWeightsAndBlankLines) {
  std::istringstream in("theta0_radians,weight\n1.2,2\n\n1.4,\n1.5\n");
  const auto s = read_theta0_samples(in);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].theta0, 1.2);
  EXPECT_EQ(s[0].weight, 2.0);
  EXPECT_EQ(s[1].weight, 1.0);
  EXPECT_EQ(s[2].theta0, 1.5);
}

TEST(Theta0Reader, SingleColumnHeader) {
  std::istringstream in("theta0_radians\n1.0\n1.1\n");
  EXPECT_EQ(read_theta0_samples(in).size(), 2u);
}

void expect_error(const std::string& text, const std::string& fragment) {
  std::istringstream in(text);
  try {
    read_theta0_samples(in);
    ADD_FAILURE() << "no error for: " << text;
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Theta0Reader, ErrorsNameTheLine) {
  expect_error("theta0_radians,weight\n1.0,1\nabc,1\n", "line 3");
  expect_error("theta0_radians,weight\n1.0,-1\n", "line 2");
  expect_error("theta0_radians,weight\n4.0,1\n", "line 2");
  expect_error("theta,weight\n1.0\n", "line 1");
  expect_error("", "empty");
  expect_error("theta0_radians\n\n", "no samples");
}

}  // namespace
}  // namespace cointoss
