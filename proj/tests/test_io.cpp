#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "oracles.hpp"

using namespace efgm;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::numeric;
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_shortest(0.3125), "0.3125");
  EXPECT_EQ(format_shortest(1.0 / 3), "0.3333333333333333");
  EXPECT_EQ(format_shortest(-0.0), "0");
  EXPECT_EQ(format_shortest(1.0), "1");
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = unif(gen);
    double back = 0.0;
    ASSERT_TRUE(parse_double(format_shortest(x), back));
    EXPECT_EQ(back, x);
    ASSERT_TRUE(parse_double(format_17g(x), back));
    EXPECT_EQ(back, x);
  }
}

TEST(Parse, DoublesAndPoints) {
  double v = 0.0;
  EXPECT_TRUE(parse_double(" +0.25 ", v));
  EXPECT_EQ(v, 0.25);
  EXPECT_FALSE(parse_double("0.25x", v));
  EXPECT_FALSE(parse_double("", v));
  EXPECT_EQ(parse_point("0.5,0.25, 1"), (std::vector<double>{0.5, 0.25, 1.0}));
  EXPECT_EQ(kind_of([] { parse_point("0.5,,0.1"); }), ErrorKind::invalid_input);
}

TEST(ModelJson, AllTypes) {
  const CopulaModel t = parse_model(R"({"type":"theta","d":3,"values":[0,1]})");
  EXPECT_EQ(std::get<ThetaVector>(t).values(), (std::vector<double>{0, 1}));
  const CopulaModel p = parse_model(R"({"type":"ndpmf","d":2,"values":[0.5,0,0.5]})");
  EXPECT_EQ(std::get<NdPmf>(p).at(2), 0.5);
  const CopulaModel z = parse_model(R"({"type":"zeta","d":2,"values":[1,0.5,0.25]})");
  EXPECT_EQ(std::get<ZetaVector>(z).d(), 2);
  const CopulaModel b = parse_model(R"({"type":"beta","d":5,"alpha":1})");
  EXPECT_NEAR(theta_from_nd_pmf(canonicalize(b)).at(2), 1.0 / 3, 1e-12);
  const CopulaModel m = parse_model(R"(  {"type":"madsen","d":4,"beta":0.5})");
  EXPECT_EQ(std::get<MixtureModel>(m).d, 4);
}

TEST(ModelJson, RoundTripThroughJson) {
  const std::vector<CopulaModel> models{ThetaVector(3, {0.1, -0.2}), NdPmf::independence(4),
                                        MixtureModel{BetaMixer{2.5}, 3}, MixtureModel{MadsenMixer{0.3}, 6}};
  for (const auto& model : models) {
    const CopulaModel back = parse_model(model_to_json(model).dump());
    EXPECT_EQ(theta_from_nd_pmf(canonicalize(back)).values(), theta_from_nd_pmf(canonicalize(model)).values());
  }
}

TEST(ModelJson, StructuredErrors) {
  const auto expect_invalid = [](const std::string& text, const std::string& fragment) {
    try {
      parse_model(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::invalid_input) << text;
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  expect_invalid(R"({"type":"gumbel","d":3})", "unknown model type 'gumbel'");
  expect_invalid(R"({"type":"theta","values":[0]})", "'d'");
  expect_invalid(R"({"type":"theta","d":3,"values":[0,"x"]})", "values");
  expect_invalid(R"({"type":"beta","d":3})", "'alpha'");
  expect_invalid(R"({"type":"beta","d":3,"alpha":-1})", "");
  expect_invalid(R"({"type":"theta","d":3,)", "JSON");
  expect_invalid("/nonexistent/model.json", "cannot open");
  EXPECT_EQ(kind_of([] { parse_model(R"({"type":"theta","d":3,"values":[0.1]})"); }),
            ErrorKind::invalid_input);
}

TEST(ModelJson, ReadsFromFile) {
  const std::string path = ::testing::TempDir() + "efgm_model.json";
  {
    std::ofstream out(path);
    out << R"({"type":"theta","d":2,"values":[0.5]})";
  }
  EXPECT_EQ(std::get<ThetaVector>(parse_model(path)).at(2), 0.5);
  std::remove(path.c_str());
}

TEST(Csv, HeaderBlankLinesAndRoundTrip) {
  std::istringstream in("u1,u2\n0.1,0.2\n\n0.3,0.4\r\n");
  std::vector<std::string> header;
  const Matrix m = read_csv(in, &header);
  EXPECT_EQ(header, (std::vector<std::string>{"u1", "u2"}));
  ASSERT_EQ(m.rows(), 2U);
  EXPECT_EQ(m(1, 1), 0.4);

  const SampleBatch b = sample(study_theta(), 50, 3);
  std::ostringstream out;
  write_csv(out, b.rows);
  std::istringstream back(out.str());
  EXPECT_EQ(read_csv(back), b.rows);
}

TEST(Csv, Errors) {
  std::istringstream ragged("0.1,0.2\n0.3\n");
  EXPECT_EQ(kind_of([&] { read_csv(ragged); }), ErrorKind::invalid_input);
  std::istringstream word("0.1,0.2\n0.3,abc\n");
  EXPECT_EQ(kind_of([&] { read_csv(word); }), ErrorKind::invalid_input);
  std::istringstream empty("a,b\n");
  EXPECT_EQ(kind_of([&] { read_csv(empty); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { read_csv_file("/nonexistent.csv"); }), ErrorKind::invalid_input);
}
