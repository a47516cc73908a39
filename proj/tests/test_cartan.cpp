#include "qaffine/cartan.hpp"

#include <random>

#include "doctest.h"

using namespace qaffine;

TEST_CASE("rank-one odd-B algebra has the expected data") {
  AlgebraData a = catalog("B1_0_1");
  CHECK(a.rank() == 1);
  CHECK(a.matrix() == std::vector<std::vector<long>>{{2, -1}, {-4, 2}});
  CHECK(a.marks() == std::vector<long>{1, 2});
  CHECK(a.d() == std::vector<Rat>{Rat(2), Rat(1, 2)});
  CHECK(a.theta() == std::vector<int>{1});
  CHECK(a.eps(0) == 2);
  CHECK(a.eps(1) == 1);
  CHECK(a.pairing(a.alpha(0), a.alpha(1)) == -2);
  CHECK(a.pairing(a.alpha(0), a.alpha(0)) == 4);
  CHECK(a.pairing(a.alpha(1), a.alpha(1)) == 1);
  CHECK(a.pairing(a.lambda0(), a.lambda0()) == 0);
  CHECK(a.pairing(a.lambda0(), a.alpha(0)) == 2);
  CHECK(a.pairing(a.lambda0(), a.alpha(1)) == 0);
}

TEST_CASE("catalog spot checks across families") {
  AlgebraData a2 = catalog("A2_0_3");
  CHECK(a2.matrix() == std::vector<std::vector<long>>{{2, 0, -1}, {0, 2, -1}, {-2, -2, 2}});
  CHECK(a2.marks() == std::vector<long>{1, 1, 2});
  CHECK(a2.theta() == std::vector<int>{2});
  CHECK(a2.d() == std::vector<Rat>{Rat(1), Rat(1), Rat(1, 2)});

  AlgebraData c2 = catalog("C2_2");
  CHECK(c2.matrix() == std::vector<std::vector<long>>{{2, -2}, {-2, 2}});
  CHECK(c2.theta() == std::vector<int>{0, 1});
  CHECK(c2.marks() == std::vector<long>{1, 1});
  CHECK(c2.d() == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
  CHECK(c2.eps(0) == 1);

  AlgebraData a4 = catalog("A4_0_2");
  CHECK(a4.matrix() == c2.matrix());
  CHECK(a4.theta() == std::vector<int>{0});

  // larger ranks: the off-branch node of the odd-A series attaches at
  // position 2 and the chain ends short
  AlgebraData a7 = catalog("A2_0_7");
  CHECK(a7.rank() == 4);
  CHECK(a7.a(0, 1) == 0);
  CHECK(a7.a(0, 2) == -1);
  CHECK(a7.a(2, 0) == -1);
  CHECK(a7.a(4, 3) == -2);
  CHECK(a7.marks() == std::vector<long>{1, 1, 2, 2, 2});
}

TEST_CASE("every catalog entry satisfies the structural invariants") {
  for (const std::string& name : catalog_names()) {
    AlgebraData a = catalog(name);  // construction re-validates
    CHECK(a.name() == name);
    // null root is isotropic and orthogonal to all simple roots
    Weight delta = a.zero_weight();
    for (int i = 0; i < a.node_count(); ++i)
      delta += a.alpha(i).scaled(Rat(a.marks()[static_cast<size_t>(i)]));
    for (int i = 0; i < a.node_count(); ++i) CHECK(a.pairing(delta, a.alpha(i)) == 0);
    CHECK(a.pairing(delta, delta) == 0);
    CHECK(a.pairing(delta, a.lambda0()) == a.d()[0] * a.marks()[0]);
  }
}

TEST_CASE("partners share everything but the odd set") {
  CHECK(partner_name("B1_0_1") == "A2_2");
  CHECK(partner_name("B1_0_4") == "A2_8");
  CHECK(partner_name("A2_0_3") == "C1_2");
  CHECK(partner_name("A2_0_9") == "B1_5");
  CHECK(partner_name("C2_2") == "A1_1");
  CHECK(partner_name("C2_5") == "D2_5");
  for (const std::string& name : catalog_names()) {
    AlgebraData a = catalog(name);
    if (!a.theta().empty() && a.name().rfind("A4_", 0) != 0) {
      AlgebraData p = partner(a);
      CHECK(p.matrix() == a.matrix());
      CHECK(p.marks() == a.marks());
      CHECK(p.d() == a.d());
      CHECK(p.theta().empty());
    }
  }
  CHECK_THROWS_AS(partner(catalog("A4_0_6")), std::domain_error);
  CHECK_THROWS_AS(partner(catalog("A1_1")), std::domain_error);
}

TEST_CASE("non-affine input is rejected") {
  CHECK_THROWS_AS(primitive_null_marks({{2, -1}, {-1, 2}}), std::invalid_argument);
  // wrong marks
  CHECK_THROWS_AS(AlgebraData::from_parts("x", {{2, -1}, {-4, 2}}, {1},
                                          std::vector<long>{2, 4}, {Rat(2), Rat(1, 2)}),
                  std::invalid_argument);
  // odd node with squared length 2
  CHECK_THROWS_AS(AlgebraData::from_parts("x", {{2, -2}, {-2, 2}}, {0}, std::nullopt,
                                          {Rat(1), Rat(1)}),
                  std::invalid_argument);
  // odd entry in a row indexed by theta
  CHECK_THROWS_WITH_AS(AlgebraData::from_parts("x", {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}, {0},
                                               std::nullopt, {Rat(1, 2), Rat(1, 2), Rat(1)}),
                       "row of an odd node must have even entries", std::invalid_argument);
  // not symmetrizable by the supplied d
  CHECK_THROWS_AS(AlgebraData::from_parts("x", {{2, -1}, {-4, 2}}, {}, std::nullopt,
                                          {Rat(1), Rat(1)}),
                  std::invalid_argument);
}

TEST_CASE("lambda0 has labels delta_i0") {
  for (const std::string& name : {"B1_0_2", "A2_0_5", "C2_3", "A4_0_4"}) {
    AlgebraData a = catalog(name);
    std::vector<Rat> labels = a.dynkin_labels(a.lambda0());
    for (int i = 0; i < a.node_count(); ++i) CHECK(labels[static_cast<size_t>(i)] == (i == 0 ? 1 : 0));
  }
}

TEST_CASE("weight reconstruction from labels") {
  AlgebraData a = catalog("B1_0_1");
  CHECK(a.lambda0_coefficient({Rat(1), Rat(0)}) == 1);
  CHECK(a.lambda0_coefficient({Rat(0), Rat(2)}) == 1);
  CHECK(a.lambda0_coefficient({Rat(1), Rat(2)}) == 2);
  Weight w = a.weight_from_labels({Rat(0), Rat(2)});
  CHECK(w.lambda0_coeff() == 1);
  CHECK(w.alpha_coeff(0) == 0);
  CHECK(w.alpha_coeff(1) == 1);
  CHECK(a.dynkin_labels(w) == std::vector<Rat>{Rat(0), Rat(2)});

  std::mt19937 rng(0xCAFE);
  std::uniform_int_distribution<int> lab(-3, 5);
  for (const std::string& name : catalog_names()) {
    AlgebraData alg = catalog(name);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Rat> labels;
      for (int i = 0; i < alg.node_count(); ++i) labels.push_back(rat(lab(rng), 1 + trial % 2));
      Weight v = alg.weight_from_labels(labels);
      CHECK(alg.dynkin_labels(v) == labels);
      CHECK(v.alpha_coeff(0) == 0);
    }
  }
}

TEST_CASE("integrability test") {
  AlgebraData a = catalog("B1_0_1");
  std::string why;
  CHECK(a.integrable_dominant(a.weight_from_labels({Rat(1), Rat(0)})));
  CHECK(a.integrable_dominant(a.weight_from_labels({Rat(0), Rat(2)})));
  CHECK(!a.integrable_dominant(a.weight_from_labels({Rat(0), Rat(1)}), &why));  // odd label odd
  CHECK(why.find("node 1") != std::string::npos);
  CHECK(!a.integrable_dominant(a.weight_from_labels({Rat(-1), Rat(0)}), &why));
  CHECK(!a.integrable_dominant(a.weight_from_labels({Rat(1, 2), Rat(0)}), &why));
  // even node of the A4 family may carry any nonnegative integer label
  AlgebraData a4 = catalog("A4_0_2");
  CHECK(a4.integrable_dominant(a4.weight_from_labels({Rat(2), Rat(3)})));
  CHECK(!a4.integrable_dominant(a4.weight_from_labels({Rat(1), Rat(3)})));  // node 0 odd
}

TEST_CASE("algebra JSON round trip") {
  for (const std::string& name : {"B1_0_3", "C2_4", "A2_10"}) {
    AlgebraData a = catalog(name);
    AlgebraData b = AlgebraData::from_json(a.to_json());
    CHECK(b.name() == a.name());
    CHECK(b.matrix() == a.matrix());
    CHECK(b.theta() == a.theta());
    CHECK(b.marks() == a.marks());
    CHECK(b.d() == a.d());
  }
  // marks may be omitted and get recomputed
  AlgebraData c = AlgebraData::from_json(
      R"({"matrix":[[2,-1],[-4,2]],"theta":[1],"d":["2","1/2"]})");
  CHECK(c.marks() == std::vector<long>{1, 2});
  CHECK_THROWS_AS(AlgebraData::from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraData::from_json(R"({"matrix":[[2]],"theta":[],"d":["1"],"bogus":1})"),
                  std::invalid_argument);
}
