#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "ppr_oracle.hpp"
#include "tempqa/errors.hpp"
#include "tempqa/numeric/gradcheck.hpp"
#include "tempqa/numeric/layers.hpp"
#include "tempqa/numeric/ppr.hpp"
#include "tempqa/numeric/time_encoding.hpp"

using namespace tempqa;
using namespace tempqa::numeric;

namespace {

Tensor random_column(Rng& rng, int n) {
  Tensor t(n, 1);
  for (auto& v : t.data) v = rng.uniform(-1, 1);
  return t;
}

}  // namespace

using testing::ppr_oracle;

TEST_CASE("softmax and sigmoid basics") {
  auto u = softmax(std::vector<double>{0.3, 0.3, 0.3, 0.3});
  for (double v : u) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sigmoid(0.0) == 0.5);
  auto w = softmax(std::vector<double>{1000, -1000, 3});
  double total = 0;
  for (double v : w) {
    CHECK(v >= 0);
    total += v;
  }
  CHECK(std::abs(total - 1) <= 1e-12);
}

TEST_CASE("position and time encoding values") {
  auto e = position_encode(2, 4);
  const double expected[] = {0.9093, -0.4161, 0.0200, 0.9998};
  const double exact[] = {std::sin(2.0), std::cos(2.0), std::sin(0.02), std::cos(0.02)};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(e[i] - exact[i]) <= 1e-9);
    CHECK(std::abs(e[i] - expected[i]) <= 5e-5);
  }
  auto zero = time_encode(kg::Timestamp::of_year(1000), 6);
  for (int i = 0; i < 6; ++i) CHECK(zero[i] == (i % 2 ? 1.0 : 0.0));
  CHECK_THROWS_AS(position_encode(1, 5), ContractViolation);
  CHECK_THROWS_AS(time_encode(kg::Timestamp::of_year(2000), 3), ContractViolation);
  CHECK(time_encode(kg::Timestamp::of_day(2000, 1, 2), 8) != time_encode(kg::Timestamp::of_day(2000, 2, 1), 8));
  CHECK(time_encode(kg::Timestamp::of_day(2000, 5, 3), 8) != time_encode(kg::Timestamp::of_day(2000, 5, 4), 8));
}

TEST_CASE("lstm on a length-1 sequence is one cell step from zero state") {
  Rng rng(5);
  ParameterStore store;
  auto lstm = Lstm::create(store, "l", 3, 2, rng);
  for (auto& v : lstm.b->value.data) v += rng.uniform(-0.5, 0.5);
  Tensor x = random_column(rng, 3);
  Tape t;
  Var h = lstm.encode(t, {t.constant(x)});
  // hand computation
  const int hd = 2;
  std::vector<double> z(4 * hd);
  for (int r = 0; r < 4 * hd; ++r) {
    z[r] = lstm.b->value[r];
    for (int c = 0; c < 3; ++c) z[r] += lstm.wx->value(r, c) * x[c];
  }
  auto sg = [](double v) { return 1 / (1 + std::exp(-v)); };
  for (int k = 0; k < hd; ++k) {
    const double c = sg(z[k]) * std::tanh(z[2 * hd + k]);
    const double expect = sg(z[3 * hd + k]) * std::tanh(c);
    CHECK(h.value()[k] == doctest::Approx(expect).epsilon(1e-14));
  }
  Tape t2;
  Var empty = lstm.encode(t2, {});
  CHECK(empty.value() == Tensor(2, 1));
}

TEST_CASE("gradient checks on elementary ops and layers") {
  Rng rng(11);
  ParameterStore store;
  auto& w = store.create("w", 3, 4, rng);
  auto& x = store.create("x", 4, 1, rng);
  auto& y = store.create("y", 3, 1, rng);

  SUBCASE("linear map is exact") {
    auto r = backprop_check([&](Tape& t) { return dot(matvec(t.param(w), t.param(x)), t.param(y)); }, {&w, &x, &y});
    CHECK(r.max_relative_error < 1e-7);
    CHECK(r.checked == 12 + 4 + 3);
  }
  SUBCASE("ffn with tanh") {
    auto d1 = Dense::create(store, "d1", 4, 5, rng);
    auto d2 = Dense::create(store, "d2", 5, 1, rng);
    for (auto& v : d1.b->value.data) v = rng.uniform(-0.3, 0.3);
    auto r = backprop_check([&](Tape& t) { return d2(t, tanh(d1(t, t.param(x)))); }, store.all());
    CHECK(r.max_relative_error < 1e-4);
  }
  SUBCASE("lstm over three steps") {
    auto lstm = Lstm::create(store, "l", 4, 3, rng);
    std::vector<Tensor> seq = {random_column(rng, 4), random_column(rng, 4), random_column(rng, 4)};
    auto r = backprop_check(
        [&](Tape& t) {
          std::vector<Var> xs;
          for (auto& s : seq) xs.push_back(t.constant(s));
          xs[1] = t.param(x);
          return dot(lstm.encode(t, xs), t.constant(Tensor::column({0.7, -1.2, 0.4})));
        },
        store.all());
    CHECK(r.max_relative_error < 1e-4);
  }
  SUBCASE("softmax, sigmoid, relu, concat, slice, bce") {
    auto r = backprop_check(
        [&](Tape& t) {
          Var a = softmax(matvec(t.param(w), t.param(x)));
          Var b = concat({a, sigmoid(t.param(y)), relu(t.param(x))});
          Var s = sum(mul(slice(b, 1, 6), slice(b, 2, 7)));
          Var c = scale_by(dot(a, t.param(y)), mean_n({t.param(y), a}));
          return add(bce_with_logit(add(s, sum(c)), 1.0), bce_with_logit(scale(s, -2.0), 0.0));
        },
        {&w, &x, &y});
    CHECK(r.max_relative_error < 1e-4);
  }
}

TEST_CASE("gradient check rejects non-finite values") {
  Rng rng(1);
  ParameterStore store;
  auto& x = store.create("x", 2, 1, rng);
  x.value[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(backprop_check([&](Tape& t) { return sum(t.param(x)); }, {&x}), NumericError);
}

TEST_CASE("adam moves parameters against the gradient and clips") {
  Rng rng(2);
  ParameterStore store;
  auto& p = store.create("p", 2, 1, rng, true);
  store.zero_grad();
  p.grad[0] = 100;
  p.grad[1] = -100;
  Adam adam({0.1, 0.9, 0.999, 1e-8, 1.0});
  adam.step(store);
  CHECK(p.value[0] == doctest::Approx(-0.1));
  CHECK(p.value[1] == doctest::Approx(0.1));
}

TEST_CASE("checkpoint round trip restores identical values") {
  Rng rng(3);
  ParameterStore a;
  auto d = Dense::create(a, "d", 3, 2, rng);
  a.create("lstm.b", 4, 1, rng);
  std::stringstream buf;
  save_checkpoint(a, buf);
  ParameterStore b;
  load_checkpoint(b, buf);
  REQUIRE(b.size() == a.size());
  for (const auto& [name, p] : a.map()) CHECK(b.get(name).value == p.value);
  Dense d2{&b.get("d.w"), &b.get("d.b")};
  Tensor in = random_column(rng, 3);
  Tape t1, t2;
  CHECK(d(t1, t1.constant(in)).value() == d2(t2, t2.constant(in)).value());

  std::stringstream bad("tempqa-checkpoint 2\n");
  CHECK_THROWS_AS(load_checkpoint(b, bad), ParseError);
  std::stringstream shape("tempqa-checkpoint 1\nd.w 1 1\n0x1p+0\n");
  CHECK_THROWS_AS(load_checkpoint(b, shape), ParseError);
}

TEST_CASE("ppr small cases") {
  auto single = ppr({{}}, {0});
  CHECK(single.scores[0] == doctest::Approx(1.0));
  auto two = ppr({{1}, {0}}, {0, 1});
  CHECK(two.scores[0] == doctest::Approx(0.5).epsilon(1e-12));
  auto chain = ppr({{1}, {0, 2}, {1}}, {0}, 0.15);
  auto oracle = ppr_oracle({{1}, {0, 2}, {1}}, {0}, 0.15);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(chain.scores[i] - oracle[i]) <= 1e-8);
  CHECK(chain.residual < 1e-12);
  CHECK_THROWS_AS(ppr({{}}, {}), ContractViolation);
  CHECK_THROWS_AS(ppr({{}}, {3}), ContractViolation);
}

TEST_CASE("ppr matches the linear solve on random small graphs") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_index(10));
    std::vector<std::vector<int>> out(n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (rng.bernoulli(0.3)) out[u].push_back(v);
    std::vector<int> seeds = {static_cast<int>(rng.uniform_index(n))};
    if (rng.bernoulli(0.5)) seeds.push_back(static_cast<int>(rng.uniform_index(n)));
    auto r = ppr(out, seeds, 0.15);
    auto o = ppr_oracle(out, seeds, 0.15);
    double mass = 0;
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(r.scores[i] - o[i]) <= 1e-8);
      mass += r.scores[i];
    }
    CHECK(std::abs(mass - 1) <= 1e-10);
  }
}
