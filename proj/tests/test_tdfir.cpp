#include <doctest.h>

#include "ftconv/tdfir.hpp"

using namespace ftconv;

namespace {

double oracle_error(const CArrayF& test, const CArrayF& x, const CArrayF& h) {
  return rrmse(test, conv_oracle(widen(x), widen(h))).rrmse;
}

}  // namespace

TEST_CASE("naive TD identity filter") {
  CArrayF x(4);
  x << std::complex<float>(1), std::complex<float>(2), std::complex<float>(3),
      std::complex<float>(4);
  CArrayF h(1);
  h[0] = 1.0f;
  const CArrayF y = conv_naive_td(x, h);
  for (Index i = 0; i < 4; ++i) CHECK(y[i] == x[i]);
}

TEST_CASE("naive TD impulse response reproduces the taps") {
  CArrayF x = CArrayF::Zero(32);
  x[0] = 1.0f;
  const CArrayF h = generate_signal(17, 9);
  const CArrayF y = conv_naive_td(x, h);
  for (Index i = 0; i < 9; ++i) CHECK(y[i] == h[i]);
  for (Index i = 9; i < 32; ++i) CHECK(y[i] == std::complex<float>(0.0f));
}

TEST_CASE("naive TD matches the oracle on a random case") {
  const CArrayF x = generate_signal(1, 1024);
  const CArrayF h = generate_signal(2, 421);
  CHECK(oracle_error(conv_naive_td(x, h), x, h) < 1e-6);
}

TEST_CASE("split_coefficients pads the final sub-array") {
  const CArrayF h = generate_signal(3, 421);
  const auto subs = split_coefficients(h, 64);
  REQUIRE(subs.size() == 7);
  for (const auto& s : subs) CHECK(s.size() == 64);
  // 6 * 64 = 384 full taps, 37 real coefficients + 27 zeros in the tail.
  for (Index i = 0; i < 37; ++i) CHECK(subs[6][i] == h[384 + i]);
  for (Index i = 37; i < 64; ++i) CHECK(subs[6][i] == std::complex<float>(0.0f));
  // Concatenation truncated to K reproduces h.
  for (Index i = 0; i < 421; ++i)
    CHECK(subs[static_cast<std::size_t>(i / 64)][i % 64] == h[i]);
}

TEST_CASE("split_coefficients degenerate and small cases") {
  const CArrayF h = generate_signal(4, 4);
  const auto whole = split_coefficients(h, 4);
  REQUIRE(whole.size() == 1);
  for (Index i = 0; i < 4; ++i) CHECK(whole[0][i] == h[i]);

  const CArrayF h5 = generate_signal(5, 5);
  const auto thirds = split_coefficients(h5, 2);
  REQUIRE(thirds.size() == 3);
  CHECK(thirds[0][0] == h5[0]);
  CHECK(thirds[0][1] == h5[1]);
  CHECK(thirds[1][0] == h5[2]);
  CHECK(thirds[1][1] == h5[3]);
  CHECK(thirds[2][0] == h5[4]);
  CHECK(thirds[2][1] == std::complex<float>(0.0f));
}

TEST_CASE("split_coefficients rejects invalid sub-filter length") {
  CHECK_THROWS_AS(split_coefficients(generate_signal(1, 8), 0),
                  std::invalid_argument);
}

TEST_CASE("overlap-add with no split is bit-identical to naive") {
  const CArrayF x = generate_signal(6, 512);
  const CArrayF h = generate_signal(7, 33);
  const CArrayF naive = conv_naive_td(x, h);
  const CArrayF ola = conv_ola_td(x, h, OlaConfig{33});
  for (Index i = 0; i < 512; ++i) CHECK(ola[i] == naive[i]);
}

TEST_CASE("overlap-add impulse response assembled from shifted halves") {
  CArrayF x = CArrayF::Zero(16);
  x[0] = 1.0f;
  const CArrayF h = generate_signal(8, 4);
  const CArrayF y = conv_ola_td(x, h, OlaConfig{2});
  for (Index i = 0; i < 4; ++i) CHECK(y[i] == h[i]);
  for (Index i = 4; i < 16; ++i) CHECK(y[i] == std::complex<float>(0.0f));
}

TEST_CASE("overlap-add matches the oracle at full filter size") {
  const CArrayF x = generate_signal(9, 4096);
  const CArrayF h = generate_signal(10, 421);
  CHECK(oracle_error(conv_ola_td(x, h, OlaConfig{64}), x, h) < 1e-6);
}

TEST_CASE("overlap-add error stays comparable to naive across splits") {
  // Accumulation-order differences only; bounded by twice the naive error.
  for (const Index n : {Index(64), Index(1024)}) {
    const CArrayF x = generate_signal(100 + n, n);
    for (const Index taps : {Index(1), Index(3), Index(64), Index(65), Index(421)}) {
      const CArrayF h = generate_signal(200 + taps, taps);
      const double naive_err = oracle_error(conv_naive_td(x, h), x, h);
      for (const Index kprime :
           {Index(1), Index(taps / 2 + 1), Index(taps)}) {
        const double ola_err =
            oracle_error(conv_ola_td(x, h, OlaConfig{kprime}), x, h);
        CHECK(ola_err <= 2.0 * naive_err + 1e-7);
      }
    }
  }
}

TEST_CASE("overlap-add shift correctness for a delayed impulse filter") {
  const CArrayF x = generate_signal(31, 256);
  for (const Index p : {Index(0), Index(5), Index(63), Index(100)}) {
    CArrayF h = CArrayF::Zero(128);
    h[p] = 1.0f;
    const CArrayF y = conv_ola_td(x, h, OlaConfig{32});
    for (Index i = 0; i < 256; ++i) {
      const std::complex<float> expect = i >= p ? x[i - p]
                                                : std::complex<float>(0.0f);
      CHECK(y[i] == expect);
    }
  }
}

TEST_CASE("TD paths commute with power-of-two scaling bitwise") {
  const CArrayF x = generate_signal(12, 512);
  const CArrayF h = generate_signal(13, 96);
  const float c = 4.0f;
  const CArrayF scaled = (c * x).eval();
  const CArrayF naive_ref = (c * conv_naive_td(x, h)).eval();
  const CArrayF naive_scaled = conv_naive_td(scaled, h);
  const CArrayF ola_ref = (c * conv_ola_td(x, h, OlaConfig{32})).eval();
  const CArrayF ola_scaled = conv_ola_td(scaled, h, OlaConfig{32});
  for (Index i = 0; i < 512; ++i) {
    CHECK(naive_scaled[i] == naive_ref[i]);
    CHECK(ola_scaled[i] == ola_ref[i]);
  }
}

TEST_CASE("TD paths reject empty operands") {
  CArrayF x(1);
  x[0] = 1.0f;
  CHECK_THROWS_AS(conv_naive_td(CArrayF(), x), std::invalid_argument);
  CHECK_THROWS_AS(conv_ola_td(x, CArrayF(), OlaConfig{1}), std::invalid_argument);
}
