// Copyright 2026 The heighttower Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "heighttower/heights.hpp"

namespace {

using namespace heighttower;

void BM_MahlerLehmer(benchmark::State& state) {
  const auto poly = IntPolynomial::parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
  for (auto _ : state) benchmark::DoNotOptimize(mahler_measure(poly));
}
BENCHMARK(BM_MahlerLehmer)->Unit(benchmark::kMillisecond);

void BM_MahlerRadical(benchmark::State& state) {
  const auto poly = IntPolynomial::radical(mpz_class(97), static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(weil_height_from_minpoly(poly));
}
BENCHMARK(BM_MahlerRadical)->Arg(7)->Arg(17)->Arg(37)->Unit(benchmark::kMillisecond);

}  // namespace
