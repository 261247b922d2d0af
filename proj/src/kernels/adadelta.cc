/*
 * Copyright 2026 The Turnpoint Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "turnpoint/kernels/adadelta.h"

#include <cmath>

namespace turnpoint::kernels {
namespace {

inline void step(double& x, double g, double& eg2, double& edx2, double rho, double eps) {
  eg2 = rho * eg2 + (1.0 - rho) * g * g;
  const double dx = -std::sqrt(edx2 + eps) / std::sqrt(eg2 + eps) * g;
  edx2 = rho * edx2 + (1.0 - rho) * dx * dx;
  x += dx;
}

}  // namespace

void adadelta_serial(std::span<double> params, std::span<const double> grad,
                     std::span<double> sq_grad, std::span<double> sq_delta, double rho,
                     double epsilon) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    step(params[i], grad[i], sq_grad[i], sq_delta[i], rho, epsilon);
  }
}

void adadelta_omp(std::span<double> params, std::span<const double> grad,
                  std::span<double> sq_grad, std::span<double> sq_delta, double rho,
                  double epsilon) {
  const long n = static_cast<long>(params.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    step(params[i], grad[i], sq_grad[i], sq_delta[i], rho, epsilon);
  }
}

}  // namespace turnpoint::kernels
