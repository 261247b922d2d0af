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

#ifndef TURNPOINT_KERNELS_ADADELTA_H_
#define TURNPOINT_KERNELS_ADADELTA_H_

#include <span>

namespace turnpoint::kernels {

// One Adadelta step applied element-wise:
//   E[g^2]  <- rho E[g^2] + (1 - rho) g^2
//   dx      <- -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
//   E[dx^2] <- rho E[dx^2] + (1 - rho) dx^2
//   x       <- x + dx
// All spans have the same length.
void adadelta_serial(std::span<double> params, std::span<const double> grad,
                     std::span<double> sq_grad, std::span<double> sq_delta, double rho,
                     double epsilon);

// Bit-identical to the serial version; elements are split across threads.
void adadelta_omp(std::span<double> params, std::span<const double> grad,
                  std::span<double> sq_grad, std::span<double> sq_delta, double rho,
                  double epsilon);

}  // namespace turnpoint::kernels

#endif  // TURNPOINT_KERNELS_ADADELTA_H_
