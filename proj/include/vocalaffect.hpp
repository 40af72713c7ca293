// Copyright 2026 The vocalaffect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOCALAFFECT_VOCALAFFECT_HPP_
#define VOCALAFFECT_VOCALAFFECT_HPP_

#include "vocalaffect/error.hpp"
#include "vocalaffect/signal.hpp"
#include "vocalaffect/fft.hpp"
#include "vocalaffect/wav.hpp"
#include "vocalaffect/lpc.hpp"
#include "vocalaffect/roots.hpp"
#include "vocalaffect/formants.hpp"
#include "vocalaffect/spectral.hpp"
#include "vocalaffect/duration.hpp"
#include "vocalaffect/teo.hpp"
#include "vocalaffect/classifier.hpp"
#include "vocalaffect/features.hpp"
#include "vocalaffect/corpus.hpp"

#endif  // VOCALAFFECT_VOCALAFFECT_HPP_
