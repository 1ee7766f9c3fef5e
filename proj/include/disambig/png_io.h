// Copyright 2026 The Disambig Authors
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

#ifndef DISAMBIG_PNG_IO_H_
#define DISAMBIG_PNG_IO_H_

#include <string>

#include "disambig/image.h"

namespace disambig {

// 8-bit RGB; each value v is written as round(v * 255). Throws
// Error(kIoError).
void ExportPng(const ImageTensor& t, const std::string& path);

// Reads an 8-bit RGB PNG back into [0, 1] values. Throws Error(kIoError).
ImageTensor ReadPng(const std::string& path);

}  // namespace disambig

#endif  // DISAMBIG_PNG_IO_H_
