//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_VERSION_HPP
#define PROJSA_VERSION_HPP

#define PROJSA_VERSION_MAJOR 0
#define PROJSA_VERSION_MINOR 1
#define PROJSA_VERSION_PATCH 0
#define PROJSA_VERSION_STRING "0.1.0"

#endif  // PROJSA_VERSION_HPP
