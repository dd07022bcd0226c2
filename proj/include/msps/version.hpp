// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_VERSION_HPP
#define MSPS_VERSION_HPP

#define MSPS_VERSION_STRING "0.1.0"

#endif  // MSPS_VERSION_HPP
