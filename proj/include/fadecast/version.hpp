// SPDX-License-Identifier: Apache-2.0
#pragma once

#define FADECAST_VERSION "0.1.0"
