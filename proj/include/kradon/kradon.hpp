#pragma once

// Umbrella header: exact intersection structure for set families over
// hereditary hosts, from the bit-level primitives up to the verdict and hunt
// harness with JSON reporting.

#include "kradon/family.hpp"
#include "kradon/hereditary.hpp"
#include "kradon/io.hpp"
#include "kradon/lemmas.hpp"
#include "kradon/report.hpp"
#include "kradon/solvers.hpp"
#include "kradon/util.hpp"
#include "kradon/verify.hpp"
