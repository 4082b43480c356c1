#pragma once

// Umbrella header: exact cyclotomic arithmetic, Gauss and relative Gauss
// sums, connection-set constructions and strong-regularity verification.

#include "csrg/cache.hpp"
#include "csrg/construct.hpp"
#include "csrg/cycint.hpp"
#include "csrg/errors.hpp"
#include "csrg/gauss.hpp"
#include "csrg/gf.hpp"
#include "csrg/intutil.hpp"
#include "csrg/relgauss.hpp"
#include "csrg/residue.hpp"
#include "csrg/selftest.hpp"
#include "csrg/verify.hpp"
