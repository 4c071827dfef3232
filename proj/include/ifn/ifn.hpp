#ifndef IFN_IFN_HPP
#define IFN_IFN_HPP

// Umbrella header for the library proper (no JSON, HTTP or CLI dependencies).

#include "ifn/algebra.hpp"
#include "ifn/analysis.hpp"
#include "ifn/connectivity.hpp"
#include "ifn/core.hpp"
#include "ifn/cycles.hpp"
#include "ifn/decompose.hpp"
#include "ifn/error.hpp"
#include "ifn/generators.hpp"
#include "ifn/linalg.hpp"
#include "ifn/rational.hpp"
#include "ifn/sigtext.hpp"

#endif  // IFN_IFN_HPP
