#pragma once

#include "ffavg/common.hpp"
#include "ffavg/ffield.hpp"
#include "ffavg/poly.hpp"
#include "ffavg/variety.hpp"
#include "ffavg/charsum.hpp"
#include "ffavg/fourier.hpp"
#include "ffavg/geometry.hpp"
#include "ffavg/exponents.hpp"
#include "ffavg/averaging.hpp"
#include "ffavg/serialize.hpp"
#include "ffavg/suite.hpp"
