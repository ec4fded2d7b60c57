#pragma once

#include "gasket/address.hpp"
#include "gasket/barycentric.hpp"
#include "gasket/dyadic.hpp"
#include "gasket/errors.hpp"
#include "gasket/format.hpp"
#include "gasket/inequality.hpp"
#include "gasket/interpolation.hpp"
#include "gasket/measures.hpp"
#include "gasket/metric.hpp"
#include "gasket/oracle.hpp"
#include "gasket/sampling.hpp"
