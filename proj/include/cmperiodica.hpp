#pragma once

#include "cmperiodica/complex.hpp"
#include "cmperiodica/constructions.hpp"
#include "cmperiodica/eisenbud.hpp"
#include "cmperiodica/field.hpp"
#include "cmperiodica/groebner.hpp"
#include "cmperiodica/growth.hpp"
#include "cmperiodica/homology.hpp"
#include "cmperiodica/io.hpp"
#include "cmperiodica/module_ops.hpp"
#include "cmperiodica/polynomial.hpp"
#include "cmperiodica/quotient_ring.hpp"
#include "cmperiodica/report.hpp"
#include "cmperiodica/resolution.hpp"
#include "cmperiodica/support_variety.hpp"
