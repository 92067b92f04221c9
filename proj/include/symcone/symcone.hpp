#pragma once

#include "symcone/error.hpp"
#include "symcone/symspace.hpp"
#include "symcone/metric_geometry.hpp"
#include "symcone/eigen_oracle.hpp"
#include "symcone/transport.hpp"
#include "symcone/covering.hpp"
#include "symcone/mass_spring.hpp"
#include "symcone/berry_verify.hpp"
#include "symcone/bench.hpp"
#include "symcone/curve_io.hpp"
