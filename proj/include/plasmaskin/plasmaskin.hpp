#pragma once

#include "plasmaskin/core.hpp"
#include "plasmaskin/params.hpp"
#include "plasmaskin/quadrature.hpp"
#include "plasmaskin/special.hpp"
#include "plasmaskin/dispersion.hpp"
#include "plasmaskin/impedance.hpp"
#include "plasmaskin/fields.hpp"
#include "plasmaskin/sweep.hpp"
#include "plasmaskin/io.hpp"
#include "plasmaskin/validation.hpp"
