#pragma once

#include "cmreduce/bigint.hpp"
#include "cmreduce/catalog.hpp"
#include "cmreduce/cm_types.hpp"
#include "cmreduce/errors.hpp"
#include "cmreduce/ext_field.hpp"
#include "cmreduce/generator.hpp"
#include "cmreduce/integer_poly.hpp"
#include "cmreduce/invariants.hpp"
#include "cmreduce/matrix.hpp"
#include "cmreduce/ntt.hpp"
#include "cmreduce/poly.hpp"
#include "cmreduce/predictor.hpp"
#include "cmreduce/prime_field.hpp"
#include "cmreduce/splitting.hpp"
