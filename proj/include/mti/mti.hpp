#pragma once

#include "mti/integer.hpp"
#include "mti/modular.hpp"
#include "mti/intmat.hpp"
#include "mti/sl2.hpp"
#include "mti/dw.hpp"
#include "mti/bqf.hpp"
#include "mti/enumerate.hpp"
#include "mti/census.hpp"
#include "mti/lambda.hpp"
#include "mti/modform.hpp"
#include "mti/csw.hpp"
