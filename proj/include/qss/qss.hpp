#pragma once

#include "qss/errors.hpp"
#include "qss/field.hpp"
#include "qss/hilbert.hpp"
#include "qss/linalg.hpp"
#include "qss/polycode.hpp"
#include "qss/random.hpp"
#include "qss/scheme.hpp"
#include "qss/state_io.hpp"
#include "qss/verify.hpp"
