#pragma once

#include "pisot/error.hpp"
#include "pisot/rational.hpp"
#include "pisot/polynomial.hpp"
#include "pisot/linalg.hpp"
#include "pisot/roots.hpp"
#include "pisot/number_field.hpp"
#include "pisot/expression.hpp"
#include "pisot/beta_numeration.hpp"
#include "pisot/beta_shift.hpp"
#include "pisot/coding.hpp"
#include "pisot/forms.hpp"
#include "pisot/config.hpp"
#include "pisot/serialize.hpp"
