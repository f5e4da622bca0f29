#pragma once

#include "cooc/conditioning.hpp"
#include "cooc/cooccurrence.hpp"
#include "cooc/density.hpp"
#include "cooc/e_integral.hpp"
#include "cooc/error.hpp"
#include "cooc/random_model.hpp"
#include "cooc/rational.hpp"
#include "cooc/scm.hpp"
#include "cooc/space.hpp"
#include "cooc/suite.hpp"
