#pragma once

#include "zen/carleson.hpp"
#include "zen/causality.hpp"
#include "zen/common.hpp"
#include "zen/composition.hpp"
#include "zen/function.hpp"
#include "zen/io.hpp"
#include "zen/kernel.hpp"
#include "zen/measure.hpp"
#include "zen/norms.hpp"
#include "zen/numerics.hpp"
#include "zen/optimize.hpp"
#include "zen/parallel.hpp"
#include "zen/poly.hpp"
#include "zen/rng.hpp"
#include "zen/space.hpp"
#include "zen/symbol.hpp"
#include "zen/version.hpp"
#include "zen/weight.hpp"
