#pragma once

#include "bmcycles/errors.hpp"
#include "bmcycles/rings/field.hpp"
#include "bmcycles/rings/laurent_poly.hpp"
#include "bmcycles/rings/laurent_series_matrix.hpp"
#include "bmcycles/rings/local_field.hpp"
#include "bmcycles/rings/matrix.hpp"
#include "bmcycles/rings/poly.hpp"
#include "bmcycles/rings/series.hpp"
#include "bmcycles/weights.hpp"
#include "bmcycles/characters.hpp"
#include "bmcycles/bm_mult.hpp"
#include "bmcycles/hilbert.hpp"
#include "bmcycles/grassmannian.hpp"
#include "bmcycles/breuil_kisin.hpp"
#include "bmcycles/interpolation.hpp"
