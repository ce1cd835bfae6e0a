#pragma once

#include "hsupport/error.hpp"
#include "hsupport/geom.hpp"
#include "hsupport/model.hpp"
#include "hsupport/mst.hpp"
#include "hsupport/heuristics.hpp"
#include "hsupport/exact.hpp"
#include "hsupport/gen.hpp"
#include "hsupport/io.hpp"
#include "hsupport/harness.hpp"
