#pragma once

#include "gfetf/error.hpp"
#include "gfetf/conway.hpp"
#include "gfetf/field.hpp"
#include "gfetf/matrix.hpp"
#include "gfetf/code.hpp"
#include "gfetf/poly.hpp"
#include "gfetf/constacyclic.hpp"
#include "gfetf/frame.hpp"
#include "gfetf/etf.hpp"
#include "gfetf/io.hpp"
#include "gfetf/census.hpp"
#include "gfetf/reproduce.hpp"
