#ifndef DECAF_DECAF_HPP
#define DECAF_DECAF_HPP

#include "active.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "fingerprint.hpp"
#include "frame.hpp"
#include "geometry.hpp"
#include "gp.hpp"
#include "graphspec.hpp"
#include "grid.hpp"
#include "laguerre.hpp"
#include "lebedev.hpp"
#include "minisum.hpp"
#include "oracle.hpp"
#include "serialize.hpp"
#include "structure.hpp"
#include "vector_gp.hpp"
#include "weights.hpp"
#include "xyz.hpp"

#endif
